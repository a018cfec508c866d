#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <optional>
#include <span>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "k2sym/arith/fq.hpp"
#include "k2sym/arith/integer.hpp"

namespace k2sym {

template <class F>
concept CoefficientField = requires(const F& f, const typename F::Elem& a, const typename F::Elem& b) {
    { f.zero() } -> std::convertible_to<typename F::Elem>;
    { f.one() } -> std::convertible_to<typename F::Elem>;
    { f.add(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.sub(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.mul(a, b) } -> std::convertible_to<typename F::Elem>;
    { f.neg(a) } -> std::convertible_to<typename F::Elem>;
    { f.inv(a) } -> std::convertible_to<typename F::Elem>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { a == b } -> std::convertible_to<bool>;
};

/// Q as a coefficient field.
struct RationalField {
    using Elem = Rational;
    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        require(a != 0, "division by zero");
        return 1 / a;
    }
    bool is_zero(const Elem& a) const { return a == 0; }
    Elem from_int(std::int64_t a) const { return a; }
    std::string to_string(const Elem& a) const { return k2sym::to_string(a); }
    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Element of Q(i).
struct GaussQ {
    Rational re, im;
    friend bool operator==(const GaussQ&, const GaussQ&) = default;
    friend bool operator<(const GaussQ& a, const GaussQ& b) { return a.re < b.re || (a.re == b.re && a.im < b.im); }
    Rational norm() const { return re * re + im * im; }
};

/// Q(i) as a coefficient field.
struct GaussQField {
    using Elem = GaussQ;
    Elem zero() const { return {}; }
    Elem one() const { return {1, 0}; }
    Elem add(const Elem& a, const Elem& b) const { return {a.re + b.re, a.im + b.im}; }
    Elem sub(const Elem& a, const Elem& b) const { return {a.re - b.re, a.im - b.im}; }
    Elem mul(const Elem& a, const Elem& b) const { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
    Elem neg(const Elem& a) const { return {-a.re, -a.im}; }
    Elem inv(const Elem& a) const {
        Rational n = a.norm();
        require(n != 0, "division by zero");
        return {a.re / n, -a.im / n};
    }
    bool is_zero(const Elem& a) const { return a.re == 0 && a.im == 0; }
    Elem from_int(std::int64_t a) const { return {a, 0}; }
    friend bool operator==(const GaussQField&, const GaussQField&) { return true; }
};

inline std::string to_string(const GaussQ& g) {
    if (g.im == 0) return to_string(g.re);
    std::string im = g.im == 1 ? "i" : (g.im == -1 ? "-i" : to_string(g.im) + "*i");
    if (g.re == 0) return im;
    return to_string(g.re) + (g.im > 0 ? "+" : "") + im;
}

/// Degree of a polynomial; the zero polynomial has the distinguished degree
/// -infinity, which never takes part in integer arithmetic.
class Degree {
   public:
    constexpr Degree() = default;
    constexpr explicit Degree(std::size_t d) : d_(d) {}
    static constexpr Degree neg_infinity() { return Degree(); }

    constexpr bool is_neg_infinity() const noexcept { return !d_.has_value(); }
    std::size_t value() const {
        require(d_.has_value(), "degree of the zero polynomial is -infinity");
        return *d_;
    }
    friend constexpr bool operator==(const Degree&, const Degree&) = default;
    friend constexpr std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
        if (!a.d_ || !b.d_) return a.d_.has_value() <=> b.d_.has_value();
        return *a.d_ <=> *b.d_;
    }
    std::string to_string() const { return d_ ? std::to_string(*d_) : "-inf"; }

   private:
    std::optional<std::size_t> d_;
};

/// Dense univariate polynomial, coefficients low to high, always trimmed so
/// the leading coefficient is nonzero.
template <CoefficientField Field>
class Poly {
   public:
    using Elem = typename Field::Elem;

    explicit Poly(Field f) : field_(std::move(f)) {}
    Poly(Field f, std::vector<Elem> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(const Field& f, const Elem& c) { return Poly(f, {c}); }
    static Poly monomial(const Field& f, const Elem& c, std::size_t n) {
        std::vector<Elem> v(n + 1, f.zero());
        v[n] = c;
        return Poly(f, std::move(v));
    }
    static Poly x(const Field& f) { return monomial(f, f.one(), 1); }

    const Field& field() const noexcept { return field_; }
    bool is_zero() const noexcept { return c_.empty(); }
    Degree degree() const noexcept { return c_.empty() ? Degree::neg_infinity() : Degree(c_.size() - 1); }
    /// Degree as an integer, for nonzero polynomials only.
    std::size_t deg() const { return degree().value(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0] == field_.one(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_.one(); }

    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
    Elem leading() const {
        require(!c_.empty(), "leading coefficient of the zero polynomial");
        return c_.back();
    }
    std::span<const Elem> coeffs() const noexcept { return c_; }

    Elem eval(const Elem& x) const {
        Elem r = field_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) r = field_.add(field_.mul(r, x), c_[i]);
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& a : r.c_) a = field_.neg(a);
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.add(c_[i], o.c_[i]);
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), field_.zero());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_.sub(c_[i], o.c_[i]);
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, a.field_.zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.field_.is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = a.field_.add(r[i + j], a.field_.mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.field_, std::move(r));
    }
    Poly scaled(const Elem& s) const {
        Poly r = *this;
        for (auto& a : r.c_) a = field_.mul(a, s);
        r.trim();
        return r;
    }
    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(field_.inv(leading()));
    }

    /// Quotient and remainder; throws on division by zero.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        require(!d.is_zero(), "polynomial division by zero");
        Poly r = *this;
        if (c_.size() < d.c_.size()) return {Poly(field_), r};
        std::vector<Elem> q(c_.size() - d.c_.size() + 1, field_.zero());
        const Elem lead_inv = field_.inv(d.leading());
        const std::size_t dd = d.c_.size() - 1;
        for (std::size_t k = q.size(); k-- > 0;) {
            Elem c = field_.mul(r.coeff(k + dd), lead_inv);
            q[k] = c;
            if (field_.is_zero(c)) continue;
            for (std::size_t j = 0; j <= dd; ++j) r.c_[k + j] = field_.sub(r.c_[k + j], field_.mul(c, d.c_[j]));
        }
        r.trim();
        return {Poly(field_, std::move(q)), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(field_);
        std::vector<Elem> r(c_.size() - 1, field_.zero());
        for (std::size_t i = 1; i < c_.size(); ++i) {
            Elem n = field_.zero();
            for (std::size_t k = 0; k < i; ++k) n = field_.add(n, field_.one());
            r[i - 1] = field_.mul(n, c_[i]);
        }
        return Poly(field_, std::move(r));
    }

    /// Coefficients in reverse order padded to length n + 1: x^n f(1/x).
    Poly reversed(std::size_t n) const {
        std::vector<Elem> r(n + 1, field_.zero());
        for (std::size_t i = 0; i < c_.size() && i <= n; ++i) r[n - i] = c_[i];
        return Poly(field_, std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Total order: by degree, then coefficients from the top down.
    friend bool operator<(const Poly& a, const Poly& b)
        requires std::totally_ordered<Elem>
    {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (!(a.c_[i] == b.c_[i])) return a.c_[i] < b.c_[i];
        return false;
    }

   private:
    void trim() {
        while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
    }

    Field field_;
    std::vector<Elem> c_;
};

using FqPoly = Poly<FqField>;
using QPoly = Poly<RationalField>;
using GaussQPoly = Poly<GaussQField>;

/// Monic gcd (zero if both are zero).
template <class Field>
Poly<Field> gcd(Poly<Field> a, Poly<Field> b) {
    while (!b.is_zero()) {
        Poly<Field> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// (g, s, t) with s a + t b = g, g monic.
template <class Field>
std::tuple<Poly<Field>, Poly<Field>, Poly<Field>> ext_gcd(const Poly<Field>& a, const Poly<Field>& b) {
    const Field& F = a.field();
    Poly<Field> r0 = a, r1 = b;
    Poly<Field> s0 = Poly<Field>::constant(F, F.one()), s1(F);
    Poly<Field> t0(F), t1 = Poly<Field>::constant(F, F.one());
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<Field> s = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s);
        Poly<Field> t = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    auto li = F.inv(r0.leading());
    return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

/// Inverse of a modulo m; throws when not coprime.
template <class Field>
Poly<Field> inv_mod(const Poly<Field>& a, const Poly<Field>& m) {
    auto [g, s, t] = ext_gcd(a % m, m);
    require(g.is_one(), "polynomial is not invertible modulo the given modulus");
    return s % m;
}

/// base^e mod m for e >= 0.
template <class Field>
Poly<Field> powmod(Poly<Field> base, Integer e, const Poly<Field>& m) {
    require(e >= 0, "powmod: negative exponent");
    const Field& F = base.field();
    Poly<Field> r = Poly<Field>::constant(F, F.one()) % m;
    base = base % m;
    while (e > 0) {
        if ((e & 1) != 0) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

template <class Field>
Poly<Field> pow(const Poly<Field>& base, unsigned e) {
    const Field& F = base.field();
    Poly<Field> r = Poly<Field>::constant(F, F.one()), b = base;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

/// Human-readable form in the given variable, highest degree first, e.g.
/// "3*T^2+1". Coefficients print via `coeff_str`; composite coefficients
/// (sums, products) are parenthesized.
template <class Field, class CoeffStr>
std::string to_string(const Poly<Field>& f, const std::string& var, CoeffStr coeff_str) {
    if (f.is_zero()) return "0";
    const Field& F = f.field();
    std::string out;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) {
        const auto& c = f.coeffs()[i];
        if (F.is_zero(c)) continue;
        std::string cs = coeff_str(c);
        bool composite = cs.find_first_of("+-", 1) != std::string::npos || cs.find('*') != std::string::npos ||
                         (cs.find('/') != std::string::npos && i > 0);
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string term;
        if (i == 0)
            term = composite && !out.empty() ? "(" + cs + ")" : cs;
        else if (cs == "1")
            term = mono;
        else if (cs == "-1")
            term = "-" + mono;
        else
            term = (composite ? "(" + cs + ")" : cs) + "*" + mono;
        if (!out.empty()) {
            if (term[0] == '-' && !composite)
                out += "-" + term.substr(1);
            else
                out += "+" + term;
        } else {
            out = term;
        }
    }
    return out;
}

inline std::string to_string(const FqPoly& f, const std::string& var = "T") {
    const FqField& F = f.field();
    return to_string(f, var, [&](const FqElem& e) { return F.to_string(e); });
}

inline std::string to_string(const GaussQPoly& f, const std::string& var = "z") {
    return to_string(f, var, [](const GaussQ& e) { return to_string(e); });
}

inline std::string to_string(const QPoly& f, const std::string& var = "x") {
    return to_string(f, var, [](const Rational& e) { return to_string(e); });
}

}  // namespace k2sym

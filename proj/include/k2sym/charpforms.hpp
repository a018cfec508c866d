#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k2sym/arith/fq.hpp"
#include "k2sym/arith/poly.hpp"
#include "k2sym/error.hpp"

namespace k2sym {

/// Polynomial in s, t over F_p, stored as coefficients of t^j in F_p[s].
class BiPoly {
public:
    explicit BiPoly(const FqField& F) : F_(F) {}
    BiPoly(const FqField& F, std::vector<FqPoly> c) : F_(F), c_(std::move(c)) { trim(); }

    static BiPoly constant(const FqField& F, FqElem a) { return monomial(F, a, 0, 0); }
    static BiPoly monomial(const FqField& F, FqElem a, std::size_t i, std::size_t j) {
        std::vector<FqPoly> c(j + 1, FqPoly(F));
        c[j] = FqPoly::monomial(F, a, i);
        return BiPoly(F, std::move(c));
    }
    static BiPoly s(const FqField& F) { return monomial(F, F.one(), 1, 0); }
    static BiPoly t(const FqField& F) { return monomial(F, F.one(), 0, 1); }

    const FqField& field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1 && (c_.empty() || c_[0].is_constant()); }
    /// Degree in t; requires nonzero.
    std::size_t deg_t() const {
        require(!is_zero(), "BiPoly: degree of zero");
        return c_.size() - 1;
    }
    std::size_t total_degree() const {
        std::size_t d = 0;
        for (std::size_t j = 0; j < c_.size(); ++j)
            if (!c_[j].is_zero()) d = std::max(d, c_[j].deg() + j);
        return d;
    }
    const std::vector<FqPoly>& coeffs() const { return c_; }
    FqPoly coeff_t(std::size_t j) const { return j < c_.size() ? c_[j] : FqPoly(F_); }
    FqElem coeff(std::size_t i, std::size_t j) const { return j < c_.size() ? c_[j].coeff(i) : F_.zero(); }
    const FqPoly& leading_t() const {
        require(!is_zero(), "BiPoly: leading coefficient of zero");
        return c_.back();
    }
    /// Leading s-coefficient of the leading t-coefficient.
    FqElem lc() const { return leading_t().leading(); }

    BiPoly operator-() const {
        BiPoly r(*this);
        for (auto& p : r.c_) p = -p;
        return r;
    }
    BiPoly operator+(const BiPoly& o) const {
        std::vector<FqPoly> c(std::max(c_.size(), o.c_.size()), FqPoly(F_));
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = coeff_t(j) + o.coeff_t(j);
        return BiPoly(F_, std::move(c));
    }
    BiPoly operator-(const BiPoly& o) const { return *this + (-o); }
    BiPoly operator*(const BiPoly& o) const {
        if (is_zero() || o.is_zero()) return BiPoly(F_);
        std::vector<FqPoly> c(c_.size() + o.c_.size() - 1, FqPoly(F_));
        for (std::size_t a = 0; a < c_.size(); ++a)
            if (!c_[a].is_zero())
                for (std::size_t b = 0; b < o.c_.size(); ++b) c[a + b] += c_[a] * o.c_[b];
        return BiPoly(F_, std::move(c));
    }
    /// Multiply by a polynomial in s alone.
    BiPoly times_s_poly(const FqPoly& a) const {
        std::vector<FqPoly> c = c_;
        for (auto& p : c) p = p * a;
        return BiPoly(F_, std::move(c));
    }
    BiPoly scaled(FqElem a) const { return times_s_poly(FqPoly::constant(F_, a)); }
    BiPoly shifted_t(std::size_t k) const {
        if (is_zero()) return *this;
        std::vector<FqPoly> c(k, FqPoly(F_));
        c.insert(c.end(), c_.begin(), c_.end());
        return BiPoly(F_, std::move(c));
    }
    BiPoly pow(unsigned e) const {
        BiPoly r = constant(F_, F_.one()), b = *this;
        for (; e; e >>= 1) {
            if (e & 1) r = r * b;
            if (e > 1) b = b * b;
        }
        return r;
    }

    BiPoly partial_s() const {
        std::vector<FqPoly> c = c_;
        for (auto& p : c) p = p.derivative();
        return BiPoly(F_, std::move(c));
    }
    BiPoly partial_t() const {
        std::vector<FqPoly> c;
        for (std::size_t j = 1; j < c_.size(); ++j) c.push_back(c_[j].scaled(F_.from_int(static_cast<std::int64_t>(j % F_.characteristic()))));
        return BiPoly(F_, std::move(c));
    }

    /// Visit every nonzero coefficient as (i, j, c) for c s^i t^j.
    template <class Fn>
    void for_each_term(Fn fn) const {
        for (std::size_t j = 0; j < c_.size(); ++j)
            for (std::size_t i = 0; i < c_[j].coeffs().size(); ++i)
                if (!F_.is_zero(c_[j].coeffs()[i])) fn(i, j, c_[j].coeffs()[i]);
    }

    bool operator==(const BiPoly& o) const { return c_ == o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    FqField F_;
    std::vector<FqPoly> c_;
};

inline std::string to_string(const BiPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    // Highest total degree first, then higher powers of s.
    std::vector<std::tuple<std::size_t, std::size_t, FqElem>> terms;
    f.for_each_term([&](std::size_t i, std::size_t j, FqElem c) { terms.emplace_back(i, j, c); });
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        auto da = std::get<0>(a) + std::get<1>(a), db = std::get<0>(b) + std::get<1>(b);
        return da != db ? da > db : std::get<0>(a) > std::get<0>(b);
    });
    for (const auto& [i, j, c] : terms) {
        std::string mono;
        if (i) mono += i == 1 ? "s" : "s^" + std::to_string(i);
        if (j) mono += std::string(mono.empty() ? "" : "*") + (j == 1 ? "t" : "t^" + std::to_string(j));
        std::string coeff = f.field().to_string(c);
        if (!out.empty()) out += "+";
        if (mono.empty())
            out += coeff;
        else if (f.field().is_one(c))
            out += mono;
        else
            out += coeff + "*" + mono;
    }
    return out;
}

namespace detail {

/// Monic gcd of the t-coefficients.
inline FqPoly content_t(const BiPoly& a) {
    FqPoly g(a.field());
    for (const auto& c : a.coeffs()) g = gcd(g, c);
    return g;
}

/// Exact division by a nonzero polynomial in s.
inline BiPoly div_s_poly(const BiPoly& a, const FqPoly& d) {
    std::vector<FqPoly> c;
    for (const auto& p : a.coeffs()) {
        auto [q, r] = p.divmod(d);
        verify(r.is_zero(), "BiPoly: inexact division by a polynomial in s");
        c.push_back(q);
    }
    return BiPoly(a.field(), std::move(c));
}

inline BiPoly primitive_part(const BiPoly& a) { return a.is_zero() ? a : div_s_poly(a, content_t(a)); }

/// Pseudo-remainder of a by b in t, over F_p[s].
inline BiPoly prem(BiPoly a, const BiPoly& b) {
    const std::size_t db = b.deg_t();
    const BiPoly lb(b.field(), {b.leading_t()});
    while (!a.is_zero() && a.deg_t() >= db) {
        BiPoly la(a.field(), {a.leading_t()});
        a = a * lb - (la * b).shifted_t(a.deg_t() - db);
    }
    return a;
}

}  // namespace detail

/// a / b when b divides a exactly.
inline BiPoly exact_div(BiPoly a, const BiPoly& b) {
    require(!b.is_zero(), "BiPoly: division by zero");
    const FqField& F = a.field();
    const std::size_t db = b.deg_t();
    std::vector<FqPoly> q;
    while (!a.is_zero()) {
        verify(a.deg_t() >= db, "BiPoly: inexact division");
        const std::size_t k = a.deg_t() - db;
        auto [c, r] = a.leading_t().divmod(b.leading_t());
        verify(r.is_zero(), "BiPoly: inexact division");
        if (q.size() <= k) q.resize(k + 1, FqPoly(F));
        q[k] = c;
        a = a - b.times_s_poly(c).shifted_t(k);
    }
    return BiPoly(F, std::move(q));
}

/// gcd normalized to lc() = 1, via primitive remainder sequences in t.
inline BiPoly gcd(const BiPoly& a, const BiPoly& b) {
    const FqField& F = a.field();
    if (a.is_zero() && b.is_zero()) return BiPoly(F);
    if (a.is_zero()) return b.scaled(F.inv(b.lc()));
    if (b.is_zero()) return a.scaled(F.inv(a.lc()));
    FqPoly c = gcd(detail::content_t(a), detail::content_t(b));
    BiPoly x = detail::primitive_part(a), y = detail::primitive_part(b);
    if (x.deg_t() < y.deg_t()) std::swap(x, y);
    while (!y.is_zero()) {
        BiPoly r = detail::prem(x, y);
        x = std::move(y);
        y = detail::primitive_part(r);
    }
    BiPoly g = detail::primitive_part(x).times_s_poly(c);
    return g.scaled(F.inv(g.lc()));
}

/// Element of F_p(s, t): coprime numerator and denominator, with lc(den) = 1.
class MultiRatFunc {
public:
    explicit MultiRatFunc(const FqField& F) : num_(F), den_(BiPoly::constant(F, F.one())) {}
    MultiRatFunc(BiPoly num) : num_(std::move(num)), den_(BiPoly::constant(num_.field(), num_.field().one())) {}
    MultiRatFunc(BiPoly num, BiPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static MultiRatFunc constant(const FqField& F, FqElem a) { return MultiRatFunc(BiPoly::constant(F, a)); }
    static MultiRatFunc s(const FqField& F) { return MultiRatFunc(BiPoly::s(F)); }
    static MultiRatFunc t(const FqField& F) { return MultiRatFunc(BiPoly::t(F)); }

    const FqField& field() const { return num_.field(); }
    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    // Sums and products cancel only what can cancel (Henrici), which keeps
    // the gcds small.
    MultiRatFunc operator+(const MultiRatFunc& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        BiPoly g = gcd(den_, o.den_);
        BiPoly b = exact_div(den_, g), d = exact_div(o.den_, g);
        BiPoly n = num_ * d + o.num_ * b;
        if (n.is_zero()) return MultiRatFunc(field());
        BiPoly h = gcd(n, g);
        return MultiRatFunc(exact_div(n, h), b * exact_div(o.den_, h), Coprime{});
    }
    MultiRatFunc operator-() const { return MultiRatFunc(-num_, den_, Coprime{}); }
    MultiRatFunc operator-(const MultiRatFunc& o) const { return *this + (-o); }
    MultiRatFunc operator*(const MultiRatFunc& o) const {
        if (is_zero() || o.is_zero()) return MultiRatFunc(field());
        BiPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
        return MultiRatFunc(exact_div(num_, g1) * exact_div(o.num_, g2), exact_div(den_, g2) * exact_div(o.den_, g1),
                            Coprime{});
    }
    MultiRatFunc inverse() const {
        require(!is_zero(), "MultiRatFunc: division by zero");
        return MultiRatFunc(den_, num_, Coprime{});
    }
    MultiRatFunc operator/(const MultiRatFunc& o) const { return *this * o.inverse(); }
    MultiRatFunc pow(unsigned e) const { return MultiRatFunc(num_.pow(e), den_.pow(e), Coprime{}); }

    MultiRatFunc partial_s() const {
        return {num_.partial_s() * den_ - num_ * den_.partial_s(), den_ * den_};
    }
    MultiRatFunc partial_t() const {
        return {num_.partial_t() * den_ - num_ * den_.partial_t(), den_ * den_};
    }

    bool operator==(const MultiRatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    struct Coprime {};
    MultiRatFunc(BiPoly num, BiPoly den, Coprime) : num_(std::move(num)), den_(std::move(den)) { scale(); }

    void scale() {
        const FqField& F = field();
        FqElem l = F.inv(den_.lc());
        num_ = num_.scaled(l);
        den_ = den_.scaled(l);
    }

    void normalize() {
        const FqField& F = field();
        require(!den_.is_zero(), "MultiRatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = BiPoly::constant(F, F.one());
            return;
        }
        BiPoly g = gcd(num_, den_);
        num_ = exact_div(num_, g);
        den_ = exact_div(den_, g);
        scale();
    }

    BiPoly num_, den_;
};

inline std::string to_string(const MultiRatFunc& f) {
    if (f.den().is_constant()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

/// Omega^0: a function.
struct Form0 {
    MultiRatFunc f;
    bool operator==(const Form0&) const = default;
};

/// Omega^1: f ds + g dt.
struct Form1 {
    MultiRatFunc f, g;
    bool is_zero() const { return f.is_zero() && g.is_zero(); }
    Form1 operator+(const Form1& o) const { return {f + o.f, g + o.g}; }
    Form1 operator*(const MultiRatFunc& h) const { return {f * h, g * h}; }
    bool operator==(const Form1&) const = default;
};

/// Omega^2: h ds^dt. Top degree in two variables, so always closed.
struct Form2 {
    MultiRatFunc h;
    bool is_zero() const { return h.is_zero(); }
    Form2 operator+(const Form2& o) const { return {h + o.h}; }
    Form2 operator*(const MultiRatFunc& u) const { return {h * u}; }
    bool operator==(const Form2&) const = default;
};

inline std::string to_string(const Form1& w) { return "(" + to_string(w.f) + ") ds + (" + to_string(w.g) + ") dt"; }
inline std::string to_string(const Form2& w) { return "(" + to_string(w.h) + ") ds^dt"; }

inline Form1 d0(const MultiRatFunc& x) { return {x.partial_s(), x.partial_t()}; }
inline Form1 d0(const Form0& x) { return d0(x.f); }
inline Form2 d1(const Form1& w) { return {w.g.partial_s() - w.f.partial_t()}; }

inline Form2 wedge(const Form1& a, const Form1& b) { return {a.f * b.g - a.g * b.f}; }

inline Form1 dlog1(const MultiRatFunc& f) {
    require(!f.is_zero(), "dlog1: argument must be nonzero");
    Form1 d = d0(f);
    return {d.f / f, d.g / f};
}

inline Form2 dlog2(const MultiRatFunc& f, const MultiRatFunc& g) { return wedge(dlog1(f), dlog1(g)); }

namespace detail {

inline void require_prime_field(const FqField& F) {
    require(F.degree() == 1, "differential forms are implemented over prime fields F_p");
}

/// Keeps terms c s^i t^j with p | i + di and p | j + dj and sends them to
/// c s^((i+di)/p - di) t^((j+dj)/p - dj). Coefficients in F_p are their own
/// p-th roots.
inline BiPoly cartier_monomials(const BiPoly& h, std::size_t di, std::size_t dj) {
    const FqField& F = h.field();
    const std::size_t p = F.characteristic();
    BiPoly out(F);
    h.for_each_term([&](std::size_t i, std::size_t j, FqElem c) {
        if ((i + di) % p == 0 && (j + dj) % p == 0)
            out = out + BiPoly::monomial(F, c, (i + di) / p - di, (j + dj) / p - dj);
    });
    return out;
}

/// h * D^p as a polynomial, for D a multiple of the denominator of h.
inline BiPoly clear_by_pth_power(const MultiRatFunc& h, const BiPoly& D) {
    const unsigned p = static_cast<unsigned>(h.field().characteristic());
    return h.num() * exact_div(D, h.den()).pow(p) * h.den().pow(p - 1);
}

}  // namespace detail

/// Cartier operator on 2-forms: C(s^i t^j ds^dt) = s^((i+1)/p-1) t^((j+1)/p-1) ds^dt
/// when p | i+1 and p | j+1, else 0; rational h = N/D goes through N D^(p-1) / D^p.
inline Form2 cartier2(const Form2& w) {
    const FqField& F = w.h.field();
    detail::require_prime_field(F);
    if (w.is_zero()) return w;
    const BiPoly& D = w.h.den();
    BiPoly H = detail::clear_by_pth_power(w.h, D);
    return {MultiRatFunc(detail::cartier_monomials(H, 1, 1), D)};
}

/// d1(w) = 0, tested by cross-multiplying the two partials instead of
/// reducing their difference.
inline bool is_closed(const Form1& w) {
    const BiPoly &A = w.f.num(), &B = w.f.den(), &C = w.g.num(), &E = w.g.den();
    return (C.partial_s() * E - C * E.partial_s()) * B * B == (A.partial_t() * B - A * B.partial_t()) * E * E;
}

/// Cartier operator on closed 1-forms, coefficientwise:
/// C(s^i t^j ds) = s^((i+1)/p-1) t^(j/p) ds when p | i+1 and p | j, and
/// symmetrically for dt, after clearing a common denominator to a p-th power.
inline Form1 cartier1(const Form1& w) {
    const FqField& F = w.f.field();
    detail::require_prime_field(F);
    require(is_closed(w), "cartier1: form is not closed");
    BiPoly D = exact_div(w.f.den() * w.g.den(), gcd(w.f.den(), w.g.den()));
    BiPoly A = detail::clear_by_pth_power(w.f, D), B = detail::clear_by_pth_power(w.g, D);
    return {MultiRatFunc(detail::cartier_monomials(A, 1, 0), D), MultiRatFunc(detail::cartier_monomials(B, 0, 1), D)};
}

/// Exact 2-forms are the kernel of C.
inline bool in_B2(const Form2& w) { return cartier2(w).is_zero(); }
inline bool in_B1(const Form1& w) { return cartier1(w).is_zero(); }

/// Membership in nu(n) = Ker(gamma - Id): x^p = x in degree 0, C(w) = w otherwise.
inline bool nu_member(const Form0& x) {
    const unsigned p = static_cast<unsigned>(x.f.field().characteristic());
    return x.f.pow(p) == x.f;
}
inline bool nu_member(const Form1& w) { return cartier1(w) == w; }
inline bool nu_member(const Form2& w) { return cartier2(w) == w; }

}  // namespace k2sym

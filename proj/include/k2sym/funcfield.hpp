#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "k2sym/arith/polyfactor.hpp"
#include "k2sym/symbol_expr.hpp"

namespace k2sym {

/// Element of F_q(T) with monic denominator coprime to the numerator.
class FqRatFunc {
public:
    /// The zero function.
    explicit FqRatFunc(const FqField& F) : num_(F), den_(FqPoly::constant(F, F.one())) {}
    FqRatFunc(FqPoly num) : num_(std::move(num)), den_(FqPoly::constant(num_.field(), num_.field().one())) {}
    FqRatFunc(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static FqRatFunc constant(const FqField& F, FqElem c) { return FqRatFunc(FqPoly::constant(F, c)); }
    static FqRatFunc T(const FqField& F) { return FqRatFunc(FqPoly::x(F)); }

    const FqField& field() const { return num_.field(); }
    const FqPoly& num() const { return num_; }
    const FqPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    FqRatFunc operator*(const FqRatFunc& o) const { return {num_ * o.num_, den_ * o.den_}; }
    FqRatFunc operator/(const FqRatFunc& o) const {
        require(!o.is_zero(), "FqRatFunc: division by zero");
        return {num_ * o.den_, den_ * o.num_};
    }
    FqRatFunc operator+(const FqRatFunc& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
    FqRatFunc operator-(const FqRatFunc& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
    FqRatFunc operator-() const { return {-num_, den_}; }
    FqRatFunc pow(long e) const {
        FqRatFunc base = e < 0 ? constant(field(), field().one()) / *this : *this;
        const auto n = static_cast<unsigned>(e < 0 ? -e : e);
        return {k2sym::pow(base.num_, n), k2sym::pow(base.den_, n)};
    }
    bool operator==(const FqRatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    void normalize() {
        require(!den_.is_zero(), "FqRatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = FqPoly::constant(field(), field().one());
            return;
        }
        FqPoly g = gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        FqElem lc = den_.leading();
        num_ = num_.scaled(field().inv(lc));
        den_ = den_.monic();
    }

    FqPoly num_, den_;
};

inline std::string to_string(const FqRatFunc& f, const std::string& var = "T") {
    if (f.den().is_one()) return to_string(f.num(), var);
    return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

/// A place of F_q(T): a monic irreducible polynomial, or infinity.
class PlaceFq {
public:
    static PlaceFq finite(const FqPoly& pi) {
        require(!pi.is_zero() && pi.is_monic(), "PlaceFq: place polynomial must be monic");
        require(is_irreducible(pi), "PlaceFq: " + to_string(pi) + " is not irreducible");
        return PlaceFq(pi);
    }
    static PlaceFq infinity(const FqField& F) { return PlaceFq(F); }

    bool is_infinity() const { return !pi_.has_value(); }
    const FqPoly& pi() const {
        require(pi_.has_value(), "PlaceFq: infinity has no polynomial");
        return *pi_;
    }
    /// Degree of the residue field over F_q.
    unsigned degree() const { return pi_ ? static_cast<unsigned>(pi_->deg()) : 1u; }
    const FqField& field() const { return field_; }

    bool operator==(const PlaceFq& o) const { return pi_ == o.pi_; }
    /// Finite places by polynomial order, infinity last.
    bool operator<(const PlaceFq& o) const {
        if (!pi_ || !o.pi_) return pi_.has_value() && !o.pi_.has_value();
        return *pi_ < *o.pi_;
    }

private:
    explicit PlaceFq(const FqPoly& pi) : field_(pi.field()), pi_(pi) {}
    explicit PlaceFq(const FqField& F) : field_(F) {}
    FqField field_;
    std::optional<FqPoly> pi_;
};

inline std::string to_string(const PlaceFq& v) { return v.is_infinity() ? "inf" : to_string(v.pi()); }

namespace detail {

inline void require_nonzero(const FqRatFunc& f, const char* who) {
    require(!f.is_zero(), std::string(who) + ": argument must be nonzero");
}

/// f(1/U) as a rational function of U.
inline FqRatFunc at_infinity(const FqRatFunc& f) {
    const FqField& F = f.field();
    const long e = static_cast<long>(f.den().deg()) - static_cast<long>(f.num().deg());
    FqPoly n = f.num().reversed(f.num().deg()), d = f.den().reversed(f.den().deg());
    FqPoly U = FqPoly::x(F);
    if (e > 0) n = n * pow(U, static_cast<unsigned>(e));
    if (e < 0) d = d * pow(U, static_cast<unsigned>(-e));
    return {n, d};
}

/// (v_pi(f), f / pi^v reduced mod pi).
inline std::pair<long, FqPoly> split_at(const FqRatFunc& f, const FqPoly& pi) {
    FqPoly n = f.num(), d = f.den();
    long a = multiplicity(n, pi), b = multiplicity(d, pi);
    const FqPoly pa = pow(pi, static_cast<unsigned>(a)), pb = pow(pi, static_cast<unsigned>(b));
    return {a - b, ((n / pa) * inv_mod(d / pb, pi)) % pi};
}

inline FqPoly powmod_signed(const FqPoly& a, long e, const FqPoly& pi) {
    return e >= 0 ? powmod(a, Integer(e), pi) : powmod(inv_mod(a, pi), Integer(-e), pi);
}

/// Tame symbol at the finite place pi, valued in F_q[T]/pi.
inline FqPoly tame_at(const FqRatFunc& f, const FqRatFunc& g, const FqPoly& pi) {
    auto [v, a] = split_at(f, pi);
    auto [w, b] = split_at(g, pi);
    FqPoly r = (powmod_signed(a, w, pi) * powmod_signed(b, -v, pi)) % pi;
    if ((v & 1) && (w & 1)) r = (-r) % pi;
    return r;
}

}  // namespace detail

inline long ff_valuation(const FqRatFunc& f, const PlaceFq& v) {
    detail::require_nonzero(f, "ff_valuation");
    if (v.is_infinity()) return static_cast<long>(f.den().deg()) - static_cast<long>(f.num().deg());
    return detail::split_at(f, v.pi()).first;
}

/// Tame symbol at a place, as a polynomial of degree < deg(pi) representing a
/// unit of the residue field. At infinity, computed at U = 0 after T = 1/U.
inline FqPoly tame_ff(const FqRatFunc& f, const FqRatFunc& g, const PlaceFq& v) {
    detail::require_nonzero(f, "tame_ff");
    detail::require_nonzero(g, "tame_ff");
    if (v.is_infinity())
        return detail::tame_at(detail::at_infinity(f), detail::at_infinity(g), FqPoly::x(f.field()));
    return detail::tame_at(f, g, v.pi());
}

/// Norm from F_q[T]/pi down to F_q: x^((q^d - 1)/(q - 1)).
inline FqElem residue_norm(const FqPoly& x, const PlaceFq& v) {
    const FqField& F = v.field();
    if (v.is_infinity()) return x.coeff(0);
    Integer q(F.order());
    Integer e = (boost::multiprecision::pow(q, v.degree()) - 1) / (q - 1);
    FqPoly n = powmod(x, e, v.pi());
    verify(n.is_constant(), "residue_norm: norm did not land in F_q");
    return n.coeff(0);
}

/// Places where f or g has a zero or pole, in place order (infinity excluded).
inline std::vector<PlaceFq> finite_support(const std::vector<FqRatFunc>& fs) {
    std::set<FqPoly> seen;
    for (const auto& f : fs) {
        detail::require_nonzero(f, "finite_support");
        for (const FqPoly* p : {&f.num(), &f.den()})
            if (p->deg() > 0)
                for (const auto& [pi, e] : poly_factor(*p).factors) seen.insert(pi);
    }
    std::vector<PlaceFq> out;
    for (const auto& pi : seen) out.push_back(PlaceFq::finite(pi));
    return out;
}

struct WeilFactor {
    PlaceFq place;
    FqPoly tame;  // residue-field value
    FqElem norm;  // its norm to F_q
};

struct WeilResult {
    bool holds;
    std::vector<WeilFactor> factors;
};

/// Product over all places, infinity included, of Norm(tame_ff(f, g, v)).
inline WeilResult weil_check(const FqRatFunc& f, const FqRatFunc& g) {
    const FqField& F = f.field();
    auto places = finite_support({f, g});
    places.push_back(PlaceFq::infinity(F));
    WeilResult r{true, {}};
    FqElem prod = F.one();
    for (const auto& v : places) {
        FqPoly t = tame_ff(f, g, v);
        FqElem n = residue_norm(t, v);
        r.factors.push_back({v, t, n});
        prod = F.mul(prod, n);
    }
    r.holds = F.is_one(prod);
    return r;
}

/// Leading coefficient of f = ratio of the leading coefficients of numerator and denominator.
inline FqElem leading_coeff(const FqRatFunc& f) {
    detail::require_nonzero(f, "leading_coeff");
    return f.num().leading();
}

using FFSymbolExpr = SymbolExpr<FqRatFunc>;

/// Element of (+)_pi (F_q[T]/pi)^x, keyed by monic irreducible pi, storing
/// reduced residues; trivial components are never stored.
class K2FFClass {
public:
    K2FFClass() = default;

    const std::map<FqPoly, FqPoly>& components() const { return c_; }
    bool empty() const { return c_.empty(); }
    FqPoly at(const FqPoly& pi) const {
        auto it = c_.find(pi);
        return it == c_.end() ? FqPoly::constant(pi.field(), pi.field().one()) : it->second;
    }

    /// Multiply the component at pi by a unit (given mod pi or any representative).
    void mul_at(const FqPoly& pi, const FqPoly& a) {
        FqPoly v = (at(pi) * a) % pi;
        require(!v.is_zero(), "K2FFClass: value at " + to_string(pi) + " is not a unit");
        if (v.is_one())
            c_.erase(pi);
        else
            c_.insert_or_assign(pi, v);
    }

    K2FFClass operator+(const K2FFClass& o) const {
        K2FFClass r = *this;
        for (const auto& [pi, a] : o.c_) r.mul_at(pi, a);
        return r;
    }
    K2FFClass operator-() const {
        K2FFClass r;
        for (const auto& [pi, a] : c_) r.c_.insert_or_assign(pi, inv_mod(a, pi));
        return r;
    }
    K2FFClass operator-(const K2FFClass& o) const { return *this + (-o); }
    bool operator==(const K2FFClass& o) const { return c_ == o.c_; }

    /// Validated construction from raw components.
    static K2FFClass make(const std::map<FqPoly, FqPoly>& comps) {
        K2FFClass r;
        for (const auto& [pi, a] : comps) {
            PlaceFq::finite(pi);
            r.mul_at(pi, a);
        }
        return r;
    }

private:
    std::map<FqPoly, FqPoly> c_;
};

/// Tame components at every finite place (the K2(F_q) summand is zero).
inline K2FFClass decompose(const FFSymbolExpr& e) {
    K2FFClass out;
    for (const auto& t : e.terms()) {
        for (const auto& v : finite_support({t.x, t.y})) {
            FqPoly s = tame_ff(t.x, t.y, v);
            long m = t.multiplicity.convert_to<long>();
            out.mul_at(v.pi(), detail::powmod_signed(s, m, v.pi()));
        }
    }
    return out;
}

/// Preimage under decompose: repeatedly take a supported place of maximal
/// degree with value a (deg a < deg pi) and append {a, pi}. The symbol has
/// value a at pi and otherwise touches only places dividing a, of smaller degree.
inline FFSymbolExpr lift_ff(const K2FFClass& target) {
    FFSymbolExpr out;
    K2FFClass rest = target;
    while (!rest.empty()) {
        auto best = rest.components().begin();
        for (auto it = rest.components().begin(); it != rest.components().end(); ++it)
            if (it->first.deg() >= best->first.deg()) best = it;
        const FqPoly pi = best->first, a = best->second;
        const std::size_t deg_before = pi.deg();
        std::size_t count_before = 0;
        for (const auto& [p, x] : rest.components()) count_before += p.deg() == deg_before;
        FFSymbolExpr step = FFSymbolExpr::symbol(FqRatFunc(a), FqRatFunc(pi));
        out += step;
        rest = rest - decompose(step);
        std::size_t count_after = 0, max_after = 0;
        for (const auto& [p, x] : rest.components()) {
            max_after = std::max(max_after, p.deg());
            count_after += p.deg() == deg_before;
        }
        verify(rest.empty() || max_after < deg_before || count_after < count_before, "lift_ff: support did not shrink");
    }
    verify(decompose(out) == target, "lift_ff: round trip failed");
    return out;
}

struct SteinbergWitness {
    FqElem x, y;
};

/// Characteristic 2: -1 = 1, so {z, z} = {z, -z} = 0 directly.
struct Char2Marker {};

/// Exhaustive search for x, y != 0 with z x^2 + z y^2 = 1, x then y ascending.
inline std::variant<SteinbergWitness, Char2Marker> steinberg_witness(const FqField& F, FqElem zeta) {
    require(F.multiplicative_order(zeta) == F.order() - 1, "steinberg_witness: not a generator");
    if (F.characteristic() == 2) return Char2Marker{};
    for (std::uint64_t i = 1; i < F.order(); ++i) {
        FqElem x = F.from_index(i);
        FqElem rest = F.sub(F.one(), F.mul(zeta, F.mul(x, x)));
        for (std::uint64_t j = 1; j < F.order(); ++j) {
            FqElem y = F.from_index(j);
            if (F.mul(zeta, F.mul(y, y)) == rest) return SteinbergWitness{x, y};
        }
    }
    throw verification_failure("steinberg_witness: no witness found");
}

struct CountingBound {
    std::uint64_t scaled_squares;   // |{z x^2 : x in F}|
    std::uint64_t shifted_squares;  // |{1 - z y^2 : y in F}|
    std::uint64_t q;
    bool holds() const { return scaled_squares + shifted_squares > q; }
};

/// Both sets have (q + 1)/2 elements when q is odd, so they must meet.
inline CountingBound counting_bound(const FqField& F, FqElem zeta) {
    std::set<FqElem> a, b;
    for (std::uint64_t i = 0; i < F.order(); ++i) {
        FqElem x = F.from_index(i);
        FqElem sq = F.mul(x, x);
        a.insert(F.mul(zeta, sq));
        b.insert(F.sub(F.one(), F.mul(zeta, sq)));
    }
    return {a.size(), b.size(), F.order()};
}

/// Derivation that {z^m, z^n} = 0 in K2(F_q), z the field generator.
struct K2FqTrace {
    Integer m, n;
    std::optional<SteinbergWitness> witness;
    bool char2 = false;
    std::vector<std::string> steps;
};

inline K2FqTrace k2_fq_reduce(const FqField& F, const Integer& m, const Integer& n) {
    K2FqTrace t{m, n, std::nullopt, false, {}};
    const FqElem z = F.generator();
    const std::string zs = F.to_string(z);
    if (m == 0 || n == 0) {
        t.steps.push_back("z^0 = 1 and {1, y} = 0");
        return t;
    }
    t.steps.push_back("{z^" + m.str() + ", z^" + n.str() + "} = " + Integer(m * n).str() + "{z, z} by bilinearity, z = " + zs);
    if (F.characteristic() == 2) {
        t.char2 = true;
        t.steps.push_back("-1 = 1 in characteristic 2, so {z, z} = {z, -z} = 0");
    } else {
        auto w = std::get<SteinbergWitness>(steinberg_witness(F, z));
        t.witness = w;
        t.steps.push_back("{z, z} = {-1, z} and {z, -z} = 0 give 2{z, z} = 0");
        t.steps.push_back("witness z*(" + F.to_string(w.x) + ")^2 + z*(" + F.to_string(w.y) + ")^2 = 1");
        t.steps.push_back("0 = {z x^2, z y^2} = {z, z} + 2(...) = {z, z} mod 2K2, hence {z, z} = 0");
    }
    t.steps.push_back("{z^" + m.str() + ", z^" + n.str() + "} = 0");
    return t;
}

struct ConstantSymbol {
    FqElem a, b;
    Integer multiplicity;
};

struct Retraction {
    std::vector<ConstantSymbol> symbols;
    std::vector<K2FqTrace> traces;
};

/// Leading-coefficient retraction K2(F_q(T)) -> K2(F_q), with each constant
/// symbol reduced to 0.
inline Retraction retraction(const FFSymbolExpr& e) {
    Retraction r;
    for (const auto& t : e.terms()) {
        const FqField& F = t.x.field();
        FqElem a = leading_coeff(t.x), b = leading_coeff(t.y);
        r.symbols.push_back({a, b, t.multiplicity});
        r.traces.push_back(k2_fq_reduce(F, Integer(F.log(a)), Integer(F.log(b))));
    }
    return r;
}

}  // namespace k2sym

#pragma once

#include <map>
#include <vector>

#include "k2sym/localsym.hpp"
#include "k2sym/symbol_expr.hpp"

namespace k2sym {

using QSymbolExpr = SymbolExpr<Rational>;

/// An element of K2(Q) = {+-1} + (+)_{p odd} F_p^x in normal form: odd_part
/// never stores the value 1, so equality is componentwise.
class K2QClass {
public:
    K2QClass() = default;

    /// Validates and normalizes: keys must be odd primes, values units mod p.
    static K2QClass make(Sign two_slot, const std::map<Integer, Integer>& odd) {
        K2QClass c;
        c.two_slot_ = two_slot;
        for (const auto& [p, a] : odd) {
            require(p > 2 && is_prime(p), "K2QClass: " + p.str() + " is not an odd prime");
            Integer r = mod(a, p);
            require(r != 0, "K2QClass: value at " + p.str() + " is not a unit");
            if (r != 1) c.odd_[p] = r;
        }
        return c;
    }

    Sign two_slot() const { return two_slot_; }
    const std::map<Integer, Integer>& odd_part() const { return odd_; }
    Integer at(const Integer& p) const {
        auto it = odd_.find(p);
        return it == odd_.end() ? Integer(1) : it->second;
    }
    bool is_zero() const { return two_slot_.is_plus() && odd_.empty(); }

    K2QClass operator+(const K2QClass& o) const {
        K2QClass r = *this;
        r.two_slot_ *= o.two_slot_;
        for (const auto& [p, a] : o.odd_) r.mul_at(p, a);
        return r;
    }
    K2QClass operator-() const {
        K2QClass r;
        r.two_slot_ = two_slot_;
        for (const auto& [p, a] : odd_) r.odd_[p] = inv_mod(a, p);
        return r;
    }
    K2QClass operator-(const K2QClass& o) const { return *this + (-o); }
    /// m-fold sum.
    K2QClass times(const Integer& m) const {
        K2QClass r;
        r.two_slot_ = two_slot_.pow(m);
        for (const auto& [p, a] : odd_) {
            Integer b = m < 0 ? inv_mod(a, p) : a;
            Integer v = powmod(b, abs(m), p);
            if (v != 1) r.odd_[p] = v;
        }
        return r;
    }
    bool operator==(const K2QClass&) const = default;

    /// Multiply the component at odd p by a unit a.
    void mul_at(const Integer& p, const Integer& a) {
        Integer v = mod(Integer(at(p) * a), p);
        if (v == 1)
            odd_.erase(p);
        else
            odd_[p] = v;
    }

private:
    Sign two_slot_;
    std::map<Integer, Integer> odd_;
};

inline K2QClass k2q_add(const K2QClass& a, const K2QClass& b) { return a + b; }
inline K2QClass k2q_neg(const K2QClass& a) { return -a; }
inline bool k2q_is_zero(const K2QClass& a) { return a.is_zero(); }

inline K2QClass lambda_symbol(const Rational& x, const Rational& y) {
    K2QClass c = K2QClass::make(s_2(x, y), {});
    for (const auto& p : odd_support({x, y})) c.mul_at(p, tame(x, y, p));
    return c;
}

/// Tate's map K2(Q) -> {+-1} + (+)_p F_p^x: s_2 in the first slot, tame symbols elsewhere.
inline K2QClass lambda_tate(const QSymbolExpr& e) {
    K2QClass c;
    for (const auto& t : e.terms()) c = c + lambda_symbol(t.x, t.y).times(t.multiplicity);
    return c;
}

/// A preimage under lambda_tate, built by descent on the largest supported prime.
/// The symbol {a, p} with 1 <= a < p has tame value a at p and touches only
/// primes below p, so each step strictly shrinks the support.
inline QSymbolExpr lift(const K2QClass& target) {
    QSymbolExpr out;
    K2QClass rest = target;
    while (!rest.odd_part().empty()) {
        const auto [p, a] = *rest.odd_part().rbegin();
        Rational x(a), y(p);
        out.add(x, y);
        rest = rest - lambda_symbol(x, y);
        verify(rest.odd_part().empty() || rest.odd_part().rbegin()->first < p, "lift: support did not shrink");
    }
    if (rest.two_slot().is_minus()) out.add(Rational(-1), Rational(-1));
    verify(lambda_tate(out) == target, "lift: round trip failed");
    return out;
}

struct PlaceSign {
    PlaceQ place;
    Sign value;
    bool operator==(const PlaceSign&) const = default;
};

struct ReciprocityResult {
    bool holds;
    /// One entry per place of the support set, including trivial ones.
    std::vector<PlaceSign> factors;
};

/// Product over all places of hilbert(x, y, v).
inline ReciprocityResult hilbert_reciprocity(const Rational& x, const Rational& y) {
    detail::require_nonzero(x, y, "hilbert_reciprocity");
    ReciprocityResult r{true, {}};
    Sign prod;
    for (const auto& v : support_places({x, y})) {
        Sign s = hilbert(x, y, v);
        r.factors.push_back({v, s});
        prod *= s;
    }
    r.holds = prod.is_plus();
    return r;
}

struct QuadRecRecord {
    Integer p, q;
    int legendre_pq;  // (p/q)
    int legendre_qp;  // (q/p)
    int product;
    Integer exponent;  // ((p-1)/2)((q-1)/2)
    /// Factors of the product formula for the symbol {p, q}.
    std::vector<PlaceSign> factors;
    /// h_q(p,q) = (p/q), h_p(p,q) = (q/p), s_2(p,q) = (-1)^exponent, and the
    /// product of all factors is +1.
    bool consistent;
};

/// Quadratic reciprocity read off from Hilbert reciprocity for {p, q}.
inline QuadRecRecord quadratic_reciprocity(const Integer& p, const Integer& q) {
    require(p > 2 && is_prime(p) && q > 2 && is_prime(q), "quadratic_reciprocity: inputs must be odd primes");
    require(p != q, "quadratic_reciprocity: primes must be distinct");
    QuadRecRecord r;
    r.p = p;
    r.q = q;
    r.legendre_pq = legendre(p, q);
    r.legendre_qp = legendre(q, p);
    r.product = r.legendre_pq * r.legendre_qp;
    r.exponent = ((p - 1) / 2) * ((q - 1) / 2);
    auto rec = hilbert_reciprocity(Rational(p), Rational(q));
    r.factors = rec.factors;
    const int expected = (r.exponent & 1) != 0 ? -1 : 1;
    bool ok = rec.holds && r.product == expected;
    for (const auto& [v, s] : rec.factors) {
        if (v.is_real()) ok = ok && s.is_plus();
        else if (v.is_two()) ok = ok && s.value() == expected;
        else if (v.p() == q) ok = ok && s.value() == r.legendre_pq;
        else if (v.p() == p) ok = ok && s.value() == r.legendre_qp;
        else ok = false;
    }
    r.consistent = ok;
    return r;
}

/// Element of (+)_v mu(Q_v); only nontrivial components are stored.
using MooreVector = std::map<PlaceQ, MuValue>;

inline void moore_set(MooreVector& m, const MuValue& v) {
    if (v.is_one())
        m.erase(v.place);
    else
        m.insert_or_assign(v.place, v);
}

/// Checks that each entry is keyed by its own place and lies in mu(Q_v).
inline void validate(const MooreVector& m) {
    for (const auto& [v, mu] : m) {
        require(mu.place == v, "MooreVector: entry keyed by the wrong place");
        if (v.is_odd_prime())
            require(mu.value >= 1 && mu.value < v.p(), "MooreVector: value at " + to_string(v) + " not in [1, p-1]");
        else
            require(mu.value == 1 || mu.value == -1, "MooreVector: value at " + to_string(v) + " must be +-1");
    }
}

/// The middle map of Moore's sequence: norm-residue symbols at every place.
inline MooreVector moore_map(const QSymbolExpr& e) {
    MooreVector out;
    for (const auto& t : e.terms()) {
        for (const auto& v : support_places({t.x, t.y})) {
            MuValue cur = out.count(v) ? out.at(v) : mu_identity(v);
            moore_set(out, cur * norm_residue(t.x, t.y, v).pow(t.multiplicity));
        }
    }
    return out;
}

/// Sum into mu(Q) = {+-1}: each component raised to m_v / 2.
inline Sign moore_sum(const MooreVector& m) {
    validate(m);
    Sign s;
    for (const auto& [v, mu] : m) s *= mu.to_sign();
    return s;
}

struct MooreLiftCertificate {
    QSymbolExpr expr;
    struct Check {
        PlaceQ place;
        MuValue target;
        MuValue achieved;
    };
    /// Every place in the union of both supports, Real included.
    std::vector<Check> checks;
};

/// Preimage of a kernel vector: lift the 2-adic and odd components, then the
/// real component is forced by the product formula and is checked.
inline MooreLiftCertificate moore_lift(const MooreVector& target) {
    require(moore_sum(target).is_plus(), "moore_lift: target is not in the kernel of the sum map");
    Sign two;
    std::map<Integer, Integer> odd;
    for (const auto& [v, mu] : target) {
        if (v.is_two()) two = mu.to_sign();
        if (v.is_odd_prime()) odd[v.p()] = mu.value;
    }
    MooreLiftCertificate cert;
    cert.expr = lift(K2QClass::make(two, odd));
    MooreVector got = moore_map(cert.expr);
    std::set<PlaceQ> places{PlaceQ::real(), PlaceQ::prime(2)};
    for (const auto& [v, mu] : target) places.insert(v);
    for (const auto& [v, mu] : got) places.insert(v);
    for (const auto& v : places) {
        MuValue t = target.count(v) ? target.at(v) : mu_identity(v);
        MuValue a = got.count(v) ? got.at(v) : mu_identity(v);
        cert.checks.push_back({v, t, a});
        verify(t == a, "moore_lift: component at " + to_string(v) + " does not match");
    }
    return cert;
}

}  // namespace k2sym

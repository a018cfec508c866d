#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "k2sym/arith/fq.hpp"
#include "k2sym/arith/integer.hpp"
#include "k2sym/arith/primes.hpp"
#include "k2sym/error.hpp"

namespace k2sym {

struct ProjectiveLine {
    Integer q;
};

/// y^2 = x^3 + a x + b over F_p, p >= 5.
struct Elliptic {
    Integer p, a, b;
};

/// A smooth projective curve over F_q whose function field is the F of the zeta routines.
class CurveFq {
public:
    static CurveFq projective_line(const Integer& q) {
        require(prime_power(q).has_value(), "CurveFq: " + q.str() + " is not a prime power");
        return CurveFq(ProjectiveLine{q});
    }
    static CurveFq elliptic(const Integer& p, const Integer& a, const Integer& b) {
        require(p >= 5 && is_prime(p), "CurveFq: elliptic curves need a prime p >= 5");
        Integer A = mod(a, p), B = mod(b, p);
        require(mod(Integer(4 * A * A * A + 27 * B * B), p) != 0, "CurveFq: 4a^3 + 27b^2 = 0, the curve is singular");
        return CurveFq(Elliptic{p, A, B});
    }

    bool is_line() const { return std::holds_alternative<ProjectiveLine>(c_); }
    unsigned genus() const { return is_line() ? 0 : 1; }
    Integer q() const { return is_line() ? std::get<ProjectiveLine>(c_).q : std::get<Elliptic>(c_).p; }
    const Elliptic& elliptic_data() const {
        require(!is_line(), "CurveFq: not an elliptic curve");
        return std::get<Elliptic>(c_);
    }

private:
    explicit CurveFq(std::variant<ProjectiveLine, Elliptic> c) : c_(std::move(c)) {}
    std::variant<ProjectiveLine, Elliptic> c_;
};

inline std::string to_string(const CurveFq& c) {
    if (c.is_line()) return "P^1/F_" + c.q().str();
    const auto& e = c.elliptic_data();
    return "y^2 = x^3 + " + e.a.str() + "x + " + e.b.str() + " over F_" + e.p.str();
}

inline constexpr std::uint64_t kMaxCountField = 1'000'000;

/// Number of projective points over F_{q^n}, by enumeration.
inline Integer count_points(const CurveFq& c, unsigned n) {
    require(n >= 1, "count_points: extension degree must be positive");
    const Integer qn = boost::multiprecision::pow(c.q(), n);
    require(qn <= kMaxCountField, "count_points: q^n = " + qn.str() + " exceeds 10^6");
    FqField F = FqField::of_order(qn);
    if (c.is_line()) return Integer(F.order()) + 1;  // every affine x, plus infinity
    const auto& e = c.elliptic_data();
    const FqElem a = F.from_int(e.a.convert_to<std::int64_t>()), b = F.from_int(e.b.convert_to<std::int64_t>());
    // roots[v] = number of y with y^2 = v.
    std::vector<unsigned> roots(F.order(), 0);
    for (std::uint64_t i = 0; i < F.order(); ++i) {
        FqElem y = F.from_index(i);
        ++roots[F.mul(y, y).v];
    }
    Integer n_pts = 1;  // the point at infinity
    for (std::uint64_t i = 0; i < F.order(); ++i) {
        FqElem x = F.from_index(i);
        FqElem rhs = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(a, x), b));
        n_pts += roots[rhs.v];
    }
    return n_pts;
}

/// 1 - aU + qU^2 in genus 1, the constant 1 in genus 0.
struct LPoly {
    unsigned genus = 0;
    Integer q;
    Integer a;  // Frobenius trace; 0 in genus 0

    std::vector<Integer> coefficients() const {
        if (genus == 0) return {Integer(1)};
        return {Integer(1), Integer(-a), q};
    }
    Integer eval(const Integer& u) const { return genus == 0 ? Integer(1) : Integer(1 - a * u + q * u * u); }
};

inline std::string to_string(const LPoly& L) {
    if (L.genus == 0) return "1";
    std::string mid = L.a == 0 ? "" : (L.a < 0 ? " + " + Integer(-L.a).str() + "U" : " - " + L.a.str() + "U");
    return "1" + mid + " + " + L.q.str() + "U^2";
}

/// The trace comes from N_1; N_2 is counted separately and must agree.
inline LPoly l_polynomial(const CurveFq& c) {
    LPoly L;
    L.genus = c.genus();
    L.q = c.q();
    if (c.is_line()) return L;
    const Integer q = c.q();
    L.a = q + 1 - count_points(c, 1);
    const Integer n2 = count_points(c, 2);
    verify(q * q + 1 - n2 == L.a * L.a - 2 * q, "l_polynomial: N_2 disagrees with the trace from N_1");
    verify(L.a * L.a <= 4 * q, "l_polynomial: trace violates the Hasse bound");
    return L;
}

/// zeta_F(-1) = P(q) / ((1 - q)(1 - q^2)).
inline Rational zeta_minus1(const CurveFq& c) {
    const Integer q = c.q();
    return Rational(l_polynomial(c).eval(q)) / Rational((1 - q) * (1 - q * q));
}

struct TateIdentityRecord {
    unsigned genus;
    Integer q;
    Integer a;
    Rational zeta;  // zeta_F(-1)
    /// Genus 1: 1 - aq + q^3. Genus 0: Card Ker(lambda) = 1.
    Rational lhs;
    /// (q^2 - 1) zeta_F(-1) (q - 1).
    Rational rhs;
    Integer coker_order;  // q - 1, genus 0 only
    bool holds;
    std::string statement;
};

inline TateIdentityRecord tate_identity(const CurveFq& c) {
    TateIdentityRecord r;
    r.genus = c.genus();
    r.q = c.q();
    LPoly L = l_polynomial(c);
    r.a = L.a;
    r.zeta = zeta_minus1(c);
    r.rhs = Rational(r.q * r.q - 1) * r.zeta * Rational(r.q - 1);
    if (r.genus == 0) {
        // Ker(lambda) = 0 and Coker(lambda) = F_q^x for the rational function field.
        r.lhs = 1;
        r.coker_order = r.q - 1;
        r.statement = "Card Ker(lambda) = (q^2 - 1) zeta_F(-1) (q - 1) with Ker(lambda) = 0, Card Coker(lambda) = q - 1";
    } else {
        // Norm form of 1 - q pi, where pi has trace a and norm q.
        r.lhs = Rational(1 - r.a * r.q + r.q * r.q * r.q);
        r.coker_order = 0;
        r.statement =
            "genus >= 1: Card Ker(lambda) is out of reach; checked deg(1 - q pi) = (q^2 - 1) zeta_F(-1) (q - 1) instead";
    }
    r.holds = r.lhs == r.rhs;
    return r;
}

/// An a coprime to m with a^2 != 1 mod m, if one exists.
inline std::optional<Integer> w2_witness(const Integer& m) {
    require(m >= 1, "w2_witness: modulus must be positive");
    for (Integer a = 1; a < m; ++a)
        if (gcd(a, m) == 1 && mod(Integer(a * a), m) != 1) return a;
    return std::nullopt;
}

inline constexpr int kW2SearchBound = 200;

/// Largest m <= 200 such that a^2 = 1 mod m for all a prime to m, i.e. the
/// Galois action on Z/m(2) is trivial.
inline Integer w2_of_Q() {
    Integer best = 1;
    for (int m = 1; m <= kW2SearchBound; ++m)
        if (!w2_witness(m)) best = m;
    return best;
}

struct BirchTateRecord {
    Integer w2;
    Rational zeta;  // zeta_Q(-1)
    Rational product;  // w2 * |zeta_Q(-1)|
    Integer expected;  // Card Ker(rho) = 2
    bool holds;
};

inline BirchTateRecord birch_tate_Q() {
    BirchTateRecord r;
    r.w2 = w2_of_Q();
    r.zeta = -bernoulli(2) / 2;
    r.product = Rational(r.w2) * (r.zeta < 0 ? Rational(-r.zeta) : r.zeta);
    r.expected = 2;
    r.holds = r.product == Rational(r.expected);
    return r;
}

}  // namespace k2sym

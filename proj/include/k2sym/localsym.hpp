#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "k2sym/arith/primes.hpp"

namespace k2sym {

/// +1 or -1, written multiplicatively.
class Sign {
public:
    constexpr Sign() = default;
    static constexpr Sign plus() { return Sign(false); }
    static constexpr Sign minus() { return Sign(true); }
    static constexpr Sign from_parity(bool odd) { return Sign(odd); }
    static Sign of(int v) {
        require(v == 1 || v == -1, "Sign: value must be +1 or -1");
        return Sign(v < 0);
    }

    constexpr bool is_plus() const { return !neg_; }
    constexpr bool is_minus() const { return neg_; }
    constexpr int value() const { return neg_ ? -1 : 1; }

    constexpr Sign operator*(Sign o) const { return Sign(neg_ != o.neg_); }
    constexpr Sign& operator*=(Sign o) { return *this = *this * o; }
    constexpr Sign pow(const Integer& e) const { return Sign(neg_ && (e & 1) != 0); }
    constexpr bool operator==(const Sign&) const = default;

private:
    constexpr explicit Sign(bool neg) : neg_(neg) {}
    bool neg_ = false;
};

inline std::string to_string(Sign s) { return s.is_plus() ? "+1" : "-1"; }

/// A place of Q: the real place or a prime. Real sorts first.
class PlaceQ {
public:
    static PlaceQ real() { return PlaceQ(Integer(0)); }
    static PlaceQ prime(const Integer& p) {
        require(is_prime(p), "PlaceQ: " + p.str() + " is not prime");
        return PlaceQ(p);
    }

    bool is_real() const { return p_ == 0; }
    bool is_two() const { return p_ == 2; }
    bool is_odd_prime() const { return p_ > 2; }
    /// The prime; throws for the real place.
    const Integer& p() const {
        require(!is_real(), "PlaceQ: the real place has no prime");
        return p_;
    }
    /// Card mu(Q_v): 2 at Real and 2, p - 1 at odd p.
    Integer mu_order() const { return is_odd_prime() ? Integer(p_ - 1) : Integer(2); }

    bool operator==(const PlaceQ&) const = default;
    bool operator<(const PlaceQ& o) const { return p_ < o.p_; }

private:
    explicit PlaceQ(Integer p) : p_(std::move(p)) {}
    Integer p_;  // 0 encodes the real place
};

inline std::string to_string(const PlaceQ& v) { return v.is_real() ? "inf" : v.p().str(); }

/// An element of mu(Q_v). At Real and 2 the value is +-1; at odd p it is a
/// unit of F_p stored as its least positive residue.
struct MuValue {
    PlaceQ place;
    Integer value;

    bool is_one() const { return value == 1; }
    /// value^(m_v / 2), the image in mu(Q) = {+-1}.
    Sign to_sign() const {
        if (!place.is_odd_prime()) return Sign::of(value.convert_to<int>());
        Integer r = powmod(value, place.mu_order() / 2, place.p());
        return r == 1 ? Sign::plus() : Sign::minus();
    }
    MuValue operator*(const MuValue& o) const {
        require(place == o.place, "MuValue: places differ");
        if (place.is_odd_prime()) return {place, mod(Integer(value * o.value), place.p())};
        return {place, value * o.value};
    }
    MuValue pow(const Integer& e) const {
        if (place.is_odd_prime()) {
            Integer b = e < 0 ? inv_mod(value, place.p()) : value;
            return {place, powmod(b, abs(e), place.p())};
        }
        return {place, Integer(Sign::of(value.convert_to<int>()).pow(e).value())};
    }
    bool operator==(const MuValue&) const = default;
};

inline MuValue mu_identity(const PlaceQ& v) { return {v, Integer(1)}; }

namespace detail {

inline void require_nonzero(const Rational& x, const Rational& y, const char* who) {
    require(x != 0 && y != 0, std::string(who) + ": arguments must be nonzero");
}

/// 1 iff u = 3 mod 4, for an odd residue u mod 8.
inline int eps(int u8) { return (u8 % 4 == 3) ? 1 : 0; }
/// 1 iff u = +-3 mod 8.
inline int omega(int u8) { return (u8 == 3 || u8 == 5) ? 1 : 0; }

/// The 2-adic unit part of a nonzero rational, reduced mod 8.
inline int unit_mod8(const Rational& u) {
    Integer r = mod(Integer(numerator(u) * denominator(u)), Integer(8));
    return r.convert_to<int>();
}

}  // namespace detail

inline Sign s_infinity(const Rational& x, const Rational& y) {
    detail::require_nonzero(x, y, "s_infinity");
    return Sign::from_parity(x < 0 && y < 0);
}

/// Bilinear 2-adic symbol. Writing x = 2^a u and y = 2^b w with 2-adic units
/// u, w, the exponent of -1 is eps(u)eps(w) + a*omega(w) + b*omega(u), where
/// eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 mod 2. In particular s_2(2,2) = +1.
inline Sign s_2(const Rational& x, const Rational& y) {
    detail::require_nonzero(x, y, "s_2");
    const Integer two(2);
    auto [a, u] = split_valuation(x, two);
    auto [b, w] = split_valuation(y, two);
    const int u8 = detail::unit_mod8(u), w8 = detail::unit_mod8(w);
    const long e = detail::eps(u8) * detail::eps(w8) + (a & 1) * detail::omega(w8) + (b & 1) * detail::omega(u8);
    return Sign::from_parity(e & 1);
}

/// (-1)^(v(x)v(y)) x^v(y) y^(-v(x)) reduced into F_p^x, as a residue in [1, p-1].
inline Integer tame(const Rational& x, const Rational& y, const Integer& p) {
    detail::require_nonzero(x, y, "tame");
    require(p > 2 && is_prime(p), "tame: p must be an odd prime");
    auto [v, u] = split_valuation(x, p);
    auto [w, t] = split_valuation(y, p);
    // x^w y^-v = u^w t^-v since the powers of p cancel.
    Integer a = mod_rational(u, p), b = mod_rational(t, p);
    Integer r = w >= 0 ? powmod(a, Integer(w), p) : powmod(inv_mod(a, p), Integer(-w), p);
    r = mod(Integer(r * (v >= 0 ? powmod(inv_mod(b, p), Integer(v), p) : powmod(b, Integer(-v), p))), p);
    if ((v & 1) && (w & 1)) r = mod(Integer(-r), p);
    return r;
}

/// Quadratic part of the tame symbol: +1 iff xR^2 + yS^2 = 1 is solvable in Q_p.
inline Sign h_p(const Rational& x, const Rational& y, const Integer& p) {
    Integer t = tame(x, y, p);
    return powmod(t, (p - 1) / 2, p) == 1 ? Sign::plus() : Sign::minus();
}

/// Order-2 Hilbert symbol at any place of Q.
inline Sign hilbert(const Rational& x, const Rational& y, const PlaceQ& v) {
    if (v.is_real()) return s_infinity(x, y);
    if (v.is_two()) return s_2(x, y);
    return h_p(x, y, v.p());
}

/// Full norm-residue symbol valued in mu(Q_v). At odd p this is the tame
/// value, identifying mu(Q_p) with F_p^x by reduction mod p.
inline MuValue norm_residue(const Rational& x, const Rational& y, const PlaceQ& v) {
    if (v.is_odd_prime()) return {v, tame(x, y, v.p())};
    return {v, Integer(hilbert(x, y, v).value())};
}

/// xR^2 + yS^2 = 1 has a point over Q_v.
inline bool conic_local(const Rational& x, const Rational& y, const PlaceQ& v) {
    return hilbert(x, y, v).is_plus();
}

/// Image of {x_1, ..., x_n} in K_n(R)/2 = F_2 T^n: 1 iff every entry is negative.
inline int milnor_sign_class(const std::vector<Rational>& xs) {
    int bit = 1;
    for (const auto& x : xs) {
        require(x != 0, "milnor_sign_class: entries must be nonzero");
        if (x > 0) bit = 0;
    }
    return bit;
}

/// Odd primes dividing the numerator or denominator of any argument.
inline std::set<Integer> odd_support(const std::vector<Rational>& xs) {
    std::set<Integer> out;
    for (const auto& x : xs) {
        require(x != 0, "odd_support: entries must be nonzero");
        for (const auto& pe : factorize(x).factors)
            if (pe.prime != 2) out.insert(pe.prime);
    }
    return out;
}

/// Real, 2, and every odd prime dividing an argument: outside this set all
/// symbols of the arguments are trivial.
inline std::vector<PlaceQ> support_places(const std::vector<Rational>& xs) {
    std::vector<PlaceQ> out{PlaceQ::real(), PlaceQ::prime(2)};
    for (const auto& p : odd_support(xs)) out.push_back(PlaceQ::prime(p));
    return out;
}

}  // namespace k2sym

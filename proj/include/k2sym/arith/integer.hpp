#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

#include "k2sym/error.hpp"

namespace k2sym {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Integer& a) { return a.sign(); }
inline int sign(const Rational& a) { return a.sign(); }

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

/// b^e mod m for e >= 0.
inline Integer powmod(const Integer& b, const Integer& e, const Integer& m) {
    require(e >= 0, "powmod: negative exponent");
    if (m == 1) return 0;
    return boost::multiprecision::powm(mod(b, m), e, m);
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline Integer inv_mod(const Integer& a, const Integer& m) {
    Integer r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    require(r0 == 1, "inv_mod: element is not invertible");
    return mod(s0, m);
}

inline Integer isqrt(const Integer& n) {
    require(n >= 0, "isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Integer& n) {
    if (n < 0) return false;
    Integer r = isqrt(n);
    return r * r == n;
}

/// Rational reduced modulo m (denominator must be invertible mod m).
inline Integer mod_rational(const Rational& r, const Integer& m) {
    return mod(Integer(numerator(r) * inv_mod(denominator(r), m)), m);
}

inline std::string to_string(const Integer& a) { return a.str(); }

/// "a" for integers, "a/b" otherwise.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Integer parse_integer(std::string_view s) {
    require(!s.empty(), "empty integer literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    require(i < s.size(), "bad integer literal: " + std::string(s));
    for (std::size_t j = i; j < s.size(); ++j)
        require(s[j] >= '0' && s[j] <= '9', "bad integer literal: " + std::string(s));
    Integer v(std::string(s.substr(i)));
    return s[0] == '-' ? Integer(-v) : v;
}

/// Accepts "a" or "a/b".
inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    Integer n = parse_integer(s.substr(0, slash));
    Integer d = parse_integer(s.substr(slash + 1));
    require(d != 0, "zero denominator in " + std::string(s));
    return Rational(n, d);
}

inline std::int64_t to_int64(const Integer& a) {
    require(a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max(),
            "integer does not fit in 64 bits");
    return a.convert_to<std::int64_t>();
}

}  // namespace k2sym

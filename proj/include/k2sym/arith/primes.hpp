#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "k2sym/arith/integer.hpp"

namespace k2sym {

namespace detail {

inline constexpr std::array<unsigned, 13> kWitnessBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

inline bool miller_rabin_round(const Integer& n, const Integer& d, unsigned s, const Integer& a) {
    Integer x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n - 1) return true;
    }
    return false;
}

inline const std::vector<unsigned>& small_primes() {
    static const std::vector<unsigned> primes = [] {
        constexpr unsigned kLimit = 10000;
        std::vector<bool> composite(kLimit + 1, false);
        std::vector<unsigned> out;
        for (unsigned i = 2; i <= kLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned j = i * i; j <= kLimit; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace detail

/// Miller-Rabin with the first 13 prime bases; deterministic below 3.3e24,
/// which covers every 64-bit input.
inline bool is_prime(const Integer& n) {
    if (n < 2) return false;
    for (unsigned p : detail::kWitnessBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Integer d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (unsigned a : detail::kWitnessBases)
        if (!detail::miller_rabin_round(n, d, s, Integer(a))) return false;
    return true;
}

struct PrimePower {
    Integer prime;
    long exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n = sign * prod prime^exponent, primes strictly increasing.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    Rational expand() const {
        Rational r = sign;
        for (const auto& [p, e] : factors) {
            Integer pe = boost::multiprecision::pow(p, static_cast<unsigned>(e < 0 ? -e : e));
            if (e > 0)
                r *= pe;
            else
                r /= pe;
        }
        return r;
    }

    long exponent_of(const Integer& p) const {
        for (const auto& f : factors)
            if (f.prime == p) return f.exponent;
        return 0;
    }
};

namespace detail {

// Brent's variant of Pollard rho; n odd composite with no small factors.
inline Integer pollard_brent(const Integer& n) {
    for (unsigned c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        std::size_t r = 1;
        constexpr std::size_t m = 64;
        auto f = [&](const Integer& v) { return (v * v + c) % n; };
        do {
            x = y;
            for (std::size_t i = 0; i < r; ++i) y = f(y);
            std::size_t k = 0;
            do {
                ys = y;
                for (std::size_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = q * abs(Integer(x - y)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs(Integer(x - ys)), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(Integer n, std::map<Integer, long>& out, long mult) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += mult;
        return;
    }
    Integer d = pollard_brent(n);
    factor_into(d, out, mult);
    factor_into(n / d, out, mult);
}

inline void factor_positive(Integer n, std::map<Integer, long>& out, long mult) {
    for (unsigned p : small_primes()) {
        if (Integer(p) * p > n) break;
        while (n % p == 0) {
            out[Integer(p)] += mult;
            n /= p;
        }
    }
    if (n > 1) factor_into(n, out, mult);
}

}  // namespace detail

/// Factor a nonzero rational; exponents of denominator primes are negative.
inline Factorization factorize(const Rational& n) {
    require(n != 0, "factorize: zero has no factorization");
    std::map<Integer, long> acc;
    detail::factor_positive(abs(numerator(n)), acc, 1);
    detail::factor_positive(denominator(n), acc, -1);
    Factorization f;
    f.sign = n.sign();
    for (const auto& [p, e] : acc)
        if (e != 0) f.factors.push_back({p, e});
    return f;
}

/// p-adic valuation of a nonzero rational.
inline long valuation(const Rational& x, const Integer& p) {
    require(x != 0, "valuation of zero");
    long v = 0;
    Integer a = abs(numerator(x)), b = denominator(x);
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    while (b % p == 0) {
        b /= p;
        --v;
    }
    return v;
}

/// x = p^v * u; returns (v, u) with u a p-adic unit.
inline std::pair<long, Rational> split_valuation(const Rational& x, const Integer& p) {
    long v = valuation(x, p);
    Rational u = x;
    Integer pv = boost::multiprecision::pow(p, static_cast<unsigned>(v < 0 ? -v : v));
    if (v > 0)
        u /= pv;
    else if (v < 0)
        u *= pv;
    return {v, u};
}

/// Legendre symbol via Euler's criterion.
inline int legendre(const Integer& a, const Integer& p) {
    require(p > 2 && is_prime(p), "legendre: modulus must be an odd prime");
    Integer r = mod(a, p);
    if (r == 0) return 0;
    return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Signed squarefree integer in the square class of x.
inline Integer squarefree_part(const Rational& x) {
    Factorization f = factorize(x);
    Integer r = f.sign;
    for (const auto& [p, e] : f.factors)
        if (e % 2 != 0) r *= p;
    return r;
}

/// (p, k) with q = p^k, or nullopt.
inline std::optional<std::pair<Integer, unsigned>> prime_power(const Integer& q) {
    if (q < 2) return std::nullopt;
    Factorization f = factorize(Rational(q));
    if (f.factors.size() != 1) return std::nullopt;
    return std::make_pair(f.factors[0].prime, static_cast<unsigned>(f.factors[0].exponent));
}

/// Distinct prime divisors of a positive integer, increasing.
inline std::vector<Integer> prime_divisors(const Integer& n) {
    std::vector<Integer> out;
    for (const auto& f : factorize(Rational(n)).factors) out.push_back(f.prime);
    return out;
}

/// Bernoulli number B_n (B_1 = -1/2) from sum_{j<=n} C(n+1, j) B_j = 0.
inline Rational bernoulli(unsigned n) {
    require(n <= 128, "bernoulli: index out of supported range");
    std::vector<Rational> table{Rational(1)};
    for (unsigned m = 1; m <= n; ++m) {
        Rational acc = 0;
        Integer binom = 1;  // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            acc += Rational(binom) * table[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        table.push_back(-acc / Rational(m + 1));
    }
    return table[n];
}

}  // namespace k2sym

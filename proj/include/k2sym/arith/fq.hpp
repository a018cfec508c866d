#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "k2sym/arith/integer.hpp"
#include "k2sym/arith/primes.hpp"

namespace k2sym {

/// Z/pZ for an arbitrary-size prime p. Elements are plain Integers in [0, p).
class PrimeField {
   public:
    using Elem = Integer;

    explicit PrimeField(Integer p) : p_(std::move(p)) {
        require(is_prime(p_), "PrimeField: modulus " + p_.str() + " is not prime");
    }

    const Integer& characteristic() const noexcept { return p_; }

    Elem reduce(const Integer& a) const { return mod(a, p_); }
    Elem reduce(const Rational& a) const {
        require(denominator(a) % p_ != 0, "PrimeField: denominator divisible by p");
        return mod_rational(a, p_);
    }

    Elem add(const Elem& a, const Elem& b) const { return mod(a + b, p_); }
    Elem sub(const Elem& a, const Elem& b) const { return mod(a - b, p_); }
    Elem mul(const Elem& a, const Elem& b) const { return mod(a * b, p_); }
    Elem neg(const Elem& a) const { return mod(-a, p_); }
    Elem inv(const Elem& a) const {
        require(mod(a, p_) != 0, "PrimeField: zero is not invertible");
        return inv_mod(a, p_);
    }
    /// Negative exponents invert first.
    Elem pow(const Elem& a, const Integer& e) const {
        if (e < 0) return powmod(inv(a), -e, p_);
        return powmod(a, e, p_);
    }

   private:
    Integer p_;
};

/// Element of a small finite field: base-p digits packed into an integer,
/// digit i is the coefficient of a^i in the polynomial basis.
struct FqElem {
    std::uint32_t v = 0;
    friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

/// F_q with q = p^k <= 2^22, polynomial basis over the lexicographically
/// smallest monic irreducible of degree k. Multiplication goes through
/// exp/log tables built from the smallest generator.
class FqField {
   public:
    using Elem = FqElem;
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

    FqField(std::uint32_t p, unsigned k) : impl_(build(p, k)) {}

    static FqField of_order(const Integer& q) {
        auto pk = prime_power(q);
        require(pk.has_value(), "FqField: " + q.str() + " is not a prime power");
        require(q <= kMaxOrder, "FqField: order " + q.str() + " exceeds implementation bound");
        return FqField(pk->first.convert_to<std::uint32_t>(), pk->second);
    }

    std::uint32_t characteristic() const noexcept { return impl_->p; }
    unsigned degree() const noexcept { return impl_->k; }
    std::uint64_t order() const noexcept { return impl_->q; }
    /// Monic modulus, coefficients low to high (length k + 1).
    const std::vector<std::uint32_t>& modulus() const noexcept { return impl_->modulus; }

    Elem zero() const noexcept { return {0}; }
    Elem one() const noexcept { return {1}; }
    /// The class of the basis variable `a`, a root of the modulus; only for k > 1.
    Elem variable() const {
        require(impl_->k > 1, "FqField: a prime field has no basis variable");
        return Elem{impl_->p};
    }
    Elem from_int(std::int64_t a) const {
        std::int64_t p = impl_->p;
        return {static_cast<std::uint32_t>(((a % p) + p) % p)};
    }
    Elem from_index(std::uint64_t i) const {
        require(i < impl_->q, "FqField: index out of range");
        return {static_cast<std::uint32_t>(i)};
    }

    bool is_zero(Elem a) const noexcept { return a.v == 0; }
    bool is_one(Elem a) const noexcept { return a.v == 1; }

    Elem add(Elem a, Elem b) const noexcept {
        const auto& I = *impl_;
        if (I.k == 1) return {static_cast<std::uint32_t>((a.v + b.v) % I.p)};
        if (I.p == 2) return {a.v ^ b.v};
        std::uint32_t out = 0, scale = 1;
        for (unsigned i = 0; i < I.k; ++i) {
            out += ((a.v % I.p + b.v % I.p) % I.p) * scale;
            a.v /= I.p;
            b.v /= I.p;
            scale *= I.p;
        }
        return {out};
    }
    Elem neg(Elem a) const noexcept {
        const auto& I = *impl_;
        if (I.k == 1) return {a.v == 0 ? 0 : I.p - a.v};
        if (I.p == 2) return a;
        std::uint32_t out = 0, scale = 1;
        for (unsigned i = 0; i < I.k; ++i) {
            std::uint32_t d = a.v % I.p;
            out += (d == 0 ? 0 : I.p - d) * scale;
            a.v /= I.p;
            scale *= I.p;
        }
        return {out};
    }
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const noexcept {
        const auto& I = *impl_;
        if (a.v == 0 || b.v == 0) return {0};
        if (I.k == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.v} * b.v % I.p)};
        std::uint64_t s = std::uint64_t{I.log[a.v]} + I.log[b.v];
        if (s >= I.q - 1) s -= I.q - 1;
        return {I.exp[s]};
    }
    Elem inv(Elem a) const {
        require(a.v != 0, "FqField: zero is not invertible");
        const auto& I = *impl_;
        std::uint32_t l = I.log[a.v];
        return {I.exp[l == 0 ? 0 : I.q - 1 - l]};
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    /// Negative exponents allowed for units.
    Elem pow(Elem a, std::int64_t e) const {
        const auto& I = *impl_;
        if (a.v == 0) {
            require(e >= 0, "FqField: zero to a negative power");
            return e == 0 ? one() : zero();
        }
        std::int64_t n = static_cast<std::int64_t>(I.q - 1);
        std::int64_t l = (static_cast<std::int64_t>(I.log[a.v]) * (((e % n) + n) % n)) % n;
        return {I.exp[static_cast<std::size_t>(l)]};
    }
    Elem pow(Elem a, const Integer& e) const {
        if (a.v == 0) return pow(a, e < 0 ? std::int64_t{-1} : (e == 0 ? std::int64_t{0} : std::int64_t{1}));
        return pow(a, to_int64(mod(e, Integer(impl_->q - 1))));
    }

    /// Smallest element (in index order) of multiplicative order q - 1.
    Elem generator() const noexcept { return {impl_->exp[1 % std::max<std::uint64_t>(impl_->q - 1, 1)]}; }
    /// Discrete logarithm to the base generator(); a must be nonzero.
    std::uint64_t log(Elem a) const {
        require(a.v != 0, "FqField: log of zero");
        return impl_->log[a.v];
    }
    std::uint64_t multiplicative_order(Elem a) const {
        require(a.v != 0, "FqField: order of zero");
        std::uint64_t n = impl_->q - 1;
        return n / std::gcd<std::uint64_t>(n, impl_->log[a.v]);
    }

    /// Base-p digits (coefficients in the polynomial basis), low to high.
    std::vector<std::uint32_t> digits(Elem a) const {
        std::vector<std::uint32_t> d(impl_->k);
        for (unsigned i = 0; i < impl_->k; ++i) {
            d[i] = a.v % impl_->p;
            a.v /= impl_->p;
        }
        return d;
    }

    /// Decimal for prime fields, polynomial in `a` otherwise (e.g. "2*a+1").
    std::string to_string(Elem e) const {
        if (impl_->k == 1) return std::to_string(e.v);
        auto d = digits(e);
        std::string out;
        for (unsigned i = impl_->k; i-- > 0;) {
            if (d[i] == 0) continue;
            if (!out.empty()) out += "+";
            std::string mono = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
            if (i == 0)
                out += std::to_string(d[i]);
            else if (d[i] == 1)
                out += mono;
            else
                out += std::to_string(d[i]) + "*" + mono;
        }
        return out.empty() ? "0" : out;
    }

    friend bool operator==(const FqField& a, const FqField& b) noexcept {
        return a.impl_ == b.impl_ || (a.impl_->p == b.impl_->p && a.impl_->k == b.impl_->k);
    }

   private:
    struct Impl {
        std::uint32_t p = 0;
        unsigned k = 0;
        std::uint64_t q = 0;
        std::vector<std::uint32_t> modulus;
        std::vector<std::uint32_t> exp, log;
    };

    // Product of digit vectors modulo the monic modulus, used only while
    // building the tables.
    static std::vector<std::uint32_t> poly_mulmod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                                  const std::vector<std::uint32_t>& m, std::uint32_t p) {
        const std::size_t k = m.size() - 1;
        std::vector<std::uint64_t> r(2 * k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) r[i + j] = (r[i + j] + std::uint64_t{a[i]} * b[j]) % p;
        for (std::size_t d = 2 * k - 1; d >= k; --d) {
            std::uint64_t c = r[d];
            if (c == 0) continue;
            r[d] = 0;
            for (std::size_t i = 0; i < k; ++i) r[d - k + i] = (r[d - k + i] + (p - c) * m[i]) % p;
        }
        std::vector<std::uint32_t> out(k);
        for (std::size_t i = 0; i < k; ++i) out[i] = static_cast<std::uint32_t>(r[i]);
        return out;
    }

    static std::vector<std::uint32_t> to_digits(std::uint64_t v, std::uint32_t p, unsigned k) {
        std::vector<std::uint32_t> d(k);
        for (unsigned i = 0; i < k; ++i) {
            d[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        return d;
    }
    static std::uint32_t from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
        std::uint64_t v = 0;
        for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
        return static_cast<std::uint32_t>(v);
    }

    // Remainder of a (digits, any length) by a monic b over F_p; used for the
    // brute-force irreducibility check of candidate moduli.
    static bool divides(const std::vector<std::uint32_t>& b, std::vector<std::uint64_t> a, std::uint32_t p) {
        const std::size_t db = b.size() - 1;
        for (std::size_t d = a.size(); d-- > db;) {
            std::uint64_t c = a[d] % p;
            if (c == 0) continue;
            for (std::size_t i = 0; i <= db; ++i) a[d - db + i] = (a[d - db + i] + (p - c) * b[i]) % p;
        }
        for (std::size_t i = 0; i < db; ++i)
            if (a[i] % p != 0) return false;
        return true;
    }

    // No monic factor of degree 1..k/2, checked exhaustively.
    static bool irreducible_brute(const std::vector<std::uint32_t>& f, std::uint32_t p) {
        const unsigned k = static_cast<unsigned>(f.size() - 1);
        std::vector<std::uint64_t> fa(f.begin(), f.end());
        for (unsigned d = 1; 2 * d <= k; ++d) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p;
            for (std::uint64_t low = 0; low < count; ++low) {
                auto g = to_digits(low, p, d);
                g.push_back(1);
                if (divides(g, fa, p)) return false;
            }
        }
        return true;
    }

    static std::shared_ptr<const Impl> build(std::uint32_t p, unsigned k) {
        require(is_prime(Integer(p)), "FqField: characteristic " + std::to_string(p) + " is not prime");
        require(k >= 1, "FqField: degree must be positive");
        auto I = std::make_shared<Impl>();
        I->p = p;
        I->k = k;
        I->q = 1;
        for (unsigned i = 0; i < k; ++i) {
            I->q *= p;
            require(I->q <= kMaxOrder, "FqField: order exceeds implementation bound");
        }
        // Lexicographically smallest monic irreducible: compare coefficients
        // from degree k-1 downwards, i.e. increasing packed value.
        if (k == 1) {
            I->modulus = {0, 1};
        } else {
            std::uint64_t count = I->q;
            for (std::uint64_t low = 0; low < count; ++low) {
                auto f = to_digits(low, p, k);
                f.push_back(1);
                if (f[0] != 0 && irreducible_brute(f, p)) {
                    I->modulus = f;
                    break;
                }
            }
            verify(!I->modulus.empty(), "FqField: no irreducible modulus found");
        }

        const std::uint64_t n = I->q - 1;
        auto mul_idx = [&](std::uint64_t a, std::uint64_t b) -> std::uint64_t {
            if (k == 1) return a * b % p;
            return from_digits(poly_mulmod(to_digits(a, p, k), to_digits(b, p, k), I->modulus, p), p);
        };
        auto pow_idx = [&](std::uint64_t a, std::uint64_t e) {
            std::uint64_t r = 1;
            while (e) {
                if (e & 1) r = mul_idx(r, a);
                a = mul_idx(a, a);
                e >>= 1;
            }
            return r;
        };
        std::vector<std::uint64_t> ell;
        for (const auto& f : factorize(Rational(Integer(n == 0 ? 1 : n))).factors) ell.push_back(f.prime.convert_to<std::uint64_t>());
        std::uint64_t g = 1;
        if (n > 1) {
            for (g = 2; g < I->q; ++g) {
                bool full = true;
                for (auto l : ell)
                    if (pow_idx(g, n / l) == 1) {
                        full = false;
                        break;
                    }
                if (full) break;
            }
        }
        I->exp.assign(n + 1, 0);
        I->log.assign(I->q, 0);
        std::uint64_t x = 1;
        for (std::uint64_t e = 0; e < n; ++e) {
            I->exp[e] = static_cast<std::uint32_t>(x);
            I->log[x] = static_cast<std::uint32_t>(e);
            x = mul_idx(x, g);
        }
        I->exp[n] = 1;
        verify(x == 1, "FqField: generator order mismatch");
        return I;
    }

    std::shared_ptr<const Impl> impl_;
};

/// Smallest full-order element of F_q.
inline FqElem generator(const Integer& q) { return FqField::of_order(q).generator(); }

}  // namespace k2sym

#pragma once

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "k2sym/arith/poly.hpp"

namespace k2sym {

namespace detail {

/// x^(q^m) mod f by repeated q-th powering.
inline FqPoly frobenius_power(const FqPoly& f, unsigned m) {
    const FqField& F = f.field();
    FqPoly h = FqPoly::x(F) % f;
    for (unsigned i = 0; i < m; ++i) h = powmod(h, Integer(F.order()), f);
    return h;
}

/// g(x) with g(x)^p = f(x); f must be a polynomial in x^p.
inline FqPoly pth_root(const FqPoly& f) {
    const FqField& F = f.field();
    const std::uint32_t p = F.characteristic();
    const std::int64_t root_exp = static_cast<std::int64_t>(F.order() / p);
    std::vector<FqElem> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F.pow(f.coeffs()[i], root_exp));
    return FqPoly(F, std::move(c));
}

inline void squarefree_into(const FqPoly& f, unsigned mult, std::vector<std::pair<FqPoly, unsigned>>& out) {
    const FqField& F = f.field();
    FqPoly c = gcd(f, f.derivative());
    FqPoly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        FqPoly y = gcd(w, c);
        FqPoly fac = w / y;
        if (!fac.is_one()) out.emplace_back(fac.monic(), i * mult);
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one()) squarefree_into(pth_root(c).monic(), mult * F.characteristic(), out);
}

/// Split a squarefree monic f whose irreducible factors all have degree d.
inline void equal_degree_into(const FqPoly& f, unsigned d, std::mt19937_64& rng, std::vector<FqPoly>& out) {
    const std::size_t n = f.deg();
    if (n == d) {
        out.push_back(f);
        return;
    }
    const FqField& F = f.field();
    std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
    Integer qd = boost::multiprecision::pow(Integer(F.order()), d);
    for (;;) {
        std::vector<FqElem> a(n);
        for (auto& e : a) e = F.from_index(pick(rng));
        FqPoly r(F, a);
        if (r.degree() < Degree(1)) continue;
        FqPoly b(F);
        if (F.characteristic() == 2) {
            // Absolute trace to F_2: r + r^2 + ... + r^(2^(k d - 1)).
            FqPoly t = r;
            b = r;
            for (unsigned i = 1; i < F.degree() * d; ++i) {
                t = t * t % f;
                b += t;
            }
        } else {
            b = powmod(r, (qd - 1) / 2, f) - FqPoly::constant(F, F.one());
        }
        FqPoly g = gcd(b, f);
        if (!g.is_zero() && g.deg() > 0 && g.deg() < n) {
            equal_degree_into(g, d, rng, out);
            equal_degree_into(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Rabin's test.
inline bool is_irreducible(const FqPoly& f) {
    if (f.is_zero() || f.deg() == 0) return false;
    const unsigned n = static_cast<unsigned>(f.deg());
    FqPoly g = f.monic();
    FqPoly x = FqPoly::x(f.field()) % g;
    if (!(detail::frobenius_power(g, n) == x)) return false;
    for (const auto& r : prime_divisors(Integer(n))) {
        unsigned m = n / r.convert_to<unsigned>();
        if (!gcd(detail::frobenius_power(g, m) - x, g).is_one()) return false;
    }
    return true;
}

struct PolyFactorization {
    FqElem leading;
    /// Distinct monic irreducibles with multiplicities, ascending by Poly order.
    std::vector<std::pair<FqPoly, unsigned>> factors;

    FqPoly expand(const FqField& F) const {
        FqPoly r = FqPoly::constant(F, leading);
        for (const auto& [g, e] : factors) r = r * pow(g, e);
        return r;
    }
};

/// Factor a nonzero polynomial over F_q into monic irreducibles.
inline PolyFactorization poly_factor(const FqPoly& f) {
    require(!f.is_zero(), "poly_factor: zero polynomial");
    const FqField& F = f.field();
    PolyFactorization out{f.leading(), {}};
    if (f.deg() == 0) return out;

    std::vector<std::pair<FqPoly, unsigned>> sqf;
    detail::squarefree_into(f.monic(), 1, sqf);

    std::mt19937_64 rng(0x6b32);
    std::vector<std::pair<FqPoly, unsigned>> acc;
    for (const auto& [g0, mult] : sqf) {
        FqPoly g = g0;
        FqPoly h = FqPoly::x(F) % g;
        const FqPoly x = h;
        for (unsigned d = 1; g.deg() >= 2 * d; ++d) {
            h = powmod(h, Integer(F.order()), g);
            FqPoly part = gcd(h - x, g);
            if (!part.is_one()) {
                std::vector<FqPoly> pieces;
                detail::equal_degree_into(part, d, rng, pieces);
                for (auto& pc : pieces) acc.emplace_back(std::move(pc), mult);
                g = g / part;
                h = h % g;
            }
        }
        if (g.deg() > 0) acc.emplace_back(g, mult);
    }
    std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    // Squarefree parts of different multiplicity are coprime.
    for (std::size_t i = 1; i < acc.size(); ++i)
        verify(!(acc[i - 1].first == acc[i].first), "poly_factor: repeated irreducible factor");
    out.factors = std::move(acc);
    return out;
}

/// Multiplicity of the monic irreducible pi in f (f != 0).
inline long multiplicity(FqPoly f, const FqPoly& pi) {
    require(!f.is_zero(), "multiplicity in the zero polynomial");
    long v = 0;
    for (;;) {
        auto [q, r] = f.divmod(pi);
        if (!r.is_zero()) return v;
        f = std::move(q);
        ++v;
    }
}

}  // namespace k2sym

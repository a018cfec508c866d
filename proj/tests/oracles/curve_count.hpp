#pragma once

#include <cstdint>
#include <vector>

// Point counts on y^2 = x^3 + ax + b by double loops, over F_p and over
// F_{p^2} = F_p[i]/(i^2 - r) with r a non-residue.
namespace oracle {

inline std::int64_t count_fp(std::int64_t p, std::int64_t a, std::int64_t b) {
    std::int64_t n = 1;
    for (std::int64_t x = 0; x < p; ++x)
        for (std::int64_t y = 0; y < p; ++y)
            if ((y * y - x * x % p * x - a * x - b) % p == 0) ++n;
    return n;
}

inline std::int64_t count_fp2(std::int64_t p, std::int64_t a, std::int64_t b) {
    std::int64_t r = 2;
    for (;; ++r) {
        bool square = false;
        for (std::int64_t z = 1; z < p; ++z) square = square || z * z % p == r;
        if (!square) break;
    }
    struct E {
        std::int64_t u, v;  // u + v i
    };
    auto mul = [&](E x, E y) { return E{(x.u * y.u + r * (x.v * y.v % p)) % p, (x.u * y.v + x.v * y.u) % p}; };
    // Tally squares first, then look up each right-hand side.
    std::vector<std::int64_t> sq(p * p, 0);
    for (std::int64_t u = 0; u < p; ++u)
        for (std::int64_t v = 0; v < p; ++v) {
            E y2 = mul({u, v}, {u, v});
            ++sq[y2.u * p + y2.v];
        }
    std::int64_t n = 1;
    for (std::int64_t u = 0; u < p; ++u)
        for (std::int64_t v = 0; v < p; ++v) {
            E x{u, v};
            E x3 = mul(mul(x, x), x);
            E rhs{((x3.u + a * u + b) % p + p) % p, ((x3.v + a * v) % p + p) % p};
            n += sq[rhs.u * p + rhs.v];
        }
    return n;
}

}  // namespace oracle

#pragma once

#include <random>

#include "k2sym/funcfield.hpp"

namespace testing_support {

/// Polynomial of exact degree d (nonzero leading coefficient).
inline k2sym::FqPoly random_poly(const k2sym::FqField& F, std::mt19937_64& rng, unsigned d) {
    std::uniform_int_distribution<std::uint64_t> pick(0, F.order() - 1);
    std::vector<k2sym::FqElem> c(d + 1);
    for (auto& e : c) e = F.from_index(pick(rng));
    c.back() = F.from_index(1 + pick(rng) % (F.order() - 1));
    return k2sym::FqPoly(F, c);
}

/// Nonzero rational function with numerator and denominator degrees <= max_deg.
inline k2sym::FqRatFunc random_ratfunc(const k2sym::FqField& F, std::mt19937_64& rng, unsigned max_deg) {
    std::uniform_int_distribution<unsigned> d(0, max_deg);
    return k2sym::FqRatFunc(random_poly(F, rng, d(rng)), random_poly(F, rng, d(rng)));
}

}  // namespace testing_support

#pragma once
// Tame symbol over F_q(T) straight from the defining formula: build
// h = (-1)^(vw) f^w g^(-v) as one rational function, then reduce it at the place.

#include "k2sym/funcfield.hpp"

namespace oracle {

inline long valuation_by_division(k2sym::FqPoly f, const k2sym::FqPoly& pi) {
    long v = 0;
    while ((f % pi).is_zero()) {
        f = f / pi;
        ++v;
    }
    return v;
}

inline k2sym::FqPoly tame_direct(const k2sym::FqRatFunc& f, const k2sym::FqRatFunc& g, const k2sym::FqPoly& pi) {
    using namespace k2sym;
    long v = valuation_by_division(f.num(), pi) - valuation_by_division(f.den(), pi);
    long w = valuation_by_division(g.num(), pi) - valuation_by_division(g.den(), pi);
    FqRatFunc h = f.pow(w) * g.pow(-v);
    if ((v * w) % 2 != 0) h = -h;
    // h is a unit at pi: reduce numerator times inverse of denominator.
    return (h.num() * inv_mod(h.den(), pi)) % pi;
}

/// At infinity: substitute T = 1/U by hand and use the finite formula at U.
inline k2sym::FqPoly tame_direct_infinity(const k2sym::FqRatFunc& f, const k2sym::FqRatFunc& g) {
    using namespace k2sym;
    auto flip = [](const FqRatFunc& h) {
        const FqField& F = h.field();
        // num(1/U) = U^(-deg) * reversed(num), same for den.
        std::size_t a = h.num().deg(), b = h.den().deg();
        FqRatFunc n(h.num().reversed(a)), d(h.den().reversed(b));
        FqRatFunc U = FqRatFunc::T(F);
        return n / d * U.pow(static_cast<long>(b) - static_cast<long>(a));
    };
    return tame_direct(flip(f), flip(g), FqPoly::x(f.field()));
}

}  // namespace oracle

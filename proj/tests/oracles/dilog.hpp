#pragma once

#include <cmath>
#include <complex>

// Two direct evaluations of the Bloch-Wigner function, straight from
// D(z) = Arg(1 - z) log|z| - Im int_0^z log(1 - t) dt / t.
namespace oracle {

using Cx = std::complex<double>;

/// Li_2 by its defining power series; |z| <= 0.8.
inline Cx li2_series(Cx z) {
    Cx sum = 0, zk = z;
    for (int k = 1; k < 400; ++k) {
        sum += zk / static_cast<double>(k) / static_cast<double>(k);
        zk *= z;
    }
    return sum;
}

inline double bloch_wigner_series(Cx z) { return std::arg(1.0 - z) * std::log(std::abs(z)) + std::imag(li2_series(z)); }

/// Integral along the segment [0, z] by composite Gauss-Legendre (5 nodes);
/// the segment must stay away from [1, infinity).
inline double bloch_wigner_integral(Cx z, int panels = 4000) {
    static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                                0.2369268850561891};
    Cx integral = 0;
    for (int k = 0; k < panels; ++k) {
        const double a = static_cast<double>(k) / panels, b = static_cast<double>(k + 1) / panels;
        for (int j = 0; j < 5; ++j) {
            const double s = 0.5 * (a + b) + 0.5 * (b - a) * x[j];
            const Cx t = s * z;
            // log(1 - t)/t dt with dt = z ds; the t -> 0 limit is -1.
            const Cx f = std::abs(t) < 1e-300 ? Cx(-1) : std::log(1.0 - t) / t;
            integral += 0.5 * (b - a) * w[j] * f * z;
        }
    }
    return std::arg(1.0 - z) * std::log(std::abs(z)) - std::imag(integral);
}

}  // namespace oracle

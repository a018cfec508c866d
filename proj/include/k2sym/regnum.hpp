#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "k2sym/arith/poly.hpp"
#include "k2sym/arith/primes.hpp"
#include "k2sym/error.hpp"

namespace k2sym {

using Cx = std::complex<double>;

struct DilogValue {
    double value;
    /// z was 0 or 1, where D extends continuously by 0.
    bool boundary;
};

namespace detail {

/// B_n / (n+1)! for n = 0..kTerms-1, as doubles.
inline constexpr std::size_t kDilogTerms = 48;

inline const std::array<double, kDilogTerms>& dilog_coefficients() {
    static const std::array<double, kDilogTerms> c = [] {
        std::array<double, kDilogTerms> out{};
        Rational fact = 1;
        for (std::size_t n = 0; n < kDilogTerms; ++n) {
            fact *= Rational(static_cast<long>(n + 1));
            out[n] = static_cast<double>(bernoulli(static_cast<unsigned>(n)) / fact);
        }
        return out;
    }();
    return c;
}

/// Li_2(z) = sum B_n w^(n+1)/(n+1)! with w = -log(1 - z), for |w| well inside 2 pi.
inline Cx li2_bernoulli(Cx z) {
    const Cx w = -std::log(1.0 - z);
    const auto& c = dilog_coefficients();
    Cx sum = 0, wp = w;
    for (std::size_t n = 0; n < kDilogTerms; ++n) {
        sum += c[n] * wp;
        wp *= w;
    }
    return sum;
}

inline double bloch_wigner_reduced(Cx z) { return std::imag(li2_bernoulli(z)) + std::arg(1.0 - z) * std::log(std::abs(z)); }

}  // namespace detail

/// Bloch-Wigner dilogarithm D(z) = Im Li_2(z) + Arg(1 - z) log|z|. The six
/// anharmonic images of z carry D up to sign; the one in |z| <= 1, Re z <= 1/2
/// keeps the Bernoulli series short.
inline DilogValue bloch_wigner(Cx z) {
    require(std::isfinite(z.real()) && std::isfinite(z.imag()), "bloch_wigner: argument is not finite");
    if (z == Cx(0) || z == Cx(1)) return {0.0, true};
    const std::array<std::pair<Cx, double>, 6> images{{
        {z, 1.0},
        {1.0 - 1.0 / z, 1.0},
        {1.0 / (1.0 - z), 1.0},
        {1.0 / z, -1.0},
        {1.0 - z, -1.0},
        {z / (z - 1.0), -1.0},
    }};
    for (const auto& [w, sign] : images)
        if (std::abs(w) <= 1.0 && w.real() <= 0.5) return {sign * detail::bloch_wigner_reduced(w), false};
    // Rounding can leave every image a hair outside the region; take the smallest.
    std::size_t best = 0;
    for (std::size_t k = 1; k < images.size(); ++k)
        if (std::abs(images[k].first) + std::max(0.0, images[k].first.real() - 0.5) <
            std::abs(images[best].first) + std::max(0.0, images[best].first.real() - 0.5))
            best = k;
    return {images[best].second * detail::bloch_wigner_reduced(images[best].first), false};
}

inline Cx to_cx(const GaussQ& a) { return {static_cast<double>(a.re), static_cast<double>(a.im)}; }

/// Element of Q(i)(z): coprime numerator and denominator, denominator monic.
class CxRatFunc {
public:
    CxRatFunc(GaussQPoly num) : CxRatFunc(std::move(num), GaussQPoly::constant({}, {1, 0})) {}
    CxRatFunc(GaussQPoly num, GaussQPoly den) : num_(std::move(num)), den_(std::move(den)) {
        require(!den_.is_zero(), "CxRatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = GaussQPoly::constant({}, {1, 0});
            return;
        }
        GaussQPoly g = gcd(num_, den_);
        num_ = num_ / g;
        den_ = den_ / g;
        GaussQ l = GaussQField{}.inv(den_.leading());
        num_ = num_.scaled(l);
        den_ = den_.scaled(l);
    }

    static CxRatFunc z() { return CxRatFunc(GaussQPoly::x({})); }
    static CxRatFunc constant(const GaussQ& c) { return CxRatFunc(GaussQPoly::constant({}, c)); }

    const GaussQPoly& num() const { return num_; }
    const GaussQPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    CxRatFunc operator+(const CxRatFunc& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
    CxRatFunc operator-(const CxRatFunc& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
    CxRatFunc operator*(const CxRatFunc& o) const { return {num_ * o.num_, den_ * o.den_}; }
    CxRatFunc operator/(const CxRatFunc& o) const {
        require(!o.is_zero(), "CxRatFunc: division by zero");
        return {num_ * o.den_, den_ * o.num_};
    }
    bool operator==(const CxRatFunc&) const = default;

    Cx eval(Cx z) const { return eval_poly(num_, z) / eval_poly(den_, z); }
    /// f'/f at z.
    Cx log_derivative(Cx z) const {
        return eval_poly(num_.derivative(), z) / eval_poly(num_, z) - eval_poly(den_.derivative(), z) / eval_poly(den_, z);
    }

    static Cx eval_poly(const GaussQPoly& p, Cx z) {
        Cx r = 0;
        for (std::size_t i = p.coeffs().size(); i-- > 0;) r = r * z + to_cx(p.coeffs()[i]);
        return r;
    }

private:
    GaussQPoly num_, den_;
};

inline std::string to_string(const CxRatFunc& f) {
    if (f.den().is_one()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

namespace detail {

/// Roots of a squarefree polynomial by Aberth iteration.
inline std::vector<Cx> aberth_roots(const GaussQPoly& p) {
    const std::size_t n = p.deg();
    std::vector<Cx> c;
    for (const auto& a : p.coeffs()) c.push_back(to_cx(a));
    for (auto& a : c) a /= c.back();
    if (n == 0) return {};
    // Start on a circle bounded by the Cauchy radius, at a generic angle.
    double radius = 0;
    for (std::size_t i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = 1 + radius;
    std::vector<Cx> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(radius * 0.5, 2 * std::numbers::pi * k / n + 0.4);
    auto eval = [&](Cx x, Cx& d) {
        Cx v = 0;
        d = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            d = d * x + v;
            v = v * x + c[i];
        }
        return v;
    };
    for (int it = 0; it < 500; ++it) {
        double change = 0;
        for (std::size_t k = 0; k < n; ++k) {
            Cx d;
            Cx v = eval(z[k], d);
            if (v == Cx(0)) continue;
            Cx ratio = v / d, s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            Cx step = ratio / (1.0 - ratio * s);
            z[k] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-15 * radius) break;
    }
    return z;
}

inline std::vector<Cx> distinct_roots(const GaussQPoly& p) {
    if (p.is_zero() || p.is_constant()) return {};
    return aberth_roots(p / gcd(p, p.derivative()));
}

}  // namespace detail

/// Zeros and poles of f and g together, each listed once (numerical).
inline std::vector<Cx> singular_points(const CxRatFunc& f, const CxRatFunc& g) {
    GaussQPoly all = f.num() * f.den() * g.num() * g.den();
    return detail::distinct_roots(all);
}

struct Loop {
    Cx center;
    double radius;
    int orientation = 1;
    /// Initial sample count for the quadrature, a power of two.
    std::size_t samples = 16;
};

/// Each singular point lies within r/2 of the center or at least 2r from it.
inline void require_separated(const CxRatFunc& f, const CxRatFunc& g, const Loop& loop) {
    require(!f.is_zero() && !g.is_zero(), "loop: f and g must be nonzero");
    require(loop.radius > 0 && std::isfinite(loop.radius), "loop: radius must be positive");
    require(loop.orientation == 1 || loop.orientation == -1, "loop: orientation must be +1 or -1");
    require(loop.samples >= 2 && (loop.samples & (loop.samples - 1)) == 0, "loop: samples must be a power of two");
    for (const Cx& s : singular_points(f, g)) {
        const double d = std::abs(s - loop.center);
        require(d <= loop.radius / 2 || d >= 2 * loop.radius,
                "loop: a zero or pole lies too close to the circle of radius " + std::to_string(loop.radius));
    }
}

/// eta_{f,g} = log|f| dArg(g) - log|g| dArg(f) at z on the tangent vector dz,
/// using dArg(h) = Im(h'/h dz).
inline double eta(const CxRatFunc& f, const CxRatFunc& g, Cx z, Cx dz) {
    const Cx fz = f.eval(z), gz = g.eval(z);
    require(std::isfinite(std::abs(fz)) && std::isfinite(std::abs(gz)) && fz != Cx(0) && gz != Cx(0),
            "eta: point is a zero or pole");
    return std::log(std::abs(fz)) * std::imag(g.log_derivative(z) * dz) -
           std::log(std::abs(gz)) * std::imag(f.log_derivative(z) * dz);
}

/// eta_{f,g} along z = c + r e^(i o theta), per unit d(theta).
inline double eta_pullback(const CxRatFunc& f, const CxRatFunc& g, const Loop& loop, double theta) {
    const Cx e = std::polar(1.0, loop.orientation * theta);
    return eta(f, g, loop.center + loop.radius * e, Cx(0, loop.orientation) * loop.radius * e);
}

struct LoopIntegral {
    double value;
    /// |last estimate - previous estimate|.
    double tolerance;
    std::size_t samples;
};

inline constexpr double kLoopTolerance = 1e-9;
inline constexpr std::size_t kMaxLoopSamples = std::size_t{1} << 20;

/// (1/2pi) times the integral of eta_{f,g} around the loop, by the trapezoid
/// rule with sample doubling.
inline LoopIntegral loop_integral(const CxRatFunc& f, const CxRatFunc& g, const Loop& loop) {
    require_separated(f, g, loop);
    const double two_pi = 2 * std::numbers::pi;
    std::size_t n = loop.samples;
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k) sum += eta_pullback(f, g, loop, two_pi * k / n);
    double estimate = sum / n;
    for (;;) {
        // The new nodes sit halfway between the old ones.
        for (std::size_t k = 0; k < n; ++k) sum += eta_pullback(f, g, loop, two_pi * (k + 0.5) / n);
        n *= 2;
        const double next = sum / n;
        const double diff = std::abs(next - estimate);
        estimate = next;
        if (diff < kLoopTolerance) return {estimate, diff, n};
        verify(n < kMaxLoopSamples, "loop_integral: no convergence after 2^20 samples");
    }
}

namespace detail {

/// Splits f = (z - s)^v u with u(s) finite and nonzero; returns (v, u(s)).
inline std::pair<long, GaussQ> split_at_point(const CxRatFunc& f, const GaussQ& s) {
    require(!f.is_zero(), "order of the zero function");
    const GaussQField K;
    const GaussQPoly lin(K, {K.neg(s), K.one()});
    long v = 0;
    GaussQPoly n = f.num(), d = f.den();
    while (n.eval(s) == K.zero()) {
        n = n / lin;
        ++v;
    }
    while (d.eval(s) == K.zero()) {
        d = d / lin;
        --v;
    }
    return {v, K.mul(n.eval(s), K.inv(d.eval(s)))};
}

inline GaussQ gauss_pow(const GaussQ& a, long e) {
    const GaussQField K;
    GaussQ base = e < 0 ? K.inv(a) : a, r = K.one();
    for (long k = e < 0 ? -e : e; k > 0; --k) r = K.mul(r, base);
    return r;
}

}  // namespace detail

/// Order of vanishing of f at s (negative at poles).
inline long order_at(const CxRatFunc& f, const GaussQ& s) { return detail::split_at_point(f, s).first; }

/// (-1)^(ab) u(s)^b / w(s)^a for f = (z-s)^a u, g = (z-s)^b w, exactly in Q(i).
inline GaussQ tame_at(const CxRatFunc& f, const CxRatFunc& g, const GaussQ& s) {
    auto [a, u] = detail::split_at_point(f, s);
    auto [b, w] = detail::split_at_point(g, s);
    const GaussQField K;
    GaussQ t = K.mul(detail::gauss_pow(u, b), detail::gauss_pow(w, -a));
    return (a * b) % 2 != 0 ? K.neg(t) : t;
}

struct ResidueRecord {
    GaussQ point;
    long order_f, order_g;
    GaussQ tame;
    double log_abs_tame;
    LoopIntegral integral;
    double radius;
    bool holds;
};

inline constexpr double kResidueTolerance = 1e-6;

/// Loop integral around s against log|tame symbol at s|. The radius is a
/// third of the distance to the nearest other zero or pole.
inline ResidueRecord residue_check(const CxRatFunc& f, const CxRatFunc& g, const GaussQ& s) {
    ResidueRecord r;
    r.point = s;
    r.order_f = order_at(f, s);
    r.order_g = order_at(g, s);
    require(r.order_f != 0 || r.order_g != 0, "residue_check: point is not a zero or pole of f or g");
    r.tame = tame_at(f, g, s);
    r.log_abs_tame = 0.5 * std::log(static_cast<double>(r.tame.norm()));
    const Cx c = to_cx(s);
    double nearest = std::numeric_limits<double>::infinity();
    for (const Cx& p : singular_points(f, g)) {
        const double d = std::abs(p - c);
        if (d > 1e-9) nearest = std::min(nearest, d);
    }
    r.radius = std::isfinite(nearest) ? nearest / 3 : 1.0;
    r.integral = loop_integral(f, g, Loop{c, r.radius});
    r.holds = std::abs(r.integral.value - r.log_abs_tame) < kResidueTolerance;
    return r;
}

}  // namespace k2sym

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "k2sym/regnum.hpp"
#include "oracles/dilog.hpp"

using namespace k2sym;

namespace {

const GaussQField K;

GaussQ gq(long re, long im = 0) { return {Rational(re), Rational(im)}; }

CxRatFunc lin(const GaussQ& a) { return CxRatFunc(GaussQPoly(K, {K.neg(a), K.one()})); }
CxRatFunc cst(long re, long im = 0) { return CxRatFunc::constant(gq(re, im)); }

const CxRatFunc Z = CxRatFunc::z();

/// c * prod (z - zeros) / prod (z - poles).
CxRatFunc product(const GaussQ& c, const std::vector<GaussQ>& zeros, const std::vector<GaussQ>& poles) {
    CxRatFunc f = CxRatFunc::constant(c);
    for (const auto& a : zeros) f = f * lin(a);
    for (const auto& b : poles) f = f / lin(b);
    return f;
}

/// Distinct Gaussian integers with coordinates in [-3, 3].
std::vector<GaussQ> distinct_points(std::mt19937_64& rng, std::size_t n) {
    std::set<GaussQ> seen;
    std::vector<GaussQ> out;
    while (out.size() < n) {
        GaussQ p = gq(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3);
        if (seen.insert(p).second) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST(RegNum, BlochWignerExamples) {
    EXPECT_NEAR(bloch_wigner({0.5, 0}).value, 0.0, 1e-15);
    EXPECT_NEAR(bloch_wigner({0, 1}).value, 0.9159655941772190, 1e-12);
    // Catalan's constant by its own alternating series.
    double catalan = 0;
    for (int k = 0; k < 2000000; ++k) catalan += (k % 2 ? -1.0 : 1.0) / ((2.0 * k + 1) * (2.0 * k + 1));
    EXPECT_NEAR(bloch_wigner({0, 1}).value, catalan, 1e-9);
    auto zero = bloch_wigner({0, 0}), one = bloch_wigner({1, 0});
    EXPECT_TRUE(zero.boundary);
    EXPECT_TRUE(one.boundary);
    EXPECT_EQ(zero.value, 0.0);
    EXPECT_EQ(one.value, 0.0);
    EXPECT_FALSE(bloch_wigner({2, 3}).boundary);
    EXPECT_THROW(bloch_wigner({std::nan(""), 0}), invalid_input);
}

TEST(RegNum, BlochWignerAgainstSeries) {
    for (int a = -8; a <= 8; ++a)
        for (int b = -8; b <= 8; ++b) {
            Cx z(a / 10.0, b / 10.0);
            if (std::abs(z) > 0.8 || z == Cx(0)) continue;
            ASSERT_NEAR(bloch_wigner(z).value, oracle::bloch_wigner_series(z), 1e-12) << z;
        }
}

TEST(RegNum, BlochWignerAgainstIntegral) {
    for (int a = -12; a <= 12; ++a)
        for (int b = -12; b <= 12; ++b) {
            if (b == 0) continue;  // the segment would run along the real axis
            Cx z(a / 4.0, b / 4.0);
            ASSERT_NEAR(bloch_wigner(z).value, oracle::bloch_wigner_integral(z), 1e-10) << z;
        }
}

TEST(RegNum, BlochWignerSymmetries) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        Cx z(u(rng), u(rng));
        const double d = bloch_wigner(z).value;
        ASSERT_NEAR(bloch_wigner(std::conj(z)).value, -d, 1e-12);
        ASSERT_NEAR(bloch_wigner(1.0 / z).value, -d, 1e-12);
        ASSERT_NEAR(bloch_wigner(1.0 - z).value, -d, 1e-12);
        // Five-term relation.
        Cx w(u(rng), u(rng));
        double five = bloch_wigner(z).value + bloch_wigner(w).value + bloch_wigner((1.0 - z) / (1.0 - z * w)).value +
                      bloch_wigner(1.0 - z * w).value + bloch_wigner((1.0 - w) / (1.0 - z * w)).value;
        ASSERT_NEAR(five, 0.0, 1e-10) << z << " " << w;
    }
}

TEST(RegNum, CanonicalRatFunc) {
    CxRatFunc f = (Z * Z - cst(1)) / (cst(2) * (Z - cst(1)));
    EXPECT_EQ(f, (Z + cst(1)) / cst(2));
    EXPECT_TRUE(f.den().is_one());
    EXPECT_THROW(Z / CxRatFunc(GaussQPoly(K)), invalid_input);
}

TEST(RegNum, EtaPullbackExamples) {
    const CxRatFunc g = cst(2) * Z;
    for (double r : {0.3, 1.0, 2.5})
        for (double th : {0.0, 1.0, 4.0}) {
            EXPECT_NEAR(eta_pullback(Z, g, Loop{0, r}, th), -std::numbers::ln2, 1e-13);
            EXPECT_NEAR(eta_pullback(g, g, Loop{0, r}, th), 0.0, 1e-15);
        }
    EXPECT_THROW(eta_pullback(Z - cst(1), g, Loop{0, 1}, 0.0), invalid_input);
}

TEST(RegNum, LoopIntegralExamples) {
    auto a = loop_integral(Z, cst(2) * Z, Loop{0, 0.5});
    EXPECT_NEAR(a.value, -0.6931471806, 1e-9);
    auto b = loop_integral(Z, cst(1) - Z, Loop{0, 0.3});
    EXPECT_NEAR(b.value, 0.0, 1e-9);
    EXPECT_LT(b.tolerance, 1e-9);
    // Only 0 is enclosed at either radius.
    const CxRatFunc f = Z * (Z - cst(3)), g = (Z - cst(0, 2)) / (Z + cst(1));
    auto small = loop_integral(f, g, Loop{0, 0.1}), big = loop_integral(f, g, Loop{0, 0.2});
    EXPECT_NEAR(small.value, big.value, 1e-9);
    auto rev = loop_integral(f, g, Loop{0, 0.2, -1});
    EXPECT_NEAR(rev.value, -big.value, 1e-9);
    EXPECT_THROW(loop_integral(Z, Z - cst(1), Loop{0, 0.8}), invalid_input);
    EXPECT_THROW(loop_integral(Z, Z, Loop{0, 1, 1, 12}), invalid_input);
}

TEST(RegNum, ResidueExamples) {
    auto a = residue_check(Z, cst(2) * Z, gq(0));
    EXPECT_EQ(a.tame, (GaussQ{Rational(-1, 2), 0}));
    EXPECT_TRUE(a.holds);
    EXPECT_NEAR(a.integral.value, -std::numbers::ln2, 1e-9);
    auto b = residue_check(Z, cst(1) - Z, gq(0));
    EXPECT_EQ(b.tame, gq(1));
    EXPECT_TRUE(b.holds);
    auto c = residue_check(Z - cst(1), Z - cst(1), gq(1));
    EXPECT_EQ(c.tame, gq(-1));
    EXPECT_TRUE(c.holds);
    EXPECT_THROW(residue_check(Z, Z, gq(5)), invalid_input);
}

TEST(RegNum, Antisymmetry) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 10; ++i) {
        auto pts = distinct_points(rng, 4);
        CxRatFunc f = product(gq(1, 1), {pts[0]}, {pts[1]}), g = product(gq(2), {pts[2]}, {pts[0]});
        Loop loop{to_cx(pts[0]), 0.3};
        ASSERT_NEAR(loop_integral(f, g, loop).value, -loop_integral(g, f, loop).value, 1e-9);
    }
}

TEST(RegNum, Bilinearity) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 10; ++i) {
        auto pts = distinct_points(rng, 5);
        CxRatFunc f1 = product(gq(1), {pts[0]}, {pts[1]}), f2 = product(gq(0, 1), {pts[2], pts[0]}, {}),
                  g = product(gq(3), {pts[3]}, {pts[0], pts[4]});
        Loop loop{to_cx(pts[0]), 0.3};
        ASSERT_NEAR(loop_integral(f1 * f2, g, loop).value,
                    loop_integral(f1, g, loop).value + loop_integral(f2, g, loop).value, 1e-8);
    }
}

TEST(RegNum, SteinbergVanishes) {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 10; ++i) {
        const std::size_t nz = 1 + rng() % 3, np = rng() % 3;
        auto pts = distinct_points(rng, nz + np);
        CxRatFunc f = product(gq(1 + static_cast<long>(rng() % 3), static_cast<long>(rng() % 3)),
                              {pts.begin(), pts.begin() + nz}, {pts.begin() + nz, pts.end()});
        CxRatFunc g = cst(1) - f;
        if (g.is_zero()) continue;
        auto sing = singular_points(f, g);
        for (const Cx& s : sing) {
            double nearest = 1e300;
            for (const Cx& t : sing)
                if (t != s) nearest = std::min(nearest, std::abs(t - s));
            Loop loop{s, nearest < 1e300 ? nearest / 3 : 1.0};
            ASSERT_LT(std::abs(loop_integral(f, g, loop).value), 1e-8) << to_string(f) << " at " << s;
        }
    }
}

TEST(RegNum, ResidueRandomPairs) {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 10; ++i) {
        auto pts = distinct_points(rng, 5);
        // f and g share pts[0] so the tame symbol there is nontrivial.
        CxRatFunc f = product(gq(2, 1), {pts[0], pts[1]}, {pts[2]});
        CxRatFunc g = product(gq(-3), {pts[3]}, {pts[0], pts[4]});
        for (const auto& s : pts) {
            auto r = residue_check(f, g, s);
            ASSERT_TRUE(r.holds) << to_string(s) << ": " << r.integral.value << " vs " << r.log_abs_tame;
        }
    }
}

TEST(RegNum, EtaIsClosed) {
    // The integral of eta around a small square equals the integral of d eta over it.
    const CxRatFunc f = product(gq(1), {gq(1), gq(0, 2)}, {gq(-1)}), g = product(gq(2, -1), {gq(2, 1)}, {gq(0)});
    static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
    static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                                0.2369268850561891};
    for (Cx corner : {Cx(0.3, 0.4), Cx(-2.0, 1.5), Cx(1.5, -1.0)}) {
        const double h = 0.1;
        const Cx v[4] = {corner, corner + h, corner + Cx(h, h), corner + Cx(0, h)};
        double total = 0;
        for (int e = 0; e < 4; ++e) {
            const Cx a = v[e], b = v[(e + 1) % 4];
            for (int j = 0; j < 5; ++j) total += 0.5 * w[j] * eta(f, g, a + (b - a) * (0.5 + 0.5 * x[j]), b - a);
        }
        EXPECT_LT(std::abs(total), 1e-9) << corner;
    }
}

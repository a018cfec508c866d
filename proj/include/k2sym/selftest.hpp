#pragma once

#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "k2sym/charpforms.hpp"
#include "k2sym/expr.hpp"
#include "k2sym/funcfield.hpp"
#include "k2sym/k2q.hpp"
#include "k2sym/quadforms.hpp"
#include "k2sym/regnum.hpp"
#include "k2sym/zeta.hpp"

namespace k2sym {

struct SuiteResult {
    std::string module;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0; }
    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok && failures++ == 0) first_failure = what;
    }
};

namespace selftest {

using Rng = std::mt19937_64;

inline Rational small_rational(Rng& rng, int bound) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
    int n = 0;
    while (n == 0) n = num(rng);
    return Rational(n, den(rng));
}

inline FqPoly small_poly(const FqField& F, Rng& rng, unsigned deg) {
    std::vector<FqElem> c(deg + 1);
    for (auto& e : c) e = F.from_index(rng() % F.order());
    c.back() = F.from_index(1 + rng() % (F.order() - 1));
    return FqPoly(F, c);
}

inline FqRatFunc small_ratfunc(const FqField& F, Rng& rng, unsigned deg) {
    return FqRatFunc(small_poly(F, rng, static_cast<unsigned>(rng() % (deg + 1))),
                     small_poly(F, rng, static_cast<unsigned>(rng() % (deg + 1))));
}

inline SuiteResult arith() {
    SuiteResult r{"arith"};
    Rng rng(101);
    for (int i = 0; i < 300; ++i) {
        Rational x = small_rational(rng, 100000);
        r.check(factorize(x).expand() == x, "factorize round trip at " + to_string(x));
    }
    for (unsigned q : {4u, 8u, 9u, 25u, 27u, 49u}) {
        FqField F = FqField::of_order(q);
        r.check(F.multiplicative_order(F.generator()) == q - 1, "generator order in F_" + std::to_string(q));
        for (int i = 0; i < 20; ++i) {
            FqPoly f = small_poly(F, rng, 1 + rng() % 5);
            r.check(poly_factor(f).expand(F) == f, "poly_factor round trip over F_" + std::to_string(q));
        }
    }
    return r;
}

inline SuiteResult localsym() {
    SuiteResult r{"localsym"};
    Rng rng(102);
    for (int i = 0; i < 300; ++i) {
        Rational x = small_rational(rng, 200), x2 = small_rational(rng, 200), y = small_rational(rng, 200);
        for (const auto& v : support_places({x, x2, y})) {
            r.check(hilbert(x * x2, y, v) == hilbert(x, y, v) * hilbert(x2, y, v), "hilbert bilinearity");
            if (x != 1) r.check(hilbert(x, 1 - x, v).is_plus(), "hilbert Steinberg relation");
        }
    }
    return r;
}

inline SuiteResult k2q() {
    SuiteResult r{"k2q"};
    Rng rng(103);
    for (int i = 0; i < 300; ++i) {
        Rational x = small_rational(rng, 1000000), y = small_rational(rng, 1000000);
        r.check(hilbert_reciprocity(x, y).holds, "Hilbert reciprocity at " + to_string(x) + ", " + to_string(y));
    }
    std::vector<Integer> primes;
    for (int p = 3; p < 100; p += 2)
        if (is_prime(p)) primes.push_back(p);
    for (const auto& p : primes)
        for (const auto& q : primes)
            if (p != q) r.check(quadratic_reciprocity(p, q).consistent, "quadratic reciprocity");
    for (int i = 0; i < 50; ++i) {
        std::map<Integer, Integer> odd;
        for (int k = 0; k < 3; ++k) {
            const Integer& p = primes[rng() % primes.size()];
            odd[p] = 1 + rng() % (p.convert_to<unsigned>() - 1);
        }
        K2QClass c = K2QClass::make(rng() % 2 ? Sign::minus() : Sign::plus(), odd);
        r.check(lambda_tate(lift(c)) == c, "lift round trip");
    }
    return r;
}

inline SuiteResult funcfield() {
    SuiteResult r{"funcfield"};
    Rng rng(104);
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 9u}) {
        FqField F = FqField::of_order(q);
        for (int i = 0; i < 30; ++i) {
            FqRatFunc f = small_ratfunc(F, rng, 4), g = small_ratfunc(F, rng, 4);
            r.check(weil_check(f, g).holds, "Weil reciprocity over F_" + std::to_string(q));
        }
        for (int i = 0; i < 10; ++i) {
            FqRatFunc f = small_ratfunc(F, rng, 3), g = small_ratfunc(F, rng, 3);
            K2FFClass c = decompose(FFSymbolExpr::symbol(f, g));
            r.check(decompose(lift_ff(c)) == c, "lift_ff round trip over F_" + std::to_string(q));
        }
    }
    for (unsigned q : {3u, 5u, 9u, 25u, 27u, 49u}) {
        FqField F = FqField::of_order(q);
        r.check(counting_bound(F, F.generator()).holds(), "counting bound over F_" + std::to_string(q));
        auto w = std::get<SteinbergWitness>(steinberg_witness(F, F.generator()));
        const FqElem z = F.generator();
        r.check(F.add(F.mul(z, F.mul(w.x, w.x)), F.mul(z, F.mul(w.y, w.y))) == F.one(), "Steinberg witness");
    }
    return r;
}

inline SuiteResult quadforms() {
    SuiteResult r{"quadforms"};
    Rng rng(105);
    for (int i = 0; i < 300; ++i) {
        Rational x = small_rational(rng, 1000), y = small_rational(rng, 1000);
        auto c = conic_solvable_Q(x, y);
        r.check(c.obstructions.size() % 2 == 0, "even number of conic obstructions");
        for (const auto& v : support_places({x, y}))
            r.check(pfister_hasse_identity(x, y, v).holds(), "Pfister/Hasse identity");
    }
    for (int i = 0; i < 30; ++i) {
        DiagForm f{small_rational(rng, 20), small_rational(rng, 20), small_rational(rng, 20)};
        Matrix g(3, std::vector<Rational>(3, Rational(0)));
        for (int k = 0; k < 3; ++k) g[k][k] = f[k];
        Matrix u = identity_matrix(3);
        u[0][1] = 1;
        u[2][0] = -1;
        r.check(equivalent_over_Q(f, diagonalize(multiply(multiply(transpose(u), g), u)).form), "diagonalization");
    }
    return r;
}

inline SuiteResult charpforms() {
    SuiteResult r{"charpforms"};
    Rng rng(106);
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        FqField F(p, 1);
        auto rnd = [&] {
            BiPoly n(F), d(F);
            while (n.is_zero() || d.is_zero()) {
                n = BiPoly(F), d = BiPoly(F);
                for (unsigned i = 0; i <= 2; ++i)
                    for (unsigned j = 0; i + j <= 2; ++j) {
                        n = n + BiPoly::monomial(F, F.from_index(rng() % p), i, j);
                        d = d + BiPoly::monomial(F, F.from_index(rng() % p), i, j);
                    }
            }
            return MultiRatFunc(n, d);
        };
        for (int i = 0; i < 10; ++i) {
            MultiRatFunc x = rnd(), y = rnd(), u = rnd();
            r.check(d1(d0(x)).is_zero(), "d1 d0 = 0");
            Form2 w = dlog2(x, y);
            r.check(nu_member(w), "dlog2 is a Cartier fixed point");
            r.check(cartier2(w * u.pow(p)) == w * u, "C inverts gamma");
        }
    }
    return r;
}

inline SuiteResult zeta() {
    SuiteResult r{"zeta"};
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 9u}) r.check(tate_identity(CurveFq::projective_line(q)).holds, "genus 0 identity");
    for (int p : {5, 7, 11, 13})
        for (int a = 0; a < p; ++a)
            for (int b = 0; b < p; ++b)
                if ((4 * a * a * a + 27 * b * b) % p != 0)
                    r.check(tate_identity(CurveFq::elliptic(p, a, b)).holds, "elliptic identity");
    r.check(birch_tate_Q().holds, "Birch-Tate for Q");
    return r;
}

inline SuiteResult regnum() {
    SuiteResult r{"regnum"};
    const CxRatFunc z = CxRatFunc::z(), one = CxRatFunc::constant({1, 0}), two = CxRatFunc::constant({2, 0});
    r.check(std::abs(loop_integral(z, two * z, Loop{0, 0.5}).value + std::log(2.0)) < 1e-9, "loop integral of (z, 2z)");
    r.check(std::abs(loop_integral(z, one - z, Loop{0, 0.5}).value) < 1e-9, "Steinberg loop integral");
    r.check(residue_check(z, two * z, {0, 0}).holds, "residue at 0");
    r.check(residue_check(z - one, z - one, {1, 0}).holds, "residue at 1");
    r.check(std::abs(bloch_wigner({0, 1}).value - 0.915965594177219015) < 1e-9, "Catalan's constant");
    Rng rng(108);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        Cx w(u(rng), u(rng));
        r.check(std::abs(bloch_wigner(w).value + bloch_wigner(std::conj(w)).value) < 1e-12, "D antisymmetry");
    }
    return r;
}

inline SuiteResult expr() {
    SuiteResult r{"expr"};
    Rng rng(109);
    for (unsigned q : {5u, 9u}) {
        FqField F = FqField::of_order(q);
        for (int i = 0; i < 50; ++i) {
            FqRatFunc f = small_ratfunc(F, rng, 3);
            r.check(parse_fq_ratfunc(to_string(f), F) == f, "F_q(T) round trip " + to_string(f));
        }
    }
    for (int i = 0; i < 50; ++i) {
        Rational x = small_rational(rng, 1000);
        r.check(parse_rational_expr(to_string(x)) == x, "rational round trip");
    }
    return r;
}

inline const std::vector<std::pair<std::string, std::function<SuiteResult()>>>& suites() {
    static const std::vector<std::pair<std::string, std::function<SuiteResult()>>> all{
        {"arith", arith},         {"localsym", localsym}, {"k2q", k2q},       {"funcfield", funcfield},
        {"quadforms", quadforms}, {"charpforms", charpforms}, {"zeta", zeta}, {"regnum", regnum},
        {"expr", expr},
    };
    return all;
}

}  // namespace selftest

/// Runs every module suite concurrently; results come back in a fixed order.
/// An exception inside a suite counts as a failure of that suite.
inline std::vector<SuiteResult> run_selftest() {
    std::vector<std::future<SuiteResult>> jobs;
    for (const auto& [name, fn] : selftest::suites())
        jobs.push_back(std::async(std::launch::async, [name = name, fn = fn] {
            try {
                return fn();
            } catch (const std::exception& e) {
                SuiteResult r{name};
                r.check(false, std::string("exception: ") + e.what());
                return r;
            }
        }));
    std::vector<SuiteResult> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

}  // namespace k2sym

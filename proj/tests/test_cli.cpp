#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "k2sym/cli.hpp"
#include "support/random.hpp"
#include "support/random_ff.hpp"

using namespace k2sym;
using cli::json;

namespace {

struct Outcome {
    int code;
    std::string text;
    json report;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out;
    const int code = cli::run(args, out);
    return {code, out.str(), json::parse(out.str())};
}

MultiRatFunc random_bivariate(const FqField& F, std::mt19937_64& rng) {
    auto poly = [&] {
        BiPoly f(F);
        for (unsigned i = 0; i <= 2; ++i)
            for (unsigned j = 0; i + j <= 2; ++j) f = f + BiPoly::monomial(F, F.from_index(rng() % F.order()), i, j);
        return f.is_zero() ? BiPoly::constant(F, F.one()) : f;
    };
    return MultiRatFunc(poly(), poly());
}

CxRatFunc random_cx(std::mt19937_64& rng) {
    auto coeff = [&] {
        return GaussQ{Rational(static_cast<int>(rng() % 7) - 3, 1 + rng() % 3), Rational(static_cast<int>(rng() % 5) - 2)};
    };
    auto poly = [&](unsigned deg) {
        std::vector<GaussQ> c(deg + 1);
        for (auto& x : c) x = coeff();
        if (c.back() == GaussQ{}) c.back() = {1, 0};
        return GaussQPoly(GaussQField{}, c);
    };
    return CxRatFunc(poly(rng() % 3), poly(rng() % 3));
}

}  // namespace

TEST(Cli, HilbertAtTwo) {
    auto o = run({"hilbert", "--place", "2", "2", "3"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.report["result"], -1);
    EXPECT_EQ(o.report["schema"], 1);
    EXPECT_EQ(o.report["status"], "ok");
}

TEST(Cli, ReciprocityCertificate) {
    auto o = run({"reciprocity", "3", "5"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.report["result"]["product"], 1);
    const json expected = json::parse(R"([{"place":"inf","value":1},{"place":"2","value":1},
                                          {"place":"3","value":-1},{"place":"5","value":-1}])");
    EXPECT_EQ(o.report["certificate"], expected);
}

TEST(Cli, BirchTate) {
    auto o = run({"birchtate"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.report["result"]["w2"], 24);
    EXPECT_EQ(o.report["result"]["zeta"], "-1/12");
    EXPECT_EQ(o.report["result"]["product"], 2);
}

TEST(Cli, ParseErrorOffsets) {
    try {
        parse_expr("1 +");
        FAIL() << "expected a parse error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.offset(), 3u);
    }
    auto o = run({"hilbert", "1 +", "3"});
    EXPECT_EQ(o.code, 2);
    EXPECT_EQ(o.report["status"], "error");
    EXPECT_EQ(o.report["error"]["offset"], 3);
    for (const auto& [src, at] : std::vector<std::pair<std::string, std::size_t>>{
             {"(1", 2}, {"2 * * 3", 4}, {"T^", 2}, {"3)", 1}, {"", 0}, {"2^99999", 2}})
        try {
            parse_expr(src);
            ADD_FAILURE() << src;
        } catch (const parse_error& e) {
            EXPECT_EQ(e.offset(), at) << src;
        }
}

TEST(Cli, DomainExamples) {
    const FqField F5 = FqField::of_order(5);
    EXPECT_EQ(parse_fq_poly("T^2 - 1", F5), FqPoly(F5, {F5.from_int(-1), F5.zero(), F5.one()}));
    const FqRatFunc f = parse_fq_ratfunc("(T^2+1)/(2*T)", F5);
    EXPECT_EQ(f.den(), FqPoly::x(F5));
    EXPECT_EQ(f.num(), FqPoly(F5, {F5.from_int(3), F5.zero(), F5.from_int(3)}));
    EXPECT_EQ(parse_rational_expr("\xE2\x88\x92" "3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational_expr(" ( 2 ^ 3 - 1 ) / 14 "), Rational(1, 2));
    EXPECT_EQ(parse_gauss("(1+i)^2"), (GaussQ{0, 2}));
    EXPECT_THROW(parse_rational_expr("1/(2-2)"), parse_error);
    EXPECT_THROW(parse_fq_ratfunc("x+1", F5), parse_error);
    EXPECT_THROW(parse_fq_ratfunc("a", F5), parse_error);  // a is only the generator of a proper extension
    EXPECT_THROW(parse_fq_ratfunc("1/(T-T)", F5), parse_error);
    EXPECT_THROW(parse_fq_poly("1/T", F5), invalid_input);
    EXPECT_THROW(parse_bivariate("s+t", FqField::of_order(9)), invalid_input);
}

TEST(Cli, RoundTripCorpus) {
    std::mt19937_64 rng(2024);
    std::size_t n = 0;
    for (int i = 0; i < 50; ++i, ++n) {
        const Rational x = testing_support::random_rational(rng, 1000000);
        ASSERT_EQ(parse_rational_expr(to_string(x)), x);
    }
    for (unsigned q : {2u, 5u, 9u, 25u, 27u})
        for (int i = 0; i < 10; ++i, ++n) {
            const FqField F = FqField::of_order(q);
            const FqRatFunc f = testing_support::random_ratfunc(F, rng, 4);
            ASSERT_EQ(parse_fq_ratfunc(to_string(f), F), f) << to_string(f);
        }
    for (unsigned p : {2u, 3u, 5u, 7u, 11u})
        for (int i = 0; i < 10; ++i, ++n) {
            const FqField F = FqField::of_order(p);
            const MultiRatFunc f = random_bivariate(F, rng);
            ASSERT_EQ(parse_bivariate(to_string(f), F), f) << to_string(f);
        }
    for (int i = 0; i < 50; ++i, ++n) {
        const CxRatFunc f = random_cx(rng);
        ASSERT_EQ(parse_cx_ratfunc(to_string(f)), f) << to_string(f);
    }
    EXPECT_EQ(n, 200u);
}

TEST(Cli, PrintedSyntaxTreesReparse) {
    for (const char* src : {"1+2*3", "-T^2-(T+1)/T", "(s*t)^3/(1-s)", "2*-3", "((z))", "i*z^2 - 1/2"}) {
        const std::string once = to_string(parse_expr(src));
        EXPECT_EQ(to_string(parse_expr(once)), once) << src;
    }
}

TEST(Cli, Deterministic) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"reciprocity", "-6/35", "10"},
             {"lift", "--two", "-1", "7:3", "11:2"},
             {"weil", "--q", "9", "T^2+a", "(T+1)/(T^3-a)"},
             {"residue", "z*(z-1)", "2*z+i", "0"},
             {"qform", "--gram", "1,2;2,1"}}) {
        auto a = run(args), b = run(args);
        EXPECT_EQ(a.text, b.text);
        EXPECT_EQ(a.code, 0) << a.text;
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"hilbert", "0", "3"}).code, 2);
    EXPECT_EQ(run({"hilbert", "--place", "4", "2", "3"}).code, 2);
    EXPECT_EQ(run({"weil", "--q", "6", "T", "T"}).code, 2);
    EXPECT_EQ(run({"quadrec", "3", "3"}).code, 2);
    EXPECT_EQ(run({"cartier", "--p", "3", "--degree", "1", "s", "s"}).code, 2);  // not closed
    EXPECT_EQ(run({"dform", "--p", "3", "--op", "d9", "s"}).code, 2);
    auto bad = run({"residue", "z", "z", "5"});
    EXPECT_EQ(bad.code, 2);
    EXPECT_EQ(bad.report["error"]["kind"], "invalid_input");
    // A failed property maps to "failed"; no correct input produces one.
    cli::Report r;
    r.holds = false;
    EXPECT_EQ(cli::to_json(r)["status"], "failed");
}

TEST(Cli, NumberEncoding) {
    EXPECT_EQ(cli::num(Integer(-7)), -7);
    EXPECT_EQ(cli::num(Integer("123456789012345678901234567890")), "123456789012345678901234567890");
    EXPECT_EQ(cli::num(Rational(6, 3)), 2);
    EXPECT_EQ(cli::num(Rational(-3, 6)), "-1/2");
}

TEST(Cli, MooreKernelAndNonKernel) {
    auto in = run({"moore", "inf:-1", "3:2"});
    EXPECT_EQ(in.code, 0);
    EXPECT_EQ(in.report["result"]["in_kernel"], true);
    EXPECT_FALSE(in.report["result"]["lift"].empty());
    auto out = run({"moore", "5:2"});
    EXPECT_EQ(out.code, 0);
    EXPECT_EQ(out.report["result"]["in_kernel"], false);
    EXPECT_EQ(run({"moore", "5:0"}).code, 2);
}

TEST(Cli, EveryCommandAnswers) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"hilbert", "-1", "-1"},
             {"tame", "--place", "3", "9", "6"},
             {"tame", "--q", "9", "--place", "inf", "a*T", "T-1"},
             {"conic", "1", "1"},
             {"decompose", "3", "5", "-1", "-1"},
             {"quadrec", "5", "13"},
             {"ffdecompose", "--q", "3", "T", "T+1"},
             {"fflift", "--q", "5", "T^2+2:T"},
             {"steinberg", "--q", "9", "--m", "2", "--n", "3"},
             {"steinberg", "--q", "8"},
             {"qform", "1", "1", "-1", "--against", "1,-1,-1"},
             {"quaternion", "-1", "3"},
             {"pfister", "2", "5"},
             {"dform", "--p", "3", "--op", "dlog2", "s", "t+1"},
             {"cartier", "--p", "3", "--degree", "2", "s^2*t^2"},
             {"numember", "--p", "3", "--degree", "2", "1/(s*t)"},
             {"zeta", "--q", "7", "--elliptic", "1", "1"},
             {"tateid", "--q", "11", "--elliptic", "1", "-3"},
             {"dilog", "1/2+i"}}) {
        auto o = run(args);
        EXPECT_EQ(o.code, 0) << args[0] << ": " << o.text;
        EXPECT_EQ(o.report["command"], args[0]);
    }
    auto w = run({"numember", "--p", "3", "--degree", "2", "1/(s*t)"});
    EXPECT_EQ(w.report["result"]["member"], true);
    auto c = run({"cartier", "--p", "3", "--degree", "2", "s^2*t^2"});
    EXPECT_EQ(c.report["result"]["cartier"]["dsdt"], "1");
}

TEST(Cli, Selftest) {
    auto o = run({"selftest"});
    EXPECT_EQ(o.code, 0) << o.text;
    EXPECT_EQ(o.report["result"]["passed"], true);
    EXPECT_EQ(o.report["certificate"].size(), 9u);
}

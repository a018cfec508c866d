#pragma once

// Command-line front end. Needs CLI11.hpp and json.hpp on the include path.

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "k2sym/charpforms.hpp"
#include "k2sym/expr.hpp"
#include "k2sym/funcfield.hpp"
#include "k2sym/k2q.hpp"
#include "k2sym/localsym.hpp"
#include "k2sym/quadforms.hpp"
#include "k2sym/regnum.hpp"
#include "k2sym/selftest.hpp"
#include "k2sym/zeta.hpp"

namespace k2sym::cli {

using json = nlohmann::json;

inline constexpr int kSchema = 1;
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitFailed = 3;

// ---------------------------------------------------------------- encoding

/// Integers that fit in int64 become JSON numbers, larger ones decimal strings.
inline json num(const Integer& n) {
    static const Integer lo = std::numeric_limits<std::int64_t>::min(), hi = std::numeric_limits<std::int64_t>::max();
    if (n >= lo && n <= hi) return n.convert_to<std::int64_t>();
    return n.str();
}

/// Integral rationals as numbers, the rest as "a/b".
inline json num(const Rational& r) {
    if (denominator(r) == 1) return num(numerator(r));
    return to_string(r);
}

inline json sign(Sign s) { return s.value(); }

inline json place_sign(const PlaceSign& f) { return {{"place", to_string(f.place)}, {"value", sign(f.value)}}; }

inline json symbols(const QSymbolExpr& e) {
    json out = json::array();
    for (const auto& t : e.terms())
        out.push_back({{"x", num(t.x)}, {"y", num(t.y)}, {"multiplicity", num(t.multiplicity)}});
    return out;
}

inline json symbols(const FFSymbolExpr& e) {
    json out = json::array();
    for (const auto& t : e.terms())
        out.push_back({{"x", to_string(t.x)}, {"y", to_string(t.y)}, {"multiplicity", num(t.multiplicity)}});
    return out;
}

inline json k2q_class(const K2QClass& c) {
    json odd = json::object();
    for (const auto& [p, a] : c.odd_part()) odd[p.str()] = num(a);
    return {{"two", sign(c.two_slot())}, {"odd", odd}};
}

inline json k2ff_class(const K2FFClass& c) {
    json out = json::array();
    for (const auto& [pi, a] : c.components()) out.push_back({{"place", to_string(pi)}, {"value", to_string(a)}});
    return out;
}

inline json form(const Form1& w) { return {{"ds", to_string(w.f)}, {"dt", to_string(w.g)}}; }
inline json form(const Form2& w) { return {{"dsdt", to_string(w.h)}}; }

inline json gauss(const GaussQ& a) { return to_string(a); }

// ---------------------------------------------------------------- decoding

inline Rational rational_arg(const std::string& s, const char* what) {
    try {
        return parse_rational_expr(s);
    } catch (const parse_error& e) {
        throw parse_error(e.offset(), e.reason() + " in " + what + " '" + s + "'");
    }
}

inline Integer integer_arg(const std::string& s, const char* what) {
    Rational r = rational_arg(s, what);
    require(denominator(r) == 1, std::string(what) + " must be an integer, got " + s);
    return numerator(r);
}

inline PlaceQ place_q(const std::string& raw) {
    const std::string s = normalize_minus(raw);
    if (s == "inf" || s == "\xE2\x88\x9E" || s == "real") return PlaceQ::real();
    return PlaceQ::prime(integer_arg(s, "place"));
}

inline FqField field_arg(const std::string& q) {
    const Integer n = integer_arg(q, "--q");
    require(n >= 2 && n <= Integer(FqField::kMaxOrder), "--q must be a prime power at most 2^22");
    return FqField::of_order(n);
}

inline FqField prime_field_arg(const std::string& p) {
    FqField F = field_arg(p);
    require(F.degree() == 1, "--p must be prime");
    return F;
}

inline PlaceFq place_fq(const std::string& raw, const FqField& F) {
    const std::string s = normalize_minus(raw);
    if (s == "inf" || s == "\xE2\x88\x9E") return PlaceFq::infinity(F);
    return PlaceFq::finite(parse_fq_poly(s, F));
}

/// Splits "key:value" at the last colon.
inline std::pair<std::string, std::string> key_value(const std::string& s) {
    const auto at = s.rfind(':');
    require(at != std::string::npos && at > 0 && at + 1 < s.size(), "expected key:value, got '" + s + "'");
    return {s.substr(0, at), s.substr(at + 1)};
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline void require_count(const std::vector<std::string>& args, std::size_t n, const char* usage) {
    require(args.size() == n, std::string("expected ") + usage);
}

// ---------------------------------------------------------------- report

struct Report {
    std::string command;
    json inputs = json::object();
    json result;
    json certificate = json::array();
    /// False when a checked property failed; maps to exit code 3.
    bool holds = true;
};

inline json to_json(const Report& r) {
    return {{"schema", kSchema},         {"command", r.command},         {"inputs", r.inputs},
            {"result", r.result},        {"certificate", r.certificate}, {"status", r.holds ? "ok" : "failed"}};
}

inline json error_json(const std::string& command, const char* kind, const std::string& message,
                       std::optional<std::size_t> offset = std::nullopt) {
    json err = {{"kind", kind}, {"message", message}};
    if (offset) err["offset"] = *offset;
    return {{"schema", kSchema},
            {"command", command.empty() ? json(nullptr) : json(command)},
            {"status", "error"},
            {"error", err}};
}

/// Options shared by all subcommands; each subcommand binds the ones it uses.
struct Options {
    std::vector<std::string> args;
    std::string place, q, two = "1", against, gram, op, p;
    unsigned degree = 0;
    std::string m, n;
    std::vector<std::string> elliptic;
};

// ---------------------------------------------------------------- commands

namespace cmd {

inline void hilbert(const Options& o, Report& r) {
    require_count(o.args, 2, "two arguments: x y");
    const Rational x = rational_arg(o.args[0], "x"), y = rational_arg(o.args[1], "y");
    detail::require_nonzero(x, y, "hilbert");
    r.inputs = {{"x", num(x)}, {"y", num(y)}};
    if (!o.place.empty()) {
        const PlaceQ v = place_q(o.place);
        r.inputs["place"] = to_string(v);
        const Sign s = hilbert(x, y, v);
        r.result = sign(s);
        r.certificate.push_back({{"place", to_string(v)}, {"value", sign(s)}, {"solvable", s.is_plus()}});
        return;
    }
    json all = json::array();
    for (const auto& v : support_places({x, y})) all.push_back(place_sign({v, hilbert(x, y, v)}));
    r.result = all;
}

inline void tame(const Options& o, Report& r) {
    require_count(o.args, 2, "two arguments: f g");
    require(!o.place.empty(), "tame needs --place");
    if (o.q.empty()) {
        const Rational x = rational_arg(o.args[0], "x"), y = rational_arg(o.args[1], "y");
        detail::require_nonzero(x, y, "tame");
        const PlaceQ v = place_q(o.place);
        require(!v.is_real(), "tame: the real place has no residue field");
        r.inputs = {{"x", num(x)}, {"y", num(y)}, {"place", to_string(v)}};
        r.result = num(k2sym::tame(x, y, v.p()));
        return;
    }
    const FqField F = field_arg(o.q);
    const FqRatFunc f = parse_fq_ratfunc(o.args[0], F), g = parse_fq_ratfunc(o.args[1], F);
    const PlaceFq v = place_fq(o.place, F);
    r.inputs = {{"q", F.order()}, {"f", to_string(f)}, {"g", to_string(g)}, {"place", to_string(v)}};
    const FqPoly t = tame_ff(f, g, v);
    r.result = to_string(t);
    r.certificate.push_back({{"place", to_string(v)},
                             {"valuation_f", ff_valuation(f, v)},
                             {"valuation_g", ff_valuation(g, v)},
                             {"norm", F.to_string(residue_norm(t, v))}});
}

inline void conic(const Options& o, Report& r) {
    require_count(o.args, 2, "two arguments: x y");
    const Rational x = rational_arg(o.args[0], "x"), y = rational_arg(o.args[1], "y");
    r.inputs = {{"x", num(x)}, {"y", num(y)}};
    const ConicCertificate c = conic_solvable_Q(x, y);
    json obs = json::array();
    for (const auto& v : c.obstructions) obs.push_back(to_string(v));
    r.result = {{"solvable", c.solvable}, {"obstructions", obs}};
    if (c.point) r.result["point"] = {num(c.point->first), num(c.point->second)};
    for (const auto& f : c.places) r.certificate.push_back(place_sign(f));
}

inline QSymbolExpr symbol_pairs(const std::vector<std::string>& args) {
    require(!args.empty() && args.size() % 2 == 0, "expected pairs x1 y1 x2 y2 ...");
    QSymbolExpr e;
    for (std::size_t i = 0; i < args.size(); i += 2) {
        const Rational x = rational_arg(args[i], "x"), y = rational_arg(args[i + 1], "y");
        detail::require_nonzero(x, y, "decompose");
        e.add(x, y);
    }
    return e;
}

inline void decompose(const Options& o, Report& r) {
    const QSymbolExpr e = symbol_pairs(o.args);
    r.inputs = {{"symbols", symbols(e)}};
    const K2QClass c = lambda_tate(e);
    r.result = k2q_class(c);
    for (const auto& t : e.terms()) r.certificate.push_back({{"x", num(t.x)}, {"y", num(t.y)}, {"image", k2q_class(lambda_symbol(t.x, t.y))}});
}

inline void lift(const Options& o, Report& r) {
    std::map<Integer, Integer> odd;
    for (const auto& a : o.args) {
        const auto [p, v] = key_value(a);
        odd[integer_arg(p, "prime")] = integer_arg(v, "value");
    }
    const K2QClass target = K2QClass::make(Sign::of(integer_arg(o.two, "--two").convert_to<int>()), odd);
    r.inputs = {{"target", k2q_class(target)}};
    const QSymbolExpr e = k2sym::lift(target);
    r.result = symbols(e);
    const K2QClass back = lambda_tate(e);
    r.certificate.push_back({{"check", "lambda_tate(lift) = target"}, {"image", k2q_class(back)}, {"holds", back == target}});
    r.holds = back == target;
}

inline void reciprocity(const Options& o, Report& r) {
    require_count(o.args, 2, "two arguments: x y");
    const Rational x = rational_arg(o.args[0], "x"), y = rational_arg(o.args[1], "y");
    r.inputs = {{"x", num(x)}, {"y", num(y)}};
    const ReciprocityResult rec = hilbert_reciprocity(x, y);
    Sign prod;
    for (const auto& f : rec.factors) {
        prod *= f.value;
        r.certificate.push_back(place_sign(f));
    }
    r.result = {{"product", sign(prod)}};
    r.holds = rec.holds;
}

inline void quadrec(const Options& o, Report& r) {
    require_count(o.args, 2, "two odd primes: p q");
    const Integer p = integer_arg(o.args[0], "p"), q = integer_arg(o.args[1], "q");
    r.inputs = {{"p", num(p)}, {"q", num(q)}};
    const QuadRecRecord rec = quadratic_reciprocity(p, q);
    r.result = {{"legendre_pq", rec.legendre_pq},
                {"legendre_qp", rec.legendre_qp},
                {"product", rec.product},
                {"exponent", num(rec.exponent)}};
    for (const auto& f : rec.factors) r.certificate.push_back(place_sign(f));
    r.holds = rec.consistent;
}

inline void moore(const Options& o, Report& r) {
    MooreVector m;
    for (const auto& a : o.args) {
        const auto [pl, val] = key_value(a);
        const PlaceQ v = place_q(pl);
        require(!m.count(v), "moore: place " + to_string(v) + " given twice");
        Integer x = integer_arg(val, "value");
        if (v.is_odd_prime()) x = mod(x, v.p());
        moore_set(m, {v, x});
    }
    validate(m);
    json in = json::array();
    for (const auto& [v, mu] : m) in.push_back({{"place", to_string(v)}, {"value", num(mu.value)}});
    r.inputs = {{"vector", in}};
    const Sign s = moore_sum(m);
    r.result = {{"sum", sign(s)}, {"in_kernel", s.is_plus()}};
    if (s.is_minus()) return;
    const MooreLiftCertificate cert = moore_lift(m);
    r.result["lift"] = symbols(cert.expr);
    for (const auto& c : cert.checks)
        r.certificate.push_back({{"place", to_string(c.place)},
                                 {"target", num(c.target.value)},
                                 {"achieved", num(c.achieved.value)}});
}

inline void weil(const Options& o, Report& r) {
    require_count(o.args, 2, "two rational functions: f g");
    require(!o.q.empty(), "weil needs --q");
    const FqField F = field_arg(o.q);
    const FqRatFunc f = parse_fq_ratfunc(o.args[0], F), g = parse_fq_ratfunc(o.args[1], F);
    detail::require_nonzero(f, "weil");
    detail::require_nonzero(g, "weil");
    r.inputs = {{"q", F.order()}, {"f", to_string(f)}, {"g", to_string(g)}};
    const WeilResult w = weil_check(f, g);
    FqElem prod = F.one();
    for (const auto& fac : w.factors) {
        prod = F.mul(prod, fac.norm);
        r.certificate.push_back(
            {{"place", to_string(fac.place)}, {"tame", to_string(fac.tame)}, {"norm", F.to_string(fac.norm)}});
    }
    r.result = {{"product", F.to_string(prod)}};
    r.holds = w.holds;
}

inline void ffdecompose(const Options& o, Report& r) {
    require(!o.q.empty(), "ffdecompose needs --q");
    require(!o.args.empty() && o.args.size() % 2 == 0, "expected pairs f1 g1 f2 g2 ...");
    const FqField F = field_arg(o.q);
    FFSymbolExpr e;
    for (std::size_t i = 0; i < o.args.size(); i += 2) {
        FqRatFunc f = parse_fq_ratfunc(o.args[i], F), g = parse_fq_ratfunc(o.args[i + 1], F);
        detail::require_nonzero(f, "ffdecompose");
        detail::require_nonzero(g, "ffdecompose");
        e.add(f, g);
    }
    r.inputs = {{"q", F.order()}, {"symbols", symbols(e)}};
    r.result = k2ff_class(k2sym::decompose(e));
    const Retraction ret = retraction(e);
    for (std::size_t i = 0; i < ret.symbols.size(); ++i)
        r.certificate.push_back({{"constant_symbol", {F.to_string(ret.symbols[i].a), F.to_string(ret.symbols[i].b)}},
                                 {"steps", ret.traces[i].steps}});
}

inline void fflift(const Options& o, Report& r) {
    require(!o.q.empty(), "fflift needs --q");
    const FqField F = field_arg(o.q);
    std::map<FqPoly, FqPoly> comps;
    for (const auto& a : o.args) {
        const auto [pi, v] = key_value(a);
        comps.insert_or_assign(parse_fq_poly(pi, F), parse_fq_poly(v, F));
    }
    const K2FFClass target = K2FFClass::make(comps);
    r.inputs = {{"q", F.order()}, {"target", k2ff_class(target)}};
    const FFSymbolExpr e = lift_ff(target);
    r.result = symbols(e);
    const K2FFClass back = k2sym::decompose(e);
    r.certificate.push_back({{"check", "decompose(lift) = target"}, {"image", k2ff_class(back)}, {"holds", back == target}});
    r.holds = back == target;
}

inline void steinberg(const Options& o, Report& r) {
    require(!o.q.empty(), "steinberg needs --q");
    require(o.args.empty(), "steinberg takes no positional arguments");
    const FqField F = field_arg(o.q);
    const FqElem z = F.generator();
    r.inputs = {{"q", F.order()}};
    const CountingBound cb = counting_bound(F, z);
    r.result = {{"zeta", F.to_string(z)}};
    const auto w = steinberg_witness(F, z);
    if (std::holds_alternative<Char2Marker>(w)) {
        r.result["char2"] = true;
        r.result["identity"] = "{z, -z} = {z, z} since -1 = 1";
    } else {
        const auto& sw = std::get<SteinbergWitness>(w);
        r.result["char2"] = false;
        r.result["witness"] = {{"x", F.to_string(sw.x)}, {"y", F.to_string(sw.y)}};
        const bool ok = F.add(F.mul(z, F.mul(sw.x, sw.x)), F.mul(z, F.mul(sw.y, sw.y))) == F.one();
        r.certificate.push_back({{"check", "z x^2 + z y^2 = 1"}, {"holds", ok}});
        r.holds = ok;
    }
    r.certificate.push_back({{"check", "counting bound"},
                             {"scaled_squares", cb.scaled_squares},
                             {"shifted_squares", cb.shifted_squares},
                             {"q", cb.q},
                             {"holds", cb.holds()}});
    if (F.characteristic() != 2) r.holds = r.holds && cb.holds();
    if (!o.m.empty() || !o.n.empty()) {
        require(!o.m.empty() && !o.n.empty(), "steinberg: --m and --n go together");
        const K2FqTrace t = k2_fq_reduce(F, integer_arg(o.m, "--m"), integer_arg(o.n, "--n"));
        r.inputs["m"] = num(t.m);
        r.inputs["n"] = num(t.n);
        r.result["trace"] = t.steps;
    }
}

inline json invariants_json(const DiagForm& f) {
    const FormInvariants inv = invariants(f);
    json hasse = json::array();
    for (const auto& [v, s] : inv.hasse) hasse.push_back(place_sign({v, s}));
    return {{"rank", inv.rank}, {"disc", num(inv.disc)}, {"signature", {inv.positives, inv.negatives}}, {"hasse", hasse}};
}

inline json form_json(const DiagForm& f) {
    json out = json::array();
    for (const auto& a : f) out.push_back(num(a));
    return out;
}

inline void qform(const Options& o, Report& r) {
    DiagForm f;
    if (!o.gram.empty()) {
        require(o.args.empty(), "qform: give either entries or --gram, not both");
        Matrix g;
        for (const auto& row : split(o.gram, ';')) {
            g.emplace_back();
            for (const auto& e : split(row, ',')) g.back().push_back(rational_arg(e, "Gram entry"));
        }
        const Diagonalization d = diagonalize(g);
        json gj = json::array(), basis = json::array();
        for (const auto& row : g) gj.push_back(form_json(row));
        for (const auto& row : d.basis) basis.push_back(form_json(row));
        r.inputs["gram"] = gj;
        r.certificate.push_back({{"check", "U^T G U = diag(form)"}, {"basis", basis}});
        f = d.form;
    } else {
        require(!o.args.empty(), "qform needs diagonal entries or --gram");
        for (const auto& a : o.args) f.push_back(rational_arg(a, "entry"));
        r.inputs["form"] = form_json(f);
    }
    r.result = {{"form", form_json(f)}, {"invariants", invariants_json(f)}};
    if (!o.against.empty()) {
        DiagForm h;
        for (const auto& a : split(o.against, ',')) h.push_back(rational_arg(a, "entry"));
        r.inputs["against"] = form_json(h);
        r.result["equivalent"] = equivalent_over_Q(f, h);
        r.certificate.push_back({{"against_invariants", invariants_json(h)}});
    }
}

inline void quaternion(const Options& o, Report& r) {
    require_count(o.args, 2, "two arguments: a b");
    const Rational a = rational_arg(o.args[0], "a"), b = rational_arg(o.args[1], "b");
    r.inputs = {{"a", num(a)}, {"b", num(b)}};
    json ram = json::array();
    for (const auto& v : quaternion_ramification(a, b)) ram.push_back(to_string(v));
    r.result = {{"splits", ram.empty()}, {"ramified", ram}};
    for (const auto& v : support_places({a, b})) r.certificate.push_back(place_sign({v, hilbert(a, b, v)}));
    r.holds = ram.size() % 2 == 0;
}

inline void pfister(const Options& o, Report& r) {
    require_count(o.args, 2, "two arguments: x y");
    const Rational x = rational_arg(o.args[0], "x"), y = rational_arg(o.args[1], "y");
    detail::require_nonzero(x, y, "pfister");
    r.inputs = {{"x", num(x)}, {"y", num(y)}};
    r.result = {{"form", form_json({Rational(1), -x, -y, x * y})}};
    bool all = true;
    for (const auto& v : support_places({x, y})) {
        const PfisterCheck c = pfister_hasse_identity(x, y, v);
        all = all && c.holds();
        r.certificate.push_back({{"place", to_string(v)}, {"lhs", sign(c.lhs)}, {"rhs", sign(c.rhs)}, {"holds", c.holds()}});
    }
    r.result["holds"] = all;
    r.holds = all;
}

inline FqField char_p_field(const Options& o) {
    require(!o.p.empty(), "--p is required");
    return prime_field_arg(o.p);
}

inline void dform(const Options& o, Report& r) {
    const FqField F = char_p_field(o);
    std::vector<MultiRatFunc> a;
    for (const auto& s : o.args) a.push_back(parse_bivariate(s, F));
    json in = json::array();
    for (const auto& x : a) in.push_back(to_string(x));
    r.inputs = {{"p", F.order()}, {"op", o.op}, {"args", in}};
    if (o.op == "d0") {
        require(a.size() == 1, "d0 takes one function");
        r.result = form(d0(a[0]));
    } else if (o.op == "d1") {
        require(a.size() == 2, "d1 takes the two coefficients of f ds + g dt");
        r.result = form(d1(Form1{a[0], a[1]}));
    } else if (o.op == "dlog1") {
        require(a.size() == 1, "dlog1 takes one function");
        r.result = form(dlog1(a[0]));
    } else if (o.op == "dlog2") {
        require(a.size() == 2, "dlog2 takes two functions");
        r.result = form(dlog2(a[0], a[1]));
    } else {
        throw invalid_input("unknown --op '" + o.op + "', expected d0, d1, dlog1 or dlog2");
    }
}

inline void cartier(const Options& o, Report& r) {
    const FqField F = char_p_field(o);
    std::vector<MultiRatFunc> a;
    for (const auto& s : o.args) a.push_back(parse_bivariate(s, F));
    r.inputs = {{"p", F.order()}, {"degree", o.degree}};
    if (o.degree == 2) {
        require(a.size() == 1, "a 2-form is given by one coefficient h of h ds^dt");
        const Form2 w{a[0]};
        r.inputs["form"] = form(w);
        const Form2 c = cartier2(w);
        r.result = {{"cartier", form(c)}, {"exact", c.is_zero()}};
    } else if (o.degree == 1) {
        require(a.size() == 2, "a 1-form is given by f g for f ds + g dt");
        const Form1 w{a[0], a[1]};
        r.inputs["form"] = form(w);
        const Form1 c = cartier1(w);
        r.result = {{"cartier", form(c)}, {"exact", c.is_zero()}};
    } else {
        throw invalid_input("cartier: --degree must be 1 or 2");
    }
}

inline void numember(const Options& o, Report& r) {
    const FqField F = char_p_field(o);
    std::vector<MultiRatFunc> a;
    for (const auto& s : o.args) a.push_back(parse_bivariate(s, F));
    r.inputs = {{"p", F.order()}, {"degree", o.degree}};
    if (o.degree == 0) {
        require(a.size() == 1, "a 0-form is one function");
        r.inputs["form"] = to_string(a[0]);
        r.result = {{"member", nu_member(Form0{a[0]})}};
    } else if (o.degree == 1) {
        require(a.size() == 2, "a 1-form is given by f g for f ds + g dt");
        const Form1 w{a[0], a[1]};
        r.inputs["form"] = form(w);
        const bool closed = is_closed(w);
        r.result = {{"closed", closed}, {"member", closed && nu_member(w)}};
        if (closed) r.certificate.push_back({{"cartier", form(cartier1(w))}});
    } else if (o.degree == 2) {
        require(a.size() == 1, "a 2-form is given by one coefficient h of h ds^dt");
        const Form2 w{a[0]};
        r.inputs["form"] = form(w);
        const Form2 c = cartier2(w);
        r.result = {{"member", c == w}};
        r.certificate.push_back({{"cartier", form(c)}});
    } else {
        throw invalid_input("numember: --degree must be 0, 1 or 2");
    }
}

inline CurveFq curve_arg(const Options& o, Report& r) {
    require(!o.q.empty(), "--q is required");
    const Integer q = integer_arg(o.q, "--q");
    r.inputs = {{"q", num(q)}};
    if (o.elliptic.empty()) return CurveFq::projective_line(q);
    const Integer a = integer_arg(o.elliptic.at(0), "a"), b = integer_arg(o.elliptic.at(1), "b");
    CurveFq c = CurveFq::elliptic(q, a, b);
    r.inputs["elliptic"] = {num(c.elliptic_data().a), num(c.elliptic_data().b)};
    return c;
}

inline void zeta(const Options& o, Report& r) {
    const CurveFq c = curve_arg(o, r);
    const LPoly L = l_polynomial(c);
    json coeffs = json::array();
    for (const auto& x : L.coefficients()) coeffs.push_back(num(x));
    r.result = {{"curve", to_string(c)},
                {"genus", c.genus()},
                {"L", to_string(L)},
                {"L_coefficients", coeffs},
                {"zeta_minus1", num(zeta_minus1(c))}};
    if (!c.is_line()) {
        r.result["trace"] = num(L.a);
        r.certificate.push_back({{"N1", num(count_points(c, 1))}, {"N2", num(count_points(c, 2))}});
    }
}

inline void tateid(const Options& o, Report& r) {
    const CurveFq c = curve_arg(o, r);
    const TateIdentityRecord t = tate_identity(c);
    r.result = {{"genus", t.genus}, {"zeta_minus1", num(t.zeta)}, {"lhs", num(t.lhs)}, {"rhs", num(t.rhs)}, {"holds", t.holds}};
    if (t.genus == 0) r.result["coker_order"] = num(t.coker_order);
    else r.result["trace"] = num(t.a);
    r.certificate.push_back({{"statement", t.statement}});
    r.holds = t.holds;
}

inline void birchtate(const Options& o, Report& r) {
    require(o.args.empty(), "birchtate takes no arguments");
    const BirchTateRecord b = birch_tate_Q();
    r.result = {{"w2", num(b.w2)}, {"zeta", num(b.zeta)}, {"product", num(b.product)}};
    for (int m : {24, 48}) {
        auto w = w2_witness(m);
        json e = {{"m", m}, {"trivial_action", !w.has_value()}};
        if (w) e["witness"] = num(*w);
        r.certificate.push_back(e);
    }
    r.certificate.push_back({{"expected_kernel_order", num(b.expected)}, {"holds", b.holds}});
    r.holds = b.holds;
}

inline void dilog(const Options& o, Report& r) {
    require_count(o.args, 1, "one argument: z in Q(i)");
    const GaussQ z = parse_gauss(o.args[0]);
    r.inputs = {{"z", gauss(z)}};
    const DilogValue d = bloch_wigner(to_cx(z));
    r.result = {{"value", d.value}, {"boundary", d.boundary}};
}

inline void residue(const Options& o, Report& r) {
    require_count(o.args, 3, "three arguments: f g point");
    const CxRatFunc f = parse_cx_ratfunc(o.args[0]), g = parse_cx_ratfunc(o.args[1]);
    const GaussQ s = parse_gauss(o.args[2]);
    r.inputs = {{"f", to_string(f)}, {"g", to_string(g)}, {"point", gauss(s)}};
    const ResidueRecord rec = residue_check(f, g, s);
    r.result = {{"order_f", rec.order_f},
                {"order_g", rec.order_g},
                {"tame", gauss(rec.tame)},
                {"log_abs_tame", rec.log_abs_tame},
                {"integral", rec.integral.value},
                {"holds", rec.holds}};
    r.certificate.push_back({{"radius", rec.radius},
                             {"samples", rec.integral.samples},
                             {"quadrature_tolerance", rec.integral.tolerance},
                             {"residue_tolerance", kResidueTolerance}});
    r.holds = rec.holds;
}

inline void selftest(const Options& o, Report& r) {
    require(o.args.empty(), "selftest takes no arguments");
    bool ok = true;
    std::size_t checks = 0;
    for (const auto& s : run_selftest()) {
        json e = {{"module", s.module}, {"checks", s.checks}, {"failures", s.failures}};
        if (!s.passed()) e["first_failure"] = s.first_failure;
        r.certificate.push_back(e);
        ok = ok && s.passed();
        checks += s.checks;
    }
    r.result = {{"passed", ok}, {"checks", checks}};
    r.holds = ok;
}

}  // namespace cmd

// ---------------------------------------------------------------- driver

struct Command {
    const char* name;
    const char* help;
    void (*run)(const Options&, Report&);
};

inline const std::vector<Command>& commands() {
    static const std::vector<Command> all{
        {"hilbert", "Hilbert symbol (x, y)_v; all support places without --place", cmd::hilbert},
        {"tame", "tame symbol over Q (--place p) or F_q(T) (--q, --place poly|inf)", cmd::tame},
        {"conic", "solvability of x R^2 + y S^2 = 1 over Q", cmd::conic},
        {"decompose", "image of a sum of symbols {x1, y1} + ... in {+-1} + (+)_p F_p^x", cmd::decompose},
        {"lift", "preimage of a class given as p:a entries (and --two)", cmd::lift},
        {"reciprocity", "product of Hilbert symbols over all places", cmd::reciprocity},
        {"quadrec", "quadratic reciprocity for odd primes p q via the product formula", cmd::quadrec},
        {"moore", "sum map on place:value entries, with a lift when in the kernel", cmd::moore},
        {"weil", "Weil reciprocity for f g over F_q(T)", cmd::weil},
        {"ffdecompose", "tame components of a sum of symbols over F_q(T)", cmd::ffdecompose},
        {"fflift", "preimage of a class given as pi:a entries over F_q(T)", cmd::fflift},
        {"steinberg", "vanishing of K2(F_q): witness, counting bound, optional {z^m, z^n} trace", cmd::steinberg},
        {"qform", "invariants of a diagonal form, or of a Gram matrix after diagonalization", cmd::qform},
        {"quaternion", "splitting and ramification of the quaternion algebra (a, b)", cmd::quaternion},
        {"pfister", "Hasse invariant of <<x, y>> against the Hilbert symbol, place by place", cmd::pfister},
        {"dform", "exterior derivative and dlog on F_p(s, t)", cmd::dform},
        {"cartier", "Cartier operator on a closed 1-form or a 2-form", cmd::cartier},
        {"numember", "membership in the kernel of gamma - Id", cmd::numember},
        {"zeta", "L-polynomial and zeta(-1) of P^1 or an elliptic curve", cmd::zeta},
        {"tateid", "the zeta(-1) identity for P^1 or an elliptic curve", cmd::tateid},
        {"birchtate", "w2(Q), zeta_Q(-1) and their product", cmd::birchtate},
        {"dilog", "Bloch-Wigner dilogarithm at a point of Q(i)", cmd::dilog},
        {"residue", "loop integral of eta_{f,g} against log|tame symbol| at a point", cmd::residue},
        {"selftest", "invariant suite of every module", cmd::selftest},
    };
    return all;
}

/// Runs one command line (without the program name); the JSON report goes to out.
inline int run(const std::vector<std::string>& argv, std::ostream& out) {
    CLI::App app{"Symbol calculus of K2 of global fields", "k2sym"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("k2sym report schema ") + std::to_string(kSchema));
    app.add_flag("--json", "JSON output (the only mode)");
    Options o;
    const std::vector<std::string> field_cmds{"tame", "weil", "ffdecompose", "fflift", "steinberg", "zeta", "tateid"};
    const std::vector<std::string> place_cmds{"hilbert", "tame"};
    const std::vector<std::string> charp_cmds{"dform", "cartier", "numember"};
    auto has = [](const std::vector<std::string>& v, const std::string& s) {
        return std::find(v.begin(), v.end(), s) != v.end();
    };
    for (const auto& c : commands()) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("args", o.args, "arguments")->allow_extra_args();
        sub->add_flag("--json", "JSON output (the only mode)");
        const std::string name = c.name;
        if (has(field_cmds, name)) sub->add_option("--q", o.q, "order of the finite field");
        if (has(place_cmds, name)) sub->add_option("--place", o.place, "place: inf, a prime, or a polynomial with --q");
        if (has(charp_cmds, name)) sub->add_option("--p", o.p, "characteristic")->required();
        if (name == "dform") sub->add_option("--op", o.op, "d0, d1, dlog1 or dlog2")->required();
        if (name == "cartier" || name == "numember") sub->add_option("--degree", o.degree, "form degree")->required();
        if (name == "lift") sub->add_option("--two", o.two, "value of the 2-slot, 1 or -1");
        if (name == "steinberg") {
            sub->add_option("--m", o.m, "exponent m in {z^m, z^n}");
            sub->add_option("--n", o.n, "exponent n in {z^m, z^n}");
        }
        if (name == "qform") {
            sub->add_option("--against", o.against, "comma-separated second form");
            sub->add_option("--gram", o.gram, "Gram matrix, rows separated by ';', entries by ','");
        }
        if (name == "zeta" || name == "tateid") sub->add_option("--elliptic", o.elliptic, "a b of y^2 = x^3 + a x + b")->expected(2);
    }

    // CLI11 takes a reversed argument vector; it already reads "-3" as a
    // positional number rather than a flag.
    std::vector<std::string> rev;
    for (auto it = argv.rbegin(); it != argv.rend(); ++it) rev.push_back(normalize_minus(*it));
    std::string command;
    for (const auto& a : argv)
        if (!a.empty() && a[0] != '-') {
            command = a;
            break;
        }
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        out << error_json(command, "usage", e.what()).dump(2) << "\n";
        return kExitInvalid;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    Report r;
    r.command = chosen->get_name();
    const Command& c = *std::find_if(commands().begin(), commands().end(),
                                     [&](const Command& x) { return r.command == x.name; });
    try {
        c.run(o, r);
    } catch (const parse_error& e) {
        out << error_json(r.command, "parse", e.what(), e.offset()).dump(2) << "\n";
        return kExitInvalid;
    } catch (const invalid_input& e) {
        out << error_json(r.command, "invalid_input", e.what()).dump(2) << "\n";
        return kExitInvalid;
    } catch (const verification_failure& e) {
        out << error_json(r.command, "verification_failure", e.what()).dump(2) << "\n";
        return kExitFailed;
    }
    out << to_json(r).dump(2) << "\n";
    return r.holds ? kExitOk : kExitFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out);
}

}  // namespace k2sym::cli

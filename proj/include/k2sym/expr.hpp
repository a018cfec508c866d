#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "k2sym/charpforms.hpp"
#include "k2sym/error.hpp"
#include "k2sym/funcfield.hpp"
#include "k2sym/regnum.hpp"

namespace k2sym {

/// Syntax errors carry the character offset where parsing stopped.
class parse_error : public invalid_input {
public:
    parse_error(std::size_t offset, const std::string& what)
        : invalid_input("parse error at offset " + std::to_string(offset) + ": " + what), offset_(offset), reason_(what) {}
    std::size_t offset() const { return offset_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

struct Expr {
    enum class Kind { integer, variable, add, sub, mul, div, pow, neg };
    Kind kind;
    std::size_t offset = 0;
    Integer value;         // integer
    std::string name;      // variable
    unsigned exponent = 0; // pow
    std::vector<Expr> args;
};

/// Replaces U+2212 MINUS SIGN by '-'.
inline std::string normalize_minus(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.substr(i, 3) == "\xE2\x88\x92") {
            out += '-';
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

namespace detail {

inline constexpr unsigned kMaxExponent = 4096;

class ExprParser {
public:
    explicit ExprParser(std::string src) : s_(std::move(src)) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) throw parse_error(pos_, std::string("unexpected '") + s_[pos_] + "'");
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    // expr := term (('+'|'-') term)*
    Expr expr() {
        Expr lhs = term();
        for (;;) {
            skip();
            const std::size_t at = pos_;
            if (accept('+'))
                lhs = Expr{Expr::Kind::add, at, {}, {}, 0, {std::move(lhs), term()}};
            else if (accept('-'))
                lhs = Expr{Expr::Kind::sub, at, {}, {}, 0, {std::move(lhs), term()}};
            else
                return lhs;
        }
    }

    // term := unary (('*'|'/') unary)*
    Expr term() {
        Expr lhs = unary();
        for (;;) {
            skip();
            const std::size_t at = pos_;
            if (accept('*'))
                lhs = Expr{Expr::Kind::mul, at, {}, {}, 0, {std::move(lhs), unary()}};
            else if (accept('/'))
                lhs = Expr{Expr::Kind::div, at, {}, {}, 0, {std::move(lhs), unary()}};
            else
                return lhs;
        }
    }

    // unary := '-' unary | factor
    Expr unary() {
        skip();
        const std::size_t at = pos_;
        if (accept('-')) return Expr{Expr::Kind::neg, at, {}, {}, 0, {unary()}};
        return factor();
    }

    // factor := base ('^' uint)?
    Expr factor() {
        Expr b = base();
        skip();
        const std::size_t at = pos_;
        if (!accept('^')) return b;
        skip();
        const std::size_t digits_at = pos_;
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
        if (digits.empty()) throw parse_error(digits_at, "expected an unsigned integer exponent");
        if (digits.size() > 5 || std::stoul(digits) > kMaxExponent)
            throw parse_error(digits_at, "exponent exceeds " + std::to_string(kMaxExponent));
        return Expr{Expr::Kind::pow, at, {}, {}, static_cast<unsigned>(std::stoul(digits)), {std::move(b)}};
    }

    // base := integer | variable | '(' expr ')'
    Expr base() {
        skip();
        const std::size_t at = pos_;
        if (pos_ >= s_.size()) throw parse_error(pos_, "unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
            return Expr{Expr::Kind::integer, at, Integer(digits), {}, 0, {}};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            ++pos_;
            return Expr{Expr::Kind::variable, at, {}, std::string(1, c), 0, {}};
        }
        if (accept('(')) {
            Expr e = expr();
            if (!accept(')')) throw parse_error(pos_, "expected ')'");
            return e;
        }
        throw parse_error(at, std::string("unexpected '") + c + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expr(std::string_view source) { return detail::ExprParser(normalize_minus(source)).parse(); }

inline std::string to_string(const Expr& e) {
    auto bin = [&](const char* op) { return "(" + to_string(e.args[0]) + op + to_string(e.args[1]) + ")"; };
    switch (e.kind) {
        case Expr::Kind::integer: return e.value.str();
        case Expr::Kind::variable: return e.name;
        case Expr::Kind::add: return bin("+");
        case Expr::Kind::sub: return bin("-");
        case Expr::Kind::mul: return bin("*");
        case Expr::Kind::div: return bin("/");
        case Expr::Kind::pow: return "(" + to_string(e.args[0]) + "^" + std::to_string(e.exponent) + ")";
        case Expr::Kind::neg: return "(-" + to_string(e.args[0]) + ")";
    }
    return {};
}

/// Evaluates in a domain providing constant, variable, add, sub, mul, div,
/// neg, pow and is_zero.
template <class Domain>
typename Domain::Value evaluate(const Expr& e, const Domain& d) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::integer: return d.constant(e.value);
        case K::variable: {
            auto v = d.variable(e.name);
            if (!v) throw parse_error(e.offset, "unknown variable '" + e.name + "' for " + d.describe());
            return *v;
        }
        case K::add: return d.add(evaluate(e.args[0], d), evaluate(e.args[1], d));
        case K::sub: return d.sub(evaluate(e.args[0], d), evaluate(e.args[1], d));
        case K::mul: return d.mul(evaluate(e.args[0], d), evaluate(e.args[1], d));
        case K::div: {
            auto den = evaluate(e.args[1], d);
            if (d.is_zero(den)) throw parse_error(e.offset, "division by zero");
            return d.div(evaluate(e.args[0], d), den);
        }
        case K::neg: return d.neg(evaluate(e.args[0], d));
        case K::pow: return d.pow(evaluate(e.args[0], d), e.exponent);
    }
    throw parse_error(e.offset, "malformed expression");
}

namespace detail {

/// Shared arithmetic for domains whose values support + - * / and unary -.
template <class V>
struct FieldOps {
    using Value = V;
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value div(const Value& a, const Value& b) const { return a / b; }
    Value neg(const Value& a) const { return -a; }
};

}  // namespace detail

struct RationalDomain : detail::FieldOps<Rational> {
    Value constant(const Integer& n) const { return Rational(n); }
    std::optional<Value> variable(const std::string&) const { return std::nullopt; }
    bool is_zero(const Value& v) const { return v == 0; }
    Value pow(const Value& v, unsigned e) const {
        Rational r = 1;
        for (unsigned k = 0; k < e; ++k) r *= v;
        return r;
    }
    std::string describe() const { return "Q"; }
};

/// F_q(T); over a non-prime field the basis variable is `a`.
struct FqFunctionDomain : detail::FieldOps<FqRatFunc> {
    FqField F;
    Value constant(const Integer& n) const { return FqRatFunc::constant(F, F.from_int(mod(n, Integer(F.characteristic())).convert_to<std::int64_t>())); }
    std::optional<Value> variable(const std::string& v) const {
        if (v == "T") return FqRatFunc::T(F);
        if (v == "a" && F.degree() > 1) return FqRatFunc::constant(F, F.variable());
        return std::nullopt;
    }
    bool is_zero(const Value& v) const { return v.is_zero(); }
    Value pow(const Value& v, unsigned e) const { return v.pow(static_cast<long>(e)); }
    std::string describe() const { return "F_" + std::to_string(F.order()) + "(T)"; }
};

/// Q(i)(z).
struct GaussDomain : detail::FieldOps<CxRatFunc> {
    Value constant(const Integer& n) const { return CxRatFunc::constant({Rational(n), 0}); }
    std::optional<Value> variable(const std::string& v) const {
        if (v == "z") return CxRatFunc::z();
        if (v == "i") return CxRatFunc::constant({0, 1});
        return std::nullopt;
    }
    bool is_zero(const Value& v) const { return v.is_zero(); }
    Value neg(const Value& a) const { return CxRatFunc::constant({-1, 0}) * a; }
    Value pow(const Value& v, unsigned e) const {
        Value r = constant(1);
        for (unsigned k = 0; k < e; ++k) r = r * v;
        return r;
    }
    std::string describe() const { return "Q(i)(z)"; }
};

/// F_p(s, t).
struct BivariateDomain : detail::FieldOps<MultiRatFunc> {
    FqField F;
    Value constant(const Integer& n) const {
        return MultiRatFunc::constant(F, F.from_int(mod(n, Integer(F.characteristic())).convert_to<std::int64_t>()));
    }
    std::optional<Value> variable(const std::string& v) const {
        if (v == "s") return MultiRatFunc::s(F);
        if (v == "t") return MultiRatFunc::t(F);
        return std::nullopt;
    }
    bool is_zero(const Value& v) const { return v.is_zero(); }
    Value pow(const Value& v, unsigned e) const { return v.pow(e); }
    std::string describe() const { return "F_" + std::to_string(F.order()) + "(s, t)"; }
};

inline Rational parse_rational_expr(std::string_view s) { return evaluate(parse_expr(s), RationalDomain{}); }

inline FqRatFunc parse_fq_ratfunc(std::string_view s, const FqField& F) {
    return evaluate(parse_expr(s), FqFunctionDomain{{}, F});
}

inline FqPoly parse_fq_poly(std::string_view s, const FqField& F) {
    FqRatFunc f = parse_fq_ratfunc(s, F);
    require(f.den().is_one(), "expected a polynomial, got " + to_string(f));
    return f.num();
}

inline CxRatFunc parse_cx_ratfunc(std::string_view s) { return evaluate(parse_expr(s), GaussDomain{}); }

/// A constant of Q(i), such as "1/2-3*i".
inline GaussQ parse_gauss(std::string_view s) {
    CxRatFunc f = parse_cx_ratfunc(s);
    require(f.den().is_one() && f.num().is_constant(), "expected a constant in Q(i), got " + to_string(f));
    return f.num().coeff(0);
}

inline MultiRatFunc parse_bivariate(std::string_view s, const FqField& F) {
    require(F.degree() == 1, "bivariate functions need a prime field");
    return evaluate(parse_expr(s), BivariateDomain{{}, F});
}

}  // namespace k2sym

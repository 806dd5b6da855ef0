#pragma once

#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsmult/series.hpp"

namespace hsmult {

/// Names and position info used while parsing one expression.
template <class K>
struct ExprContext {
    std::vector<std::string> variables;
    MonomialOrder order;
    /// Resolves a parameter identifier such as t_1_3; nullopt if unknown.
    std::function<std::optional<K>(const std::string&)> parameter;
    std::size_t line = 1;
    std::size_t column = 1;
};

namespace detail {

template <class K>
struct Fraction {
    SparsePoly<K> num, den;
};

template <class K>
class ExprParser {
public:
    ExprParser(std::string_view text, const ExprContext<K>& ctx) : s_(text), ctx_(ctx) {}

    Fraction<K> parse() {
        Fraction<K> f = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    using P = SparsePoly<K>;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, ctx_.line, ctx_.column + pos_);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Fraction<K> constant(const K& c) const {
        return {P::constant(ctx_.order, c), P::constant(ctx_.order, K(1))};
    }

    static Fraction<K> add(const Fraction<K>& a, const Fraction<K>& b, bool subtract) {
        P bn = subtract ? -b.num : b.num;
        if (a.den == b.den) return {a.num + bn, a.den};
        return {a.num * b.den + bn * a.den, a.den * b.den};
    }

    static Fraction<K> normalize(Fraction<K> f) {
        // a constant denominator is folded into the numerator
        if (f.den.size() == 1 && f.den.leading_exponent().is_zero()) {
            K c = f.den.leading_coeff();
            f.num = f.num.scaled(c.inv());
            f.den = P::constant(f.num.order(), K(1));
        }
        return f;
    }

    Fraction<K> expr() {
        Fraction<K> acc = term();
        while (true) {
            if (accept('+')) acc = normalize(add(acc, term(), false));
            else if (accept('-')) acc = normalize(add(acc, term(), true));
            else return acc;
        }
    }

    Fraction<K> term() {
        Fraction<K> acc = unary();
        while (true) {
            if (accept('*')) {
                Fraction<K> r = unary();
                acc = normalize({acc.num * r.num, acc.den * r.den});
            } else if (accept('/')) {
                std::size_t at = pos_;
                Fraction<K> r = unary();
                if (r.num.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = normalize({acc.num * r.den, acc.den * r.num});
            } else {
                return acc;
            }
        }
    }

    Fraction<K> unary() {
        if (accept('-')) {
            Fraction<K> f = unary();
            return {-f.num, f.den};
        }
        if (accept('+')) return unary();
        return power();
    }

    Fraction<K> power() {
        Fraction<K> base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a non-negative integer exponent");
            unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
            if (k > 100000) fail("exponent too large");
            return {base.num.pow(static_cast<unsigned>(k)), base.den.pow(static_cast<unsigned>(k))};
        }
        return base;
    }

    Fraction<K> atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Fraction<K> f = expr();
            if (!accept(')')) fail("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '.') fail("decimal literals are not exact; write a fraction");
            return constant(scalar_from_integer<K>(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            for (std::size_t i = 0; i < ctx_.variables.size(); ++i)
                if (ctx_.variables[i] == name) return {P::variable(ctx_.order, i), P::constant(ctx_.order, K(1))};
            if (ctx_.parameter) {
                if (auto v = ctx_.parameter(name)) return constant(*v);
            }
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    const ExprContext<K>& ctx_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses an expression into a series (polynomial unless a non-constant
/// denominator remains, which becomes a rational expansion).
template <class K>
Series<K> parse_series(std::string_view text, const ExprContext<K>& ctx) {
    auto f = detail::ExprParser<K>(text, ctx).parse();
    if (f.den.size() == 1 && f.den.leading_exponent().is_zero()) return Series<K>(f.num.scaled(f.den.leading_coeff().inv()));
    try {
        return Series<K>::rational(f.num, f.den);
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), ctx.line, ctx.column);
    }
}

template <class K>
SparsePoly<K> parse_polynomial(std::string_view text, const ExprContext<K>& ctx) {
    Series<K> s = parse_series(text, ctx);
    if (!s.is_polynomial()) throw ParseError("expected a polynomial", ctx.line, ctx.column);
    return s.polynomial();
}

} // namespace hsmult

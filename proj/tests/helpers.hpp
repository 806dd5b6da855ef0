#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hsmult/hsmult.hpp"

namespace testing_helpers {

using namespace hsmult;
using Q = Rational;
using QT = RatFunc<Rational>;
using PT = ParamPoly<Rational>;

inline MonomialOrder glex(std::size_t n) { return MonomialOrder(OrderKind::GradedLex, n); }

inline std::vector<std::string> xyz(std::size_t n) {
    std::vector<std::string> v{"x", "y", "z"};
    v.resize(n);
    return v;
}

/// Context in variables x, y[, z] with parameters named by `params` (t0, t1, ...).
template <class K>
ExprContext<K> context(std::size_t n, std::vector<std::string> params = {}) {
    ExprContext<K> ctx{xyz(n), glex(n), {}, 1, 1};
    if constexpr (is_ratfunc_v<K>) {
        ctx.parameter = [params](const std::string& s) -> std::optional<K> {
            for (std::size_t i = 0; i < params.size(); ++i)
                if (params[i] == s) return K::param(i);
            return std::nullopt;
        };
    }
    return ctx;
}

template <class K>
SparsePoly<K> poly(const std::string& s, std::size_t n = 2, std::vector<std::string> params = {"a", "b", "c"}) {
    return parse_polynomial<K>(s, context<K>(n, params));
}

template <class K>
Series<K> series(const std::string& s, std::size_t n = 2, std::vector<std::string> params = {"a", "b", "c"}) {
    return parse_series<K>(s, context<K>(n, params));
}

inline PT pp(const std::string& s) {
    // parameter polynomial in a, b, c via the expression parser in zero variables
    auto p = poly<QT>(s, 1);
    QT c = p.coefficient(Exponent(1));
    return c.num();
}

template <class K>
DualElement<K> dual(std::size_t n, std::initializer_list<std::pair<Exponent, K>> terms) {
    DualElement<K> e(glex(n));
    for (auto& [a, c] : terms) e.add_term(a, c);
    return e;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(HSMULT_FIXTURES) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ProblemInstance<Rational> fixture_q(const std::string& name) {
    return build_instance<Rational>(parse_instance(read_fixture(name)));
}

} // namespace testing_helpers

#pragma once

#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "hsmult/exponent.hpp"
#include "hsmult/ratfunc.hpp"

namespace hsmult {

template <class T>
struct is_ratfunc : std::false_type {};
template <class B>
struct is_ratfunc<RatFunc<B>> : std::true_type {};
template <class T>
inline constexpr bool is_ratfunc_v = is_ratfunc<T>::value;

/// Integer literal as an element of K (reduced mod p for prime fields).
template <class K>
K scalar_from_integer(const mpz_class& z) {
    if constexpr (is_ratfunc_v<K>) {
        return K(scalar_from_integer<typename K::Base>(z));
    } else if constexpr (std::is_same_v<K, Zp>) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), Zp::modulus());
        return Zp(static_cast<long>(r.get_ui()));
    } else {
        return K(z);
    }
}

/// Scalar-agnostic string conversion; parameter names matter only for K(t).
template <class K>
std::string scalar_to_string(const K& c, std::span<const std::string> param_names = {}) {
    if constexpr (is_ratfunc_v<K>) return c.to_string(param_names);
    else return c.to_string();
}

/// Sparse multivariate polynomial in x_1..x_n over a scalar field K.
///
/// Zero coefficients are never stored; iteration is in descending order of
/// the ring's monomial order.
template <class K>
class SparsePoly {
public:
    using Scalar = K;
    using Terms = std::map<Exponent, K, DescendingIn>;

    SparsePoly() = default;
    explicit SparsePoly(const MonomialOrder& order) : terms_(DescendingIn{order}) {}
    SparsePoly(const MonomialOrder& order, std::initializer_list<std::pair<Exponent, K>> terms)
        : terms_(DescendingIn{order}) {
        for (auto& [e, c] : terms) add_term(e, c);
    }

    static SparsePoly constant(const MonomialOrder& order, const K& c) {
        SparsePoly p(order);
        p.add_term(Exponent(order.nvars()), c);
        return p;
    }
    static SparsePoly variable(const MonomialOrder& order, std::size_t i) {
        SparsePoly p(order);
        p.add_term(Exponent::unit(order.nvars(), i), K(1));
        return p;
    }

    MonomialOrder order() const { return terms_.key_comp().order; }
    std::size_t nvars() const { return order().nvars(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    K coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K() : it->second;
    }

    const Exponent& leading_exponent() const { return terms_.begin()->first; }
    const K& leading_coeff() const { return terms_.begin()->second; }

    long degree() const {
        long d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.degree());
        return d;
    }
    /// Lowest total degree of a term (the order of vanishing at the origin).
    long low_degree() const {
        long d = -1;
        for (auto& [e, c] : terms_)
            if (d < 0 || e.degree() < d) d = e.degree();
        return d;
    }

    void add_term(const Exponent& e, const K& c) {
        if (e.size() != nvars()) throw RingMismatch("term has wrong variable count");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        check_ring(o);
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        check_ring(o);
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    SparsePoly operator-() const { return scaled(K(-1)); }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        a.check_ring(b);
        SparsePoly r(a.order());
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    SparsePoly scaled(const K& s) const {
        SparsePoly r(order());
        if (s.is_zero()) return r;
        for (auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
        return r;
    }
    friend SparsePoly operator*(const K& s, const SparsePoly& p) { return p.scaled(s); }
    friend SparsePoly operator*(const SparsePoly& p, const K& s) { return p.scaled(s); }

    SparsePoly pow(unsigned k) const {
        SparsePoly r = constant(order(), K(1));
        for (unsigned i = 0; i < k; ++i) r *= *this;
        return r;
    }

    /// Terms of total degree <= d.
    SparsePoly truncated(long d) const {
        SparsePoly r(order());
        for (auto& [e, c] : terms_)
            if (e.degree() <= d) r.terms_.emplace_hint(r.terms_.end(), e, c);
        return r;
    }

    /// Homogeneous component of degree d.
    SparsePoly component(long d) const {
        SparsePoly r(order());
        for (auto& [e, c] : terms_)
            if (e.degree() == d) r.terms_.emplace_hint(r.terms_.end(), e, c);
        return r;
    }

    SparsePoly with_order(const MonomialOrder& order) const {
        SparsePoly r(order);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, c);
        return r;
    }

    template <class L, class F>
    SparsePoly<L> map_coefficients(F&& f) const {
        SparsePoly<L> r(order());
        for (auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.nvars() == b.nvars() && a.terms_.size() == b.terms_.size() &&
               std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                          [](auto& x, auto& y) { return x.first == y.first && x.second == y.second; });
    }

    /// e.g. "x^3 + 2*x*y - 1/2"; variable names default to x0, x1, ...
    std::string to_string(std::span<const std::string> vars = {},
                          std::span<const std::string> params = {}) const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto& [e, c] : terms_) {
            std::string cs = scalar_to_string(c, params);
            bool compound = is_ratfunc_v<K> && (cs.find_first_of("+/* ") != std::string::npos ||
                                                cs.find('-', 1) != std::string::npos);
            bool neg = !compound && !cs.empty() && cs[0] == '-';
            if (neg) cs.erase(0, 1);
            if (first) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += i < vars.size() ? vars[i] : "x" + std::to_string(i);
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (compound) cs = "(" + cs + ")";
            if (mono.empty()) s += cs;
            else if (cs == "1") s += mono;
            else s += cs + "*" + mono;
        }
        return s;
    }

    void check_ring(const SparsePoly& o) const {
        if (o.nvars() != nvars())
            throw RingMismatch("polynomials live in rings with " + std::to_string(nvars()) + " and " +
                               std::to_string(o.nvars()) + " variables");
    }

private:
    Terms terms_;
};

/// Coefficient-wise evaluation of the parameters; errors if a denominator vanishes.
template <class B>
SparsePoly<B> substitute_params(const SparsePoly<RatFunc<B>>& p, std::span<const B> point) {
    SparsePoly<B> r(p.order());
    for (auto& [e, c] : p.terms()) r.add_term(e, c.evaluate(point));
    return r;
}

/// Embeds a base-field polynomial into K(t)[x].
template <class B>
SparsePoly<RatFunc<B>> lift_to_params(const SparsePoly<B>& p) {
    return p.template map_coefficients<RatFunc<B>>([](const B& c) { return RatFunc<B>(c); });
}

} // namespace hsmult

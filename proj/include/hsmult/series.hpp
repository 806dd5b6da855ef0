#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hsmult/sparse_poly.hpp"

namespace hsmult {

/// A power series that can be truncated at any total degree.
///
/// Supported generators are polynomials, rational expansions p/q with q(0)
/// invertible, and K-linear combinations of those (the generic generators
/// f_i + sum t_ij f_j). Values are immutable and cheap to copy; expansions of
/// p/q are cached behind a mutex, so concurrent truncation is safe.
template <class K>
class Series {
public:
    enum class Kind { Polynomial, RationalExpansion, Combination };

    Series() = default;

    /// Implicit: a polynomial is a series.
    Series(SparsePoly<K> p) : node_(std::make_shared<Node>()) {
        node_->kind = Kind::Polynomial;
        node_->num = std::move(p);
    }

    /// p/q as a power series; q must have an invertible constant term.
    static Series rational(SparsePoly<K> p, SparsePoly<K> q) {
        p.check_ring(q);
        K q0 = q.coefficient(Exponent(q.nvars()));
        if (q0.is_zero())
            throw ValidationError("rational series " + p.to_string() + " / (" + q.to_string() +
                                  ") has a non-invertible constant denominator term");
        if (q.size() == 1) return Series(p.scaled(q0.inv()));
        Series s;
        s.node_ = std::make_shared<Node>();
        s.node_->kind = Kind::RationalExpansion;
        s.node_->num = std::move(p);
        s.node_->den = std::move(q);
        s.node_->q0_inv = q0.inv();
        return s;
    }

    /// sum c_i * s_i; collapses to a polynomial when every part is one.
    static Series combination(const std::vector<std::pair<K, Series>>& parts) {
        if (parts.empty()) throw ValidationError("empty series combination");
        bool all_poly = true;
        for (auto& [c, s] : parts) all_poly = all_poly && s.is_polynomial();
        if (all_poly) {
            SparsePoly<K> acc(parts.front().second.order());
            for (auto& [c, s] : parts) acc += s.polynomial().scaled(c);
            return Series(std::move(acc));
        }
        Series r;
        r.node_ = std::make_shared<Node>();
        r.node_->kind = Kind::Combination;
        r.node_->num = SparsePoly<K>(parts.front().second.order());
        for (auto& [c, s] : parts)
            if (!c.is_zero()) r.node_->parts.emplace_back(c, s);
        return r;
    }

    Kind kind() const { return node().kind; }
    bool is_polynomial() const { return node().kind == Kind::Polynomial; }
    const SparsePoly<K>& polynomial() const { return node().num; }
    /// Numerator and denominator of a rational expansion.
    const SparsePoly<K>& numerator() const { return node().num; }
    const SparsePoly<K>& denominator() const { return node().den; }
    const std::vector<std::pair<K, Series>>& parts() const { return node().parts; }

    MonomialOrder order() const { return node().num.order(); }
    std::size_t nvars() const { return order().nvars(); }

    /// Exact degree bound for polynomials, -1 when the support may be infinite.
    long exact_degree() const {
        switch (node().kind) {
        case Kind::Polynomial: return node().num.degree();
        case Kind::RationalExpansion: return -1;
        case Kind::Combination: {
            long d = -1;
            for (auto& [c, s] : node().parts) {
                long ds = s.exact_degree();
                if (ds < 0) return -1;
                d = std::max(d, ds);
            }
            return d;
        }
        }
        return -1;
    }

    /// Sum of all terms of total degree <= d.
    SparsePoly<K> truncate(long d) const {
        if (d < 0) throw ValidationError("negative truncation degree");
        const Node& n = node();
        switch (n.kind) {
        case Kind::Polynomial: return n.num.truncated(d);
        case Kind::RationalExpansion: return expansion(n, d);
        case Kind::Combination: {
            SparsePoly<K> acc(order());
            for (auto& [c, s] : n.parts) acc += s.truncate(d).scaled(c);
            return acc;
        }
        }
        return SparsePoly<K>(order());
    }

    template <class L, class F>
    Series<L> map_coefficients(F&& f) const {
        const Node& n = node();
        switch (n.kind) {
        case Kind::Polynomial: return Series<L>(n.num.template map_coefficients<L>(f));
        case Kind::RationalExpansion:
            return Series<L>::rational(n.num.template map_coefficients<L>(f),
                                       n.den.template map_coefficients<L>(f));
        case Kind::Combination: {
            std::vector<std::pair<L, Series<L>>> parts;
            for (auto& [c, s] : n.parts) parts.emplace_back(f(c), s.template map_coefficients<L>(f));
            return Series<L>::combination(parts);
        }
        }
        throw std::logic_error("unreachable");
    }

    std::string to_string(std::span<const std::string> vars = {}, std::span<const std::string> params = {}) const {
        const Node& n = node();
        switch (n.kind) {
        case Kind::Polynomial: return n.num.to_string(vars, params);
        case Kind::RationalExpansion:
            return "(" + n.num.to_string(vars, params) + ")/(" + n.den.to_string(vars, params) + ")";
        case Kind::Combination: {
            std::string s;
            for (auto& [c, part] : n.parts) {
                if (!s.empty()) s += " + ";
                s += "(" + scalar_to_string(c, params) + ")*(" + part.to_string(vars, params) + ")";
            }
            return s;
        }
        }
        return "";
    }

    friend bool operator==(const Series& a, const Series& b) {
        if (a.node_ == b.node_) return true;
        if (!a.node_ || !b.node_) return false;
        const Node &x = *a.node_, &y = *b.node_;
        if (x.kind != y.kind) return false;
        switch (x.kind) {
        case Kind::Polynomial: return x.num == y.num;
        case Kind::RationalExpansion: return x.num == y.num && x.den == y.den;
        case Kind::Combination: return x.parts == y.parts;
        }
        return false;
    }

private:
    struct Node {
        Kind kind = Kind::Polynomial;
        SparsePoly<K> num, den;
        K q0_inv;
        std::vector<std::pair<K, Series>> parts;
        // homogeneous components of p/q computed so far
        mutable std::mutex mu;
        mutable std::vector<SparsePoly<K>> components;
    };

    const Node& node() const {
        if (!node_) throw std::logic_error("empty series");
        return *node_;
    }

    static SparsePoly<K> expansion(const Node& n, long d) {
        std::lock_guard lock(n.mu);
        auto& comps = n.components;
        for (long k = static_cast<long>(comps.size()); k <= d; ++k) {
            // s_k = (p_k - sum_{j=1..k} q_j s_{k-j}) / q_0
            SparsePoly<K> sk = n.num.component(k);
            for (long j = 1; j <= k; ++j) {
                SparsePoly<K> qj = n.den.component(j);
                if (qj.is_zero() || comps[k - j].is_zero()) continue;
                sk -= qj * comps[k - j];
            }
            comps.push_back(sk.scaled(n.q0_inv));
        }
        SparsePoly<K> out(n.num.order());
        for (long k = 0; k <= d; ++k) out += comps[k];
        return out;
    }

    std::shared_ptr<Node> node_;
};

} // namespace hsmult

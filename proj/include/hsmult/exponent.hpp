#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

#include "hsmult/errors.hpp"

namespace hsmult {

/// Exponent vector in Z_{>=0}^n. Stands for x^alpha in S and for 1/x^{alpha+1} in E.
class Exponent {
public:
    Exponent() = default;
    explicit Exponent(std::size_t n) : e_(n, 0) {}
    Exponent(std::initializer_list<int> entries) : e_(entries) { check(); }
    explicit Exponent(std::vector<int> entries) : e_(std::move(entries)) { check(); }

    static Exponent unit(std::size_t n, std::size_t i) {
        Exponent u(n);
        u.e_[i] = 1;
        return u;
    }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    int& operator[](std::size_t i) { return e_[i]; }
    const std::vector<int>& entries() const { return e_; }

    long degree() const { return std::accumulate(e_.begin(), e_.end(), 0L); }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
    }

    /// Componentwise <=, i.e. x^this divides x^other.
    bool divides(const Exponent& other) const {
        same_length(other);
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i]) return false;
        return true;
    }

    Exponent operator+(const Exponent& o) const {
        same_length(o);
        Exponent r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    /// Componentwise difference; caller guarantees o.divides(*this).
    Exponent operator-(const Exponent& o) const {
        same_length(o);
        Exponent r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    static Exponent lcm(const Exponent& a, const Exponent& b) {
        a.same_length(b);
        Exponent r(a);
        for (std::size_t i = 0; i < r.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    friend bool operator==(const Exponent&, const Exponent&) = default;
    /// Plain lexicographic comparison of the entry vectors; only for containers.
    friend auto operator<=>(const Exponent& a, const Exponent& b) { return a.e_ <=> b.e_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e_[i]);
        }
        return s + ")";
    }

    void same_length(const Exponent& o) const {
        if (o.e_.size() != e_.size())
            throw RingMismatch("exponent length mismatch: " + std::to_string(e_.size()) + " vs " +
                               std::to_string(o.e_.size()));
    }

private:
    void check() const {
        for (int v : e_)
            if (v < 0) throw ValidationError("negative exponent entry");
    }

    std::vector<int> e_;
};

enum class OrderKind { GradedLex, GradedRevLex, Lex };

inline std::string to_string(OrderKind k) {
    switch (k) {
    case OrderKind::GradedLex: return "glex";
    case OrderKind::GradedRevLex: return "grevlex";
    case OrderKind::Lex: return "lex";
    }
    return "?";
}

/// Term order on monomials (equivalently on the terms of E).
///
/// `precedence[0]` is the most significant variable: with the identity
/// precedence on (x, y, z) the graded lex order has z < y < x.
class MonomialOrder {
public:
    MonomialOrder() = default;
    MonomialOrder(OrderKind kind, std::size_t nvars) : kind_(kind), prec_(nvars) {
        std::iota(prec_.begin(), prec_.end(), std::size_t{0});
    }
    MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
        : kind_(kind), prec_(std::move(precedence)) {
        std::vector<std::size_t> sorted = prec_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i) throw ValidationError("variable precedence is not a permutation");
    }

    OrderKind kind() const { return kind_; }
    const std::vector<std::size_t>& precedence() const { return prec_; }
    std::size_t nvars() const { return prec_.size(); }

    std::strong_ordering compare(const Exponent& a, const Exponent& b) const {
        if (a.size() != prec_.size() || b.size() != prec_.size())
            throw RingMismatch("exponent length does not match the order's variable count");
        if (kind_ != OrderKind::Lex) {
            auto da = a.degree(), db = b.degree();
            if (da != db) return da <=> db;
        }
        if (kind_ == OrderKind::GradedRevLex) {
            for (auto it = prec_.rbegin(); it != prec_.rend(); ++it)
                if (a[*it] != b[*it]) return b[*it] <=> a[*it];
            return std::strong_ordering::equal;
        }
        for (std::size_t v : prec_)
            if (a[v] != b[v]) return a[v] <=> b[v];
        return std::strong_ordering::equal;
    }

    bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    OrderKind kind_ = OrderKind::GradedLex;
    std::vector<std::size_t> prec_;
};

inline std::strong_ordering compare(const MonomialOrder& order, const Exponent& a, const Exponent& b) {
    return order.compare(a, b);
}

/// Strict "greater first" comparator, so ordered maps iterate in descending order.
struct DescendingIn {
    MonomialOrder order;
    bool operator()(const Exponent& a, const Exponent& b) const { return order.compare(a, b) > 0; }
};

} // namespace hsmult

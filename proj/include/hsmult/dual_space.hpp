#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hsmult/series.hpp"

namespace hsmult {

/// In dual-space code an exponent alpha stands for the term 1/x^{alpha+1} of E.
using DualTerm = Exponent;

/// "1/x^4y" style rendering of a dual term.
inline std::string format_dual_term(const DualTerm& alpha, std::span<const std::string> vars = {}) {
    std::string s = "1/";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        s += i < vars.size() ? vars[i] : "x" + std::to_string(i);
        if (alpha[i] + 1 > 1) s += "^" + std::to_string(alpha[i] + 1);
    }
    return s;
}

/// Finite K-linear combination of terms of E, iterated in descending order.
template <class K>
class DualElement {
public:
    using Terms = std::map<Exponent, K, DescendingIn>;

    DualElement() = default;
    explicit DualElement(const MonomialOrder& order) : terms_(DescendingIn{order}) {}
    DualElement(const MonomialOrder& order, std::initializer_list<std::pair<Exponent, K>> terms)
        : terms_(DescendingIn{order}) {
        for (auto& [e, c] : terms) add_term(e, c);
    }

    static DualElement term(const MonomialOrder& order, const DualTerm& alpha, const K& c = K(1)) {
        DualElement d(order);
        d.add_term(alpha, c);
        return d;
    }

    MonomialOrder order() const { return terms_.key_comp().order; }
    std::size_t nvars() const { return order().nvars(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    K coefficient(const DualTerm& alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? K() : it->second;
    }

    void add_term(const DualTerm& alpha, const K& c) {
        if (alpha.size() != nvars()) throw RingMismatch("dual term has wrong variable count");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DualElement& operator+=(const DualElement& o) {
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    DualElement& operator-=(const DualElement& o) {
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend DualElement operator+(DualElement a, const DualElement& b) { return a += b; }
    friend DualElement operator-(DualElement a, const DualElement& b) { return a -= b; }

    DualElement scaled(const K& s) const {
        DualElement r(order());
        for (auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    template <class L, class F>
    DualElement<L> map_coefficients(F&& f) const {
        DualElement<L> r(order());
        for (auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    friend bool operator==(const DualElement& a, const DualElement& b) {
        return a.terms_.size() == b.terms_.size() &&
               std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                          [](auto& x, auto& y) { return x.first == y.first && x.second == y.second; });
    }

    std::string to_string(std::span<const std::string> vars = {}, std::span<const std::string> params = {}) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [e, c] : terms_) {
            std::string cs = scalar_to_string(c, params);
            bool neg = cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos;
            if (neg) cs.erase(0, 1);
            if (!s.empty()) s += neg ? " - " : " + ";
            else if (neg) s += "-";
            std::string t = format_dual_term(e, vars);
            if (cs == "1") s += t;
            else if (cs.find_first_of("+-/ ") == std::string::npos) s += cs + t.substr(1);
            else s += "(" + cs + ")" + t.substr(1);
        }
        return s;
    }

private:
    Terms terms_;
};

/// x^a . 1/x^{b+1} = 1/x^{b-a+1} if a <= b componentwise, else 0; extended bilinearly.
template <class K>
DualElement<K> act(const SparsePoly<K>& f, const DualElement<K>& eta) {
    if (f.nvars() != eta.nvars()) throw RingMismatch("act: polynomial and dual element differ in variable count");
    DualElement<K> out(eta.order());
    for (auto& [beta, c] : eta.terms())
        for (auto& [alpha, a] : f.terms())
            if (alpha.divides(beta)) out.add_term(beta - alpha, a * c);
    return out;
}

/// Series version: only monomials of degree <= the largest |beta| can act, so
/// a finite truncation is exact.
template <class K>
DualElement<K> act(const Series<K>& f, const DualElement<K>& eta) {
    long d = 0;
    for (auto& [beta, c] : eta.terms()) d = std::max(d, beta.degree());
    return act(f.truncate(d), eta);
}

/// Leading term (maximal under `order`) and its coefficient.
template <class K>
std::pair<DualTerm, K> leading(const DualElement<K>& eta, const MonomialOrder& order) {
    if (eta.is_zero()) throw ZeroElement("leading term of the zero element");
    auto best = eta.terms().begin();
    for (auto it = eta.terms().begin(); it != eta.terms().end(); ++it)
        if (order.compare(it->first, best->first) > 0) best = it;
    return {best->first, best->second};
}

/// Finite order ideal of Z_{>=0}^n, stored by its corners (maximal elements).
///
/// As a set of dual terms it is a term module of E: the term 1/x^{alpha+1}
/// belongs to it iff alpha lies below some corner.
class Staircase {
public:
    Staircase() = default;
    explicit Staircase(std::size_t nvars) : n_(nvars) {}

    /// Smallest staircase containing the given points.
    static Staircase from_points(std::size_t nvars, std::span<const Exponent> points) {
        Staircase s(nvars);
        for (auto& p : points) s.insert(p);
        s.recount();
        return s;
    }

    std::size_t nvars() const { return n_; }
    const std::vector<Exponent>& corners() const { return corners_; }
    std::size_t size() const { return size_; }
    bool empty() const { return corners_.empty(); }

    bool contains(const Exponent& a) const {
        if (a.size() != n_) throw RingMismatch("staircase membership: wrong variable count");
        for (auto& c : corners_)
            if (a.divides(c)) return true;
        return false;
    }

    /// Staircase enlarged by `p` (and everything below it).
    Staircase with(const Exponent& p) const {
        Staircase s = *this;
        if (s.insert(p)) s.recount();
        return s;
    }

    Staircase united(const Staircase& o) const {
        Staircase s = *this;
        bool changed = false;
        for (auto& c : o.corners_) changed = s.insert(c) || changed;
        if (changed) s.recount();
        return s;
    }

    /// All members, in plain lexicographic order of exponent vectors.
    std::vector<Exponent> enumerate() const {
        std::vector<Exponent> out;
        visit([&](const Exponent& e) { out.push_back(e); });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Calls f on every member exactly once (depth-first, each point reached
    /// from the predecessor obtained by lowering its last nonzero entry).
    template <class F>
    void visit(F&& f) const {
        if (corners_.empty()) return;
        std::vector<std::pair<Exponent, std::size_t>> stack;
        stack.emplace_back(Exponent(n_), 0);
        while (!stack.empty()) {
            auto [e, from] = std::move(stack.back());
            stack.pop_back();
            f(e);
            for (std::size_t i = from; i < n_; ++i) {
                Exponent next = e;
                ++next[i];
                if (contains(next)) stack.emplace_back(std::move(next), i);
            }
        }
    }

    friend bool operator==(const Staircase& a, const Staircase& b) {
        return a.n_ == b.n_ && a.corners_ == b.corners_;
    }

private:
    /// Adds p as a corner unless already covered; drops corners below it.
    bool insert(const Exponent& p) {
        if (p.size() != n_) throw RingMismatch("staircase point: wrong variable count");
        if (contains(p)) return false;
        std::erase_if(corners_, [&](const Exponent& c) { return c.divides(p); });
        corners_.push_back(p);
        std::sort(corners_.begin(), corners_.end());
        return true;
    }

    void recount() {
        std::size_t count = 0;
        visit([&](const Exponent&) { ++count; });
        size_ = count;
    }

    std::size_t n_ = 0;
    std::vector<Exponent> corners_;
    std::size_t size_ = 0;
};

/// Standard monomials of the monomial ideal generated by `supports`, i.e. the
/// terms annihilated by every generator. Throws NotZeroDimensional when some
/// variable has no pure power among the supports, CapExceeded past `max_size`.
inline Staircase initial_staircase(std::size_t nvars, std::span<const Exponent> supports,
                                   std::size_t max_size = 1'000'000) {
    std::vector<Exponent> gens;
    for (auto& s : supports) {
        if (s.size() != nvars) throw RingMismatch("support monomial has wrong variable count");
        if (std::any_of(gens.begin(), gens.end(), [&](const Exponent& g) { return g.divides(s); })) continue;
        std::erase_if(gens, [&](const Exponent& g) { return s.divides(g); });
        gens.push_back(s);
    }
    for (std::size_t i = 0; i < nvars; ++i) {
        bool bounded = std::any_of(gens.begin(), gens.end(), [&](const Exponent& g) {
            for (std::size_t k = 0; k < nvars; ++k)
                if (k != i && g[k] != 0) return false;
            return true;
        });
        if (!bounded)
            throw NotZeroDimensional("variable " + std::to_string(i) +
                                     " has no pure power among the generator supports");
    }
    auto standard = [&](const Exponent& e) {
        return std::none_of(gens.begin(), gens.end(), [&](const Exponent& g) { return g.divides(e); });
    };
    std::vector<Exponent> corners;
    std::size_t count = 0;
    if (standard(Exponent(nvars))) {
        std::vector<std::pair<Exponent, std::size_t>> stack;
        stack.emplace_back(Exponent(nvars), 0);
        while (!stack.empty()) {
            auto [e, from] = std::move(stack.back());
            stack.pop_back();
            if (++count > max_size)
                throw CapExceeded("initial staircase exceeds " + std::to_string(max_size) + " terms");
            bool maximal = true;
            for (std::size_t i = 0; i < nvars; ++i) {
                Exponent next = e;
                ++next[i];
                if (!standard(next)) continue;
                maximal = false;
                if (i >= from) stack.emplace_back(std::move(next), i);
            }
            if (maximal) corners.push_back(e);
        }
    }
    return Staircase::from_points(nvars, corners);
}

/// Dual terms of the minimal generators of the monomial ideal whose standard
/// monomials form `s`: the terms of (s :_E m) outside s.
inline std::vector<DualTerm> socle_candidates(const Staircase& s) {
    const std::size_t n = s.nvars();
    std::set<Exponent> out;
    if (s.empty()) return {Exponent(n)};
    auto is_candidate = [&](const Exponent& a) {
        if (s.contains(a)) return false;
        for (std::size_t k = 0; k < n; ++k) {
            if (a[k] == 0) continue;
            Exponent pred = a;
            --pred[k];
            if (!s.contains(pred)) return false;
        }
        return true;
    };
    s.visit([&](const Exponent& b) {
        for (std::size_t i = 0; i < n; ++i) {
            Exponent a = b;
            ++a[i];
            if (is_candidate(a)) out.insert(std::move(a));
        }
    });
    return {out.begin(), out.end()};
}

/// Smallest staircase containing every term that appears in the given elements (T_2).
template <class K>
Staircase span_of_terms(std::size_t nvars, std::span<const DualElement<K>> elements) {
    std::vector<Exponent> pts;
    for (auto& el : elements)
        for (auto& [e, c] : el.terms()) pts.push_back(e);
    return Staircase::from_points(nvars, pts);
}

/// Terms of (t2 :_E m) that are outside `ltn` and strictly below tau0, sorted
/// in descending order.
inline std::vector<DualTerm> gamma_candidates(const Staircase& t2, const Staircase& ltn,
                                              const MonomialOrder& order, const DualTerm& tau0) {
    std::vector<DualTerm> out;
    auto consider = [&](const Exponent& a) {
        if (!ltn.contains(a) && order.compare(a, tau0) < 0) out.push_back(a);
    };
    t2.visit(consider);
    for (auto& a : socle_candidates(t2)) consider(a);
    std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) { return order.compare(a, b) > 0; });
    return out;
}

} // namespace hsmult

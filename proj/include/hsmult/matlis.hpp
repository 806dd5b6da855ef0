#pragma once

#include <set>
#include <string>
#include <vector>

#include "hsmult/dual_space.hpp"
#include "hsmult/modp.hpp"
#include "hsmult/series.hpp"

namespace hsmult {

struct ResourceCaps {
    std::size_t max_terms = 20000;       // staircase sizes (T1, T2)
    long max_degree = 200;               // total degree of dual terms
    std::size_t max_iterations = 100000; // loop steps
    long initial_trunc_degree = 8;       // first truncation for series supports
    std::size_t max_length = 0;          // stop once the length exceeds this (0: no limit)

    void validate() const {
        if (max_terms == 0 || max_degree <= 0 || max_iterations == 0 || initial_trunc_degree <= 0)
            throw ValidationError("resource caps must be positive");
    }
};

/// Scalars K and the integral domain D used for matrices and kernels:
/// K for Q and F_p, B[t] for K = B(t).
template <class K>
struct field_traits {
    using Domain = K;
    static std::vector<K> clear_row(std::vector<K> row) { return row; }
    static K to_scalar(const K& d) { return d; }
};

template <class B>
struct field_traits<RatFunc<B>> {
    using Domain = ParamPoly<B>;
    static std::vector<Domain> clear_row(const std::vector<RatFunc<B>>& row) {
        return clear_denominators<B>(row);
    }
    static RatFunc<B> to_scalar(const Domain& d) { return RatFunc<B>(d); }
};

template <class K>
using domain_t = typename field_traits<K>::Domain;

struct EngineStats {
    std::size_t steps = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t max_rows = 0;
    std::size_t max_cols = 0;
    ModpStats solver;
};

/// M_{F,Gamma}: one block per generator (input order); within a block one row
/// per dual term s occurring in some f_i . tau_k, rows descending; entry
/// (s, k) is the coefficient of s in f_i . tau_k. Rows are tagged and have
/// denominators cleared. Rows that would be zero never arise.
template <class K>
ExactMatrix<domain_t<K>> build_matrix(const std::vector<Series<K>>& F, const std::vector<DualTerm>& gamma) {
    using D = domain_t<K>;
    if (gamma.empty()) throw ValidationError("build_matrix: empty term list");
    if (F.empty()) throw ValidationError("build_matrix: no generators");
    const MonomialOrder order = F.front().order();
    for (std::size_t k = 1; k < gamma.size(); ++k)
        if (order.compare(gamma[k - 1], gamma[k]) <= 0)
            throw ValidationError("build_matrix: terms must be strictly descending");
    long top = 0;
    for (auto& g : gamma) top = std::max(top, g.degree());

    ExactMatrix<D> m(0, gamma.size());
    for (std::size_t i = 0; i < F.size(); ++i) {
        SparsePoly<K> f = F[i].truncate(top);
        std::map<Exponent, std::vector<K>, DescendingIn> rows(DescendingIn{order});
        for (std::size_t k = 0; k < gamma.size(); ++k)
            for (auto& [alpha, a] : f.terms()) {
                if (!alpha.divides(gamma[k])) continue;
                auto [it, fresh] = rows.try_emplace(gamma[k] - alpha, gamma.size());
                it->second[k] += a;
            }
        for (auto& [s, row] : rows) {
            if (std::all_of(row.begin(), row.end(), [](const K& c) { return c.is_zero(); })) continue;
            auto cleared = field_traits<K>::clear_row(row);
            m.append_row(std::span<const D>(cleared), RowTag{i, s});
        }
    }
    return m;
}

/// State of the dual basis computation. L2 (the candidates) is always the
/// socle of the current LTN staircase.
template <class K>
struct DualBasisState {
    using D = domain_t<K>;

    std::vector<Series<K>> F;
    MonomialOrder order;
    Staircase t1, ltn, t2;
    std::set<DualTerm> rejected;           // L1
    std::vector<DualTerm> candidates;      // L2
    std::vector<DualElement<K>> xis;       // monic
    std::vector<DualElement<K>> xis_primitive; // kernel vector, coefficients in K[t]
    std::vector<Staircase> ltn_at_acceptance;
    std::vector<D> polylist;
    std::vector<ExactMatrix<D>> matlist;
    EngineStats stats;

    std::size_t length() const { return t1.size() + xis.size(); }

    bool done() const {
        for (auto& c : candidates)
            if (!rejected.contains(c)) return false;
        return true;
    }

    /// T1 terms ascending in the order, then the accepted elements.
    std::vector<DualElement<K>> basis() const {
        std::vector<DualTerm> terms = t1.enumerate();
        std::sort(terms.begin(), terms.end(), [&](const DualTerm& a, const DualTerm& b) { return order.less(a, b); });
        std::vector<DualElement<K>> out;
        for (auto& t : terms) out.push_back(DualElement<K>::term(order, t));
        out.insert(out.end(), xis.begin(), xis.end());
        return out;
    }
};

namespace detail {

/// Staircase of terms annihilated by every generator, from generator
/// supports. Series are truncated at increasing degrees until the staircase
/// sits inside the truncation degree.
template <class K>
Staircase screen_supports(const std::vector<Series<K>>& F, std::size_t nvars, const ResourceCaps& caps) {
    long exact = 0;
    bool all_finite = true;
    for (auto& f : F) {
        long e = f.exact_degree();
        if (e < 0) all_finite = false;
        else exact = std::max(exact, e);
    }
    long D = all_finite ? exact : std::min(caps.initial_trunc_degree, caps.max_degree);
    while (true) {
        std::vector<Exponent> supports;
        for (auto& f : F) {
            SparsePoly<K> t = f.truncate(D);
            for (auto& [e, c] : t.terms()) supports.push_back(e);
        }
        try {
            Staircase s = initial_staircase(nvars, supports, caps.max_terms);
            long top = 0;
            for (auto& c : s.corners()) top = std::max(top, c.degree());
            if (all_finite || top <= D) return s;
        } catch (const NotZeroDimensional&) {
            if (all_finite || D >= caps.max_degree) throw;
        }
        if (D >= caps.max_degree)
            throw CapExceeded("series supports did not settle below degree " + std::to_string(caps.max_degree));
        D = std::min(2 * D, caps.max_degree);
    }
}

template <class K>
void check_caps(const DualBasisState<K>& st, const ResourceCaps& caps) {
    if (st.stats.steps > caps.max_iterations)
        throw CapExceeded("more than " + std::to_string(caps.max_iterations) + " iterations");
    if (caps.max_length && st.length() > caps.max_length)
        throw CapExceeded("length exceeds " + std::to_string(caps.max_length));
    if (st.t2.size() > caps.max_terms)
        throw CapExceeded("dual term staircase exceeds " + std::to_string(caps.max_terms) + " terms");
}

} // namespace detail

template <class K>
DualBasisState<K> initial_state(std::vector<Series<K>> F, const MonomialOrder& order, const ResourceCaps& caps = {}) {
    caps.validate();
    if (F.empty()) throw ValidationError("no generators");
    const std::size_t n = order.nvars();
    for (auto& f : F)
        if (f.nvars() != n) throw RingMismatch("generator ring differs from the order's variable count");
    DualBasisState<K> st;
    st.order = order;
    st.F = std::move(F);
    st.t1 = detail::screen_supports(st.F, n, caps);
    st.ltn = st.t1;
    st.t2 = st.t1;
    st.candidates = socle_candidates(st.ltn);
    detail::check_caps(st, caps);
    return st;
}

/// One pass of the main loop: decides the smallest open candidate.
template <class K>
void step(DualBasisState<K>& st, const SolverConfig& solver = {}, const ResourceCaps& caps = {}) {
    using D = domain_t<K>;
    const DualTerm* tau0 = nullptr;
    for (auto& c : st.candidates)
        if (!st.rejected.contains(c) && (!tau0 || st.order.less(c, *tau0))) tau0 = &c;
    if (!tau0) throw std::logic_error("step called on a finished state");
    const DualTerm t0 = *tau0;
    if (t0.degree() > caps.max_degree)
        throw CapExceeded("candidate degree exceeds " + std::to_string(caps.max_degree));
    ++st.stats.steps;

    std::vector<DualTerm> gamma{t0};
    auto rest = gamma_candidates(st.t2, st.ltn, st.order, t0);
    gamma.insert(gamma.end(), rest.begin(), rest.end());

    ExactMatrix<D> m = build_matrix(st.F, gamma);
    st.stats.max_rows = std::max(st.stats.max_rows, m.rows());
    st.stats.max_cols = std::max(st.stats.max_cols, m.cols());

    KernelResult<D> ker;
    if (m.rows() == 0) {
        if (gamma.size() > 1) throw UnexpectedNullity(gamma.size());
        ker.vector = std::vector<D>{D(1)};
    } else {
        ker = solve_dispatch(m, solver, &st.stats.solver);
    }

    if (ker.trivial()) {
        st.rejected.insert(t0);
        st.matlist.push_back(std::move(m));
        ++st.stats.rejected;
    } else {
        const auto& v = *ker.vector;
        if (v[0].is_zero()) throw InternalInconsistency("kernel vector has zero leading coefficient");
        using FT = field_traits<K>;
        const K c0 = FT::to_scalar(v[0]);
        const K c0_inv = K(1) / c0;
        DualElement<K> xi(st.order), prim(st.order);
        for (std::size_t k = 0; k < gamma.size(); ++k) {
            if (v[k].is_zero()) continue;
            K c = FT::to_scalar(v[k]);
            prim.add_term(gamma[k], c);
            xi.add_term(gamma[k], c * c0_inv);
        }
        st.ltn_at_acceptance.push_back(st.ltn);
        st.xis.push_back(std::move(xi));
        st.xis_primitive.push_back(std::move(prim));
        st.ltn = st.ltn.with(t0);
        st.t2 = st.t2.united(span_of_terms<K>(st.order.nvars(), std::span(&st.xis.back(), 1)));
        st.candidates = socle_candidates(st.ltn);
        if constexpr (is_param_poly<D>::value) {
            // nonzero constants impose no condition
            if (!v[0].is_constant()) {
                D p = normalized(v[0]);
                if (std::find(st.polylist.begin(), st.polylist.end(), p) == st.polylist.end())
                    st.polylist.push_back(std::move(p));
            }
        }
        ++st.stats.accepted;
    }
    detail::check_caps(st, caps);
}

/// Runs the loop to completion. The result's length is the colength of the
/// ideal generated by F.
template <class K>
DualBasisState<K> compute_dual_basis(std::vector<Series<K>> F, const MonomialOrder& order,
                                     const ResourceCaps& caps = {}, const SolverConfig& solver = {}) {
    DualBasisState<K> st = initial_state(std::move(F), order, caps);
    while (!st.done()) step(st, solver, caps);
    return st;
}

template <class K>
DualBasisState<K> compute_dual_basis(const std::vector<SparsePoly<K>>& F, const MonomialOrder& order,
                                     const ResourceCaps& caps = {}, const SolverConfig& solver = {}) {
    std::vector<Series<K>> s(F.begin(), F.end());
    return compute_dual_basis(std::move(s), order, caps, solver);
}

/// Checks the structural properties of a finished run. Returns a list of
/// violations (empty when all hold).
template <class K>
std::vector<std::string> check_invariants(const DualBasisState<K>& st) {
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < st.xis.size(); ++i) {
        auto [lt, lc] = leading(st.xis[i], st.order);
        if (!lc.is_one()) bad.push_back("xi " + std::to_string(i) + " is not monic");
        if (i > 0 && !st.order.less(leading(st.xis[i - 1], st.order).first, lt))
            bad.push_back("leading terms not strictly increasing at xi " + std::to_string(i));
        for (auto& [t, c] : st.xis[i].terms())
            if (st.ltn_at_acceptance[i].contains(t))
                bad.push_back("xi " + std::to_string(i) + " has term " + t.to_string() + " inside the earlier staircase");
    }
    std::vector<DualElement<K>> elems;
    for (auto& t : st.t1.enumerate()) elems.push_back(DualElement<K>::term(st.order, t));
    elems.insert(elems.end(), st.xis_primitive.begin(), st.xis_primitive.end());
    for (std::size_t j = 0; j < elems.size(); ++j)
        for (std::size_t i = 0; i < st.F.size(); ++i)
            if (!act(st.F[i], elems[j]).is_zero())
                bad.push_back("generator " + std::to_string(i) + " does not annihilate basis element " + std::to_string(j));
    if (st.basis().size() != st.length()) bad.push_back("basis size differs from length");
    return bad;
}

} // namespace hsmult

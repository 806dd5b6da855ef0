#pragma once

// Brute-force reference computations. Deliberately naive and independent of
// the staircase and dual-space code.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hsmult/sparse_poly.hpp"

namespace hsmult {

namespace detail {

inline std::vector<Exponent> minimalize(std::vector<Exponent> gens) {
    std::sort(gens.begin(), gens.end(), [](const Exponent& a, const Exponent& b) {
        return a.degree() != b.degree() ? a.degree() < b.degree() : a < b;
    });
    std::vector<Exponent> out;
    for (auto& g : gens)
        if (std::none_of(out.begin(), out.end(), [&](const Exponent& h) { return h.divides(g); })) out.push_back(g);
    return out;
}

} // namespace detail

/// Number of monomials outside the ideal, counted point by point in the box
/// cut out by the pure powers; nullopt when some variable has no pure power.
inline std::optional<std::size_t> monomial_length(const std::vector<Exponent>& gens) {
    if (gens.empty()) return std::nullopt;
    const std::size_t n = gens.front().size();
    std::vector<int> box(n, -1);
    for (auto& g : gens) {
        std::size_t nz = 0, at = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (g[i] != 0) ++nz, at = i;
        if (nz == 0) return 0; // unit ideal
        if (nz == 1 && (box[at] < 0 || g[at] < box[at])) box[at] = g[at];
    }
    for (int b : box)
        if (b < 0) return std::nullopt;
    std::size_t count = 0;
    std::vector<int> e(n, 0);
    while (true) {
        Exponent x(e);
        if (std::none_of(gens.begin(), gens.end(), [&](const Exponent& g) { return g.divides(x); })) ++count;
        std::size_t k = 0;
        while (k < n && ++e[k] == box[k]) e[k++] = 0;
        if (k == n) break;
    }
    return count;
}

/// Generators of M^k from all k-fold sums.
inline std::vector<Exponent> monomial_power(const std::vector<Exponent>& gens, unsigned k) {
    if (gens.empty()) return {};
    std::vector<Exponent> cur{Exponent(gens.front().size())};
    for (unsigned i = 0; i < k; ++i) {
        std::set<Exponent> next;
        for (auto& a : cur)
            for (auto& g : gens) next.insert(a + g);
        cur = detail::minimalize({next.begin(), next.end()});
    }
    return cur;
}

/// e(M) as the d-th finite difference of k -> l(S/M^k), taken at the end of
/// k = 1..k_max; the last two differences must agree.
inline std::size_t monomial_multiplicity_fit(const std::vector<Exponent>& gens, std::size_t d, unsigned k_max) {
    if (k_max < d + 2) throw ValidationError("k_max must be at least d + 2");
    std::vector<long> len{0}; // l(S/M^0) = 0
    for (unsigned k = 1; k <= k_max; ++k) {
        auto l = monomial_length(monomial_power(gens, k));
        if (!l) throw NotZeroDimensional("monomial ideal is not m-primary");
        len.push_back(static_cast<long>(*l));
    }
    auto diff = [&](std::size_t end) {
        std::vector<long> v(len.begin() + static_cast<std::ptrdiff_t>(end - d), len.begin() + static_cast<std::ptrdiff_t>(end + 1));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t i = 0; i + 1 < v.size() - r; ++i) v[i] = v[i + 1] - v[i];
        return v.front();
    };
    long last = diff(k_max), prev = diff(k_max - 1);
    if (last != prev || last <= 0) throw NotStabilized("Hilbert-Samuel differences not stable up to k = " + std::to_string(k_max));
    return static_cast<std::size_t>(last);
}

/// dim_K K[x]/(<F> + m^D) for increasing D until two consecutive values
/// agree; the common value is the colength of <F>.
template <class K>
std::size_t vector_space_length(const std::vector<SparsePoly<K>>& F, long D_max) {
    if (F.empty()) throw ValidationError("no generators");
    const MonomialOrder order = F.front().order();
    const std::size_t n = order.nvars();
    auto monomials_below = [&](long D) {
        std::vector<Exponent> out;
        std::vector<Exponent> layer{Exponent(n)};
        for (long deg = 0; deg < D; ++deg) {
            out.insert(out.end(), layer.begin(), layer.end());
            std::set<Exponent> next;
            for (auto& e : layer)
                for (std::size_t i = 0; i < n; ++i) next.insert(e + Exponent::unit(n, i));
            layer.assign(next.begin(), next.end());
        }
        return out;
    };
    std::optional<std::size_t> prev;
    for (long D = 1; D <= D_max; ++D) {
        auto monos = monomials_below(D);
        std::map<Exponent, SparsePoly<K>, DescendingIn> pivots(DescendingIn{order});
        for (auto& f : F)
            for (auto& g : monos) {
                SparsePoly<K> row(order);
                for (auto& [a, c] : f.terms()) {
                    Exponent s = a + g;
                    if (s.degree() < D) row.add_term(s, c);
                }
                while (!row.is_zero()) {
                    auto it = pivots.find(row.leading_exponent());
                    if (it == pivots.end()) break;
                    row -= it->second.scaled(row.leading_coeff());
                }
                if (!row.is_zero()) {
                    K lc = row.leading_coeff();
                    Exponent lt = row.leading_exponent();
                    pivots.emplace(lt, row.scaled(K(1) / lc));
                }
            }
        std::size_t value = monos.size() - pivots.size();
        if (prev && *prev == value) return value;
        prev = value;
    }
    throw NotStabilized("colength did not stabilize below degree " + std::to_string(D_max));
}

} // namespace hsmult

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "hsmult/linalg.hpp"

namespace hsmult {

/// A maximal ideal <p, t_1 - a_1, ..., t_r - a_r> of Z[t] (or F_p[t]).
struct SpecPoint {
    std::uint32_t prime = 0;
    std::vector<std::uint32_t> values;
    std::size_t retry = 0;
};

/// How specialization points are chosen. Deterministic: the same matrix and
/// policy always give the same points.
struct ModpPolicy {
    /// Descending word-sized primes just below 2^31; cycled through on retries.
    std::vector<std::uint32_t> primes{2147483647u, 2147483629u, 2147483587u, 2147483579u,
                                      2147483563u, 2147483549u, 2147483543u, 2147483497u};
    std::size_t max_retries = 3;
    /// Points tried before the derived ones (used to exercise the retry path).
    std::vector<std::vector<std::uint32_t>> forced_points;
};

struct ModpStats {
    std::size_t direct_solves = 0;
    std::size_t modp_solves = 0;
    std::size_t modp_rejections = 0;  // trivial kernel decided mod p
    std::size_t modp_confirmed = 0;   // kernel vector found and verified exactly
    std::size_t retries = 0;
    std::size_t fallbacks = 0;

    ModpStats& operator+=(const ModpStats& o) {
        direct_solves += o.direct_solves;
        modp_solves += o.modp_solves;
        modp_rejections += o.modp_rejections;
        modp_confirmed += o.modp_confirmed;
        retries += o.retries;
        fallbacks += o.fallbacks;
        return *this;
    }
};

enum class ModpMode { Off, On, Auto };

inline std::string to_string(ModpMode m) {
    switch (m) {
    case ModpMode::Off: return "off";
    case ModpMode::On: return "on";
    case ModpMode::Auto: return "auto";
    }
    return "?";
}

struct SolverConfig {
    ModpMode modp = ModpMode::Auto;
    /// In auto mode, parametric matrices with more columns than this go mod p.
    std::size_t modp_threshold = 4;
    ModpPolicy policy;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::optional<Zp> to_zp(const Rational& c) {
    mpz_class n, d;
    const unsigned long p = Zp::modulus();
    mpz_fdiv_r_ui(n.get_mpz_t(), c.num().get_mpz_t(), p);
    mpz_fdiv_r_ui(d.get_mpz_t(), c.den().get_mpz_t(), p);
    if (d == 0) return std::nullopt;
    return Zp(static_cast<long>(n.get_ui())) / Zp(static_cast<long>(d.get_ui()));
}

inline std::optional<Zp> to_zp(const Zp& c) { return c; }

template <class B>
std::size_t param_count(const ExactMatrix<ParamPoly<B>>& m) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto& e : m.row(i)) n = std::max(n, e.var_bound());
    return n;
}

template <class B>
std::uint64_t matrix_hash(const ExactMatrix<ParamPoly<B>>& m) {
    std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (auto& e : m.row(i)) s += e.to_string() + ";";
    return fnv1a(s);
}

} // namespace detail

/// The attempt-th specialization point for m under the policy.
template <class B>
SpecPoint spec_point(const ExactMatrix<ParamPoly<B>>& m, const ModpPolicy& policy, std::size_t attempt) {
    SpecPoint pt;
    pt.retry = attempt;
    const std::size_t r = detail::param_count(m);
    if constexpr (std::is_same_v<B, Zp>) pt.prime = Zp::modulus();
    else pt.prime = policy.primes.at(attempt % policy.primes.size());
    if (attempt < policy.forced_points.size()) {
        pt.values = policy.forced_points[attempt];
        pt.values.resize(r, 0);
        for (auto& v : pt.values) v %= pt.prime;
        return pt;
    }
    const std::uint64_t seed = detail::matrix_hash(m) ^ detail::splitmix64(attempt);
    for (std::size_t i = 0; i < r; ++i)
        pt.values.push_back(static_cast<std::uint32_t>(detail::splitmix64(seed + i) % pt.prime));
    return pt;
}

/// Image of a K[t] matrix in F_p at the point. Must be called with
/// Zp::Scope(pt.prime) active; throws DenominatorVanishes if p divides a
/// coefficient denominator.
template <class B>
ExactMatrix<Zp> specialize(const ExactMatrix<ParamPoly<B>>& m, const SpecPoint& pt) {
    if (Zp::modulus() != pt.prime) throw std::logic_error("specialize: active modulus differs from the point's prime");
    std::vector<Zp> point;
    for (auto v : pt.values) point.push_back(Zp::from_raw(v));
    return m.template map<Zp>([&](const ParamPoly<B>& e) {
        auto img = e.template map_coefficients<Zp>([](const B& c) { return detail::to_zp(c); });
        if (!img) throw DenominatorVanishes("prime divides a coefficient denominator");
        return img->evaluate(point);
    });
}

/// Kernel over K(t) found via one modular image: a trivial image kernel is
/// conclusive; a nontrivial one gives a support guess that is solved exactly
/// and then verified on the full matrix. Bad points cost a retry; after
/// max_retries the exact elimination is used.
template <class B>
KernelResult<ParamPoly<B>> kernel_via_modp(const ExactMatrix<ParamPoly<B>>& m, const ModpPolicy& policy,
                                           ModpStats* stats = nullptr) {
    using P = ParamPoly<B>;
    ModpStats local;
    ModpStats& st = stats ? *stats : local;
    ++st.modp_solves;
    for (std::size_t attempt = 0; attempt < policy.max_retries; ++attempt) {
        if (attempt > 0) ++st.retries;
        SpecPoint pt = spec_point(m, policy, attempt);
        std::vector<std::size_t> support, rows;
        {
            Zp::Scope scope(pt.prime);
            ExactMatrix<Zp> img;
            try {
                img = specialize(m, pt);
            } catch (const DenominatorVanishes&) {
                continue;
            }
            auto e = gauss_jordan(img);
            if (e.rank() == m.cols()) {
                ++st.modp_rejections;
                return {};
            }
            if (m.cols() - e.rank() > 1) continue;
            auto kv = kernel(img);
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!(*kv.vector)[j].is_zero()) support.push_back(j);
            auto er = gauss_jordan(img.columns(support));
            if (er.rank() + 1 != support.size()) continue;
            rows = er.pivot_rows;
        }
        ExactMatrix<P> sub = m.select_rows(rows).columns(support);
        auto sk = kernel(sub);
        if (sk.trivial()) continue;
        std::vector<P> v(m.cols());
        for (std::size_t k = 0; k < support.size(); ++k) v[support[k]] = (*sk.vector)[k];
        if (!is_zero_vector<P>(m.multiply(v))) continue;
        canonicalize(v);
        ++st.modp_confirmed;
        return {std::move(v)};
    }
    ++st.fallbacks;
    return kernel(m);
}

template <class D>
struct is_param_poly : std::false_type {};
template <class B>
struct is_param_poly<ParamPoly<B>> : std::true_type {};

/// Routes to the modular method for parametric polynomial matrices above the
/// threshold, to exact elimination otherwise. The result is the same either way.
template <class D>
KernelResult<D> solve_dispatch(const ExactMatrix<D>& m, const SolverConfig& config, ModpStats* stats = nullptr) {
    if constexpr (is_param_poly<D>::value) {
        bool parametric = detail::param_count(m) > 0;
        bool use = config.modp != ModpMode::Off && parametric &&
                   (config.modp == ModpMode::On || m.cols() > config.modp_threshold);
        if (use) return kernel_via_modp(m, config.policy, stats);
    }
    if (stats) ++stats->direct_solves;
    return kernel(m);
}

} // namespace hsmult

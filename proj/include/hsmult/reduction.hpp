#pragma once

#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "hsmult/matlis.hpp"

namespace hsmult {

/// R = S/I with S = K[[x_1..x_n]], J = <f_1..f_m> R, d = dim R.
template <class K>
struct ProblemInstance {
    std::vector<std::string> variables;
    MonomialOrder order;
    std::vector<Series<K>> quotient; // I
    std::vector<Series<K>> ideal;    // J
    std::size_t dim = 0;
    ResourceCaps caps;
    SolverConfig solver;
    long search_bound = 3;

    std::size_t nvars() const { return variables.size(); }
    std::size_t nparams() const { return dim * (ideal.size() - dim); }

    void validate() const {
        const std::size_t n = variables.size();
        if (n == 0) throw ValidationError("no variables");
        if (order.nvars() != n) throw ValidationError("order does not match the variable count");
        if (dim > n) throw ValidationError("dim " + std::to_string(dim) + " exceeds the number of variables");
        if (ideal.empty() && dim > 0) throw ValidationError("the ideal has no generators");
        if (ideal.size() < dim)
            throw ValidationError("need at least dim = " + std::to_string(dim) + " generators, got " +
                                  std::to_string(ideal.size()));
        if (dim == 0 && quotient.empty()) throw ValidationError("dim 0 needs quotient generators");
        for (auto* list : {&quotient, &ideal})
            for (auto& f : *list)
                if (f.nvars() != n) throw RingMismatch("generator ring differs from the variable count");
        caps.validate();
        if (search_bound < 0) throw ValidationError("negative search bound");
    }

    /// Stable text form of the mathematical content (used as a cache key).
    std::string canonical() const {
        std::string s = "char=" + std::to_string(characteristic()) + ";vars=";
        for (auto& v : variables) s += v + ",";
        s += ";order=" + to_string(order.kind());
        for (auto p : order.precedence()) s += "," + std::to_string(p);
        s += ";dim=" + std::to_string(dim) + ";I=";
        for (auto& f : quotient) s += f.to_string(variables) + "|";
        s += ";J=";
        for (auto& f : ideal) s += f.to_string(variables) + "|";
        return s;
    }

    static unsigned long characteristic() {
        if constexpr (std::is_same_v<K, Zp>) return Zp::modulus();
        else return 0;
    }
};

/// "t_i_j" for i = 1..d, j = d+1..m, in flat order (i-1)(m-d) + (j-d-1).
inline std::vector<std::string> parameter_names(std::size_t d, std::size_t m) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = d + 1; j <= m; ++j) out.push_back("t_" + std::to_string(i) + "_" + std::to_string(j));
    return out;
}

/// (f_1 + sum_j t_1j f_j, ..., f_d + sum_j t_dj f_j, g_1, ..., g_r) over K(t).
template <class K>
std::vector<Series<RatFunc<K>>> generic_generators(const ProblemInstance<K>& inst) {
    using RF = RatFunc<K>;
    inst.validate();
    const std::size_t d = inst.dim, m = inst.ideal.size();
    auto lift = [](const Series<K>& s) { return s.template map_coefficients<RF>([](const K& c) { return RF(c); }); };
    std::vector<Series<RF>> out;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::pair<RF, Series<RF>>> parts{{RF(1), lift(inst.ideal[i])}};
        for (std::size_t j = d; j < m; ++j)
            parts.emplace_back(RF::param(i * (m - d) + (j - d)), lift(inst.ideal[j]));
        out.push_back(Series<RF>::combination(parts));
    }
    for (auto& g : inst.quotient) out.push_back(lift(g));
    return out;
}

/// The same generators with the parameters replaced by a (flat, d*(m-d) entries).
template <class K>
std::vector<Series<K>> specialized_generators(const ProblemInstance<K>& inst, std::span<const K> a) {
    inst.validate();
    const std::size_t d = inst.dim, m = inst.ideal.size();
    if (a.size() != inst.nparams())
        throw ValidationError("expected " + std::to_string(inst.nparams()) + " coefficients, got " +
                              std::to_string(a.size()));
    std::vector<Series<K>> out;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<std::pair<K, Series<K>>> parts{{K(1), inst.ideal[i]}};
        for (std::size_t j = d; j < m; ++j) {
            const K& c = a[i * (m - d) + (j - d)];
            if (!c.is_zero()) parts.emplace_back(c, inst.ideal[j]);
        }
        out.push_back(parts.size() == 1 ? inst.ideal[i] : Series<K>::combination(parts));
    }
    for (auto& g : inst.quotient) out.push_back(g);
    return out;
}

template <class K>
struct MultiplicityResult {
    std::size_t e = 0;
    std::size_t dim = 0, ngens = 0;
    std::vector<std::string> param_names;
    DualBasisState<RatFunc<K>> dual;

    const std::vector<ParamPoly<K>>& polylist() const& { return dual.polylist; }
    const std::vector<ExactMatrix<ParamPoly<K>>>& matlist() const& { return dual.matlist; }
    // by value on temporaries, so range-for over multiplicity(...).matlist() is safe
    std::vector<ParamPoly<K>> polylist() && { return std::move(dual.polylist); }
    std::vector<ExactMatrix<ParamPoly<K>>> matlist() && { return std::move(dual.matlist); }
};

/// e_R(J) for Cohen-Macaulay R (not checked), as the colength of the generic
/// reduction over K(t).
template <class K>
MultiplicityResult<K> multiplicity(const ProblemInstance<K>& inst) {
    MultiplicityResult<K> r;
    r.dim = inst.dim;
    r.ngens = inst.ideal.size();
    r.param_names = parameter_names(inst.dim, inst.ideal.size());
    r.dual = compute_dual_basis(generic_generators(inst), inst.order, inst.caps, inst.solver);
    r.e = r.dual.length();
    return r;
}

/// Sufficient test that Q_a is a reduction: no PolyList entry vanishes at a
/// and every MatList matrix keeps full column rank at a. A false answer does
/// not prove that Q_a is not a reduction.
template <class K>
bool certify(std::span<const K> a, const MultiplicityResult<K>& res) {
    if (a.size() != res.param_names.size())
        throw ValidationError("expected " + std::to_string(res.param_names.size()) + " coefficients");
    try {
        for (auto& p : res.polylist())
            if (p.evaluate(a).is_zero()) return false;
        for (auto& m : res.matlist())
            if (!nonsingular_at(m, a)) return false;
    } catch (const ValidationError&) {
        return false;
    }
    return true;
}

enum class CertificateMode { Symbolic, LengthVerified };

inline std::string to_string(CertificateMode m) {
    return m == CertificateMode::Symbolic ? "symbolic" : "length-verified";
}

template <class K>
struct ReductionCertificate {
    std::size_t rows = 0, cols = 0; // d x (m-d)
    std::vector<K> a;               // row-major
    CertificateMode mode = CertificateMode::Symbolic;
    std::vector<Series<K>> generators; // the d reduction generators
};

/// Integer points in order: max-norm shells 0, 1, 2, ...; inside a shell,
/// lexicographic with entries ranked 0, 1, -1, 2, -2, ... Over F_p points
/// with equal residues are visited once. The callback returns true to stop.
template <class K, class F>
bool enumerate_shells(std::size_t n, long bound, F&& visit) {
    std::set<std::vector<K>> seen;
    auto value = [](long rank) { return rank == 0 ? 0 : (rank % 2 ? (rank + 1) / 2 : -rank / 2); };
    for (long s = 0; s <= bound; ++s) {
        std::vector<long> ranks(n, 0);
        const long top = 2 * s;
        while (true) {
            long norm = 0;
            std::vector<K> pt;
            for (auto r : ranks) {
                long v = value(r);
                norm = std::max(norm, v < 0 ? -v : v);
                pt.push_back(K(v));
            }
            bool fresh = true;
            if constexpr (std::is_same_v<K, Zp>) fresh = seen.insert(pt).second;
            if (norm == s && fresh && visit(std::span<const K>(pt))) return true;
            std::size_t k = n;
            while (k > 0 && ranks[k - 1] == top) ranks[--k] = 0;
            if (k == 0) break;
            ++ranks[k - 1];
        }
        if (n == 0) break;
    }
    return false;
}

template <class K>
ReductionCertificate<K> make_certificate(const ProblemInstance<K>& inst, std::span<const K> a, CertificateMode mode) {
    ReductionCertificate<K> c;
    c.rows = inst.dim;
    c.cols = inst.ideal.size() - inst.dim;
    c.a.assign(a.begin(), a.end());
    c.mode = mode;
    auto gens = specialized_generators(inst, a);
    c.generators.assign(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(inst.dim));
    return c;
}

/// First point of the shell enumeration passing certify.
template <class K>
ReductionCertificate<K> find_reduction(const ProblemInstance<K>& inst, const MultiplicityResult<K>& res, long bound) {
    std::optional<ReductionCertificate<K>> found;
    enumerate_shells<K>(inst.nparams(), bound, [&](std::span<const K> a) {
        if (!certify(a, res)) return false;
        found = make_certificate(inst, a, CertificateMode::Symbolic);
        return true;
    });
    if (!found) throw SearchExhausted(static_cast<int>(bound));
    return *found;
}

/// Colength of the specialized generators, or nullopt when it exceeds
/// `limit` or is infinite.
template <class K>
std::optional<std::size_t> specialized_length(const ProblemInstance<K>& inst, std::span<const K> a,
                                              std::size_t limit = 0) {
    ResourceCaps caps = inst.caps;
    caps.max_length = limit;
    try {
        return compute_dual_basis(specialized_generators(inst, a), inst.order, caps, inst.solver).length();
    } catch (const NotZeroDimensional&) {
        return std::nullopt;
    } catch (const CapExceeded&) {
        if (limit == 0) throw;
        return std::nullopt;
    }
}

/// Q_a is a reduction iff the colength of P_a equals e (the colength is
/// never smaller, so the run stops as soon as it passes e).
template <class K>
bool verify_reduction_by_length(const ProblemInstance<K>& inst, std::span<const K> a, std::size_t e) {
    auto len = specialized_length(inst, a, e);
    return len && *len == e;
}

template <class K>
bool verify_reduction_by_length(const ProblemInstance<K>& inst, std::span<const K> a) {
    return verify_reduction_by_length(inst, a, multiplicity(inst).e);
}

/// Shell search that decides each point by length instead of the certificate.
template <class K>
ReductionCertificate<K> find_reduction_by_length(const ProblemInstance<K>& inst, std::size_t e, long bound) {
    std::optional<ReductionCertificate<K>> found;
    enumerate_shells<K>(inst.nparams(), bound, [&](std::span<const K> a) {
        if (!verify_reduction_by_length(inst, a, e)) return false;
        found = make_certificate(inst, a, CertificateMode::LengthVerified);
        return true;
    });
    if (!found) throw SearchExhausted(static_cast<int>(bound));
    return *found;
}

/// Thread-safe map from canonical instance text to e.
class MultiplicityCache {
public:
    std::optional<std::size_t> find(const std::string& key) const {
        std::lock_guard lock(mu_);
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }
    void store(const std::string& key, std::size_t e) {
        std::lock_guard lock(mu_);
        map_[key] = e;
    }
    std::size_t size() const {
        std::lock_guard lock(mu_);
        return map_.size();
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, std::size_t> map_;
};

inline MultiplicityCache& default_cache() {
    static MultiplicityCache cache;
    return cache;
}

template <class K>
struct MembershipResult {
    bool member = false;
    std::size_t e_ideal = 0, e_extended = 0;
    std::optional<MultiplicityResult<K>> ideal_run, extended_run; // absent when cached
};

/// h is integral over J iff e(J) = e(J + <h>) (R equidimensional).
template <class K>
MembershipResult<K> is_in_integral_closure(const ProblemInstance<K>& inst, const Series<K>& h,
                                           MultiplicityCache* cache = &default_cache()) {
    ProblemInstance<K> ext = inst;
    ext.ideal.push_back(h);
    inst.validate();
    ext.validate();
    const std::uint32_t p = std::is_same_v<K, Zp> ? Zp::modulus() : 0;
    auto run = [p](const ProblemInstance<K>& pi) {
        std::optional<Zp::Scope> scope;
        if (p) scope.emplace(p);
        return multiplicity(pi);
    };

    MembershipResult<K> out;
    std::optional<std::size_t> cached = cache ? cache->find(inst.canonical()) : std::nullopt;
    std::future<MultiplicityResult<K>> first;
    if (!cached) first = std::async(std::launch::async, run, std::cref(inst));
    out.extended_run = run(ext);
    out.e_extended = out.extended_run->e;
    if (cached) {
        out.e_ideal = *cached;
    } else {
        out.ideal_run = first.get();
        out.e_ideal = out.ideal_run->e;
    }
    if (cache) {
        cache->store(inst.canonical(), out.e_ideal);
        cache->store(ext.canonical(), out.e_extended);
    }
    out.member = out.e_ideal == out.e_extended;
    return out;
}

} // namespace hsmult

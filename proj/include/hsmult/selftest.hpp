#pragma once

#include <random>
#include <string>
#include <vector>

#include "hsmult/oracles.hpp"
#include "hsmult/reduction.hpp"

namespace hsmult {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::vector<std::string> messages; // first few failures
    bool passed() const { return cases > 0 && failures == 0; }
};

/// Random m-primary monomial ideal: a pure power of every variable plus a few
/// mixed monomials, with staircase size at most max_length.
inline std::vector<Exponent> random_monomial_ideal(std::mt19937_64& rng, std::size_t n, std::size_t max_length) {
    std::uniform_int_distribution<int> pure(1, 5), small(0, 3), extra(0, 2);
    while (true) {
        std::vector<Exponent> gens;
        for (std::size_t i = 0; i < n; ++i) {
            Exponent e(n);
            e[i] = pure(rng);
            gens.push_back(e);
        }
        int k = n == 1 ? 0 : extra(rng);
        for (int j = 0; j < k; ++j) {
            Exponent e(n);
            for (std::size_t i = 0; i < n; ++i) e[i] = small(rng);
            if (!e.is_zero()) gens.push_back(e);
        }
        auto len = monomial_length(gens);
        if (len && *len <= max_length && *len > 0) return gens;
    }
}

inline ProblemInstance<Rational> monomial_instance(const std::vector<Exponent>& gens) {
    const std::size_t n = gens.front().size();
    ProblemInstance<Rational> inst;
    for (std::size_t i = 0; i < n; ++i) inst.variables.push_back("x" + std::to_string(i + 1));
    inst.order = MonomialOrder(OrderKind::GradedLex, n);
    for (auto& g : gens) {
        SparsePoly<Rational> p(inst.order);
        p.add_term(g, Rational(1));
        inst.ideal.push_back(p);
    }
    inst.dim = n;
    return inst;
}

inline std::string describe(const std::vector<Exponent>& gens) {
    std::string s = "<";
    for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? "," : "") + gens[i].to_string();
    return s + ">";
}

/// Dual-space length against the brute-force count on random monomial ideals.
inline SuiteResult selftest_monomial_length(std::uint64_t seed, std::size_t count) {
    SuiteResult r;
    r.name = "length = monomial_length on random monomial ideals";
    std::mt19937_64 rng(seed);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t n = 1 + c % 3;
        auto gens = random_monomial_ideal(rng, n, 40);
        auto inst = monomial_instance(gens);
        std::size_t expect = *monomial_length(gens);
        std::size_t got = compute_dual_basis(inst.ideal, inst.order).length();
        ++r.cases;
        if (got != expect) {
            ++r.failures;
            if (r.messages.size() < 5)
                r.messages.push_back(describe(gens) + ": " + std::to_string(got) + " vs " + std::to_string(expect));
        }
    }
    return r;
}

/// Multiplicity against the Hilbert-Samuel fit on random monomial ideals.
inline SuiteResult selftest_multiplicity_fit(std::uint64_t seed, std::size_t count, std::size_t max_e = 30) {
    SuiteResult r;
    r.name = "multiplicity = monomial_multiplicity_fit on random monomial ideals";
    std::mt19937_64 rng(seed);
    std::size_t attempts = 0;
    while (r.cases < count && attempts < 50 * count) {
        ++attempts;
        std::size_t n = 1 + attempts % 3;
        auto gens = random_monomial_ideal(rng, n, 40);
        std::size_t expect = 0;
        for (unsigned k_max = static_cast<unsigned>(n) + 3;; k_max += 2) {
            try {
                expect = monomial_multiplicity_fit(gens, n, k_max);
                break;
            } catch (const NotStabilized&) {
                if (k_max > 14) throw;
            }
        }
        if (expect > max_e) continue;
        std::size_t got = multiplicity(monomial_instance(gens)).e;
        ++r.cases;
        if (got != expect) {
            ++r.failures;
            if (r.messages.size() < 5)
                r.messages.push_back(describe(gens) + ": " + std::to_string(got) + " vs " + std::to_string(expect));
        }
    }
    return r;
}

/// Dual-space length against the truncated vector-space computation on
/// random polynomial perturbations of monomial ideals.
inline SuiteResult selftest_vector_space(std::uint64_t seed, std::size_t count) {
    SuiteResult r;
    r.name = "length = vector_space_length on random polynomial ideals";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3), deg(0, 2);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t n = 2 + c % 2;
        auto gens = random_monomial_ideal(rng, n, n == 2 ? 20 : 15);
        MonomialOrder order(OrderKind::GradedLex, n);
        std::vector<SparsePoly<Rational>> F;
        for (auto& g : gens) {
            SparsePoly<Rational> p(order);
            p.add_term(g, Rational(1));
            // add a couple of terms of equal or higher degree
            for (int j = 0; j < 2; ++j) {
                Exponent e(n);
                for (std::size_t i = 0; i < n; ++i) e[i] = deg(rng);
                if (e.degree() < g.degree()) e = e + Exponent::unit(n, c % n) + Exponent::unit(n, 0);
                if (e.degree() >= g.degree()) p.add_term(e, Rational(coeff(rng)));
            }
            if (p.is_zero()) p.add_term(g, Rational(1));
            F.push_back(p);
        }
        ++r.cases;
        std::size_t got = 0, expect = 0;
        try {
            expect = vector_space_length(F, 40);
            got = compute_dual_basis(F, order).length();
        } catch (const Error& e) {
            ++r.failures;
            if (r.messages.size() < 5) r.messages.push_back(std::string("error: ") + e.what());
            continue;
        }
        if (got != expect) {
            ++r.failures;
            if (r.messages.size() < 5)
                r.messages.push_back("case " + std::to_string(c) + ": " + std::to_string(got) + " vs " + std::to_string(expect));
        }
    }
    return r;
}

inline std::vector<SuiteResult> run_selftest(std::uint64_t seed = 20240601) {
    return {selftest_monomial_length(seed, 120), selftest_multiplicity_fit(seed + 1, 25),
            selftest_vector_space(seed + 2, 30)};
}

} // namespace hsmult

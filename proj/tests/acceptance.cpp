// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "hsmult/hsmult.hpp"
#include "hsmult/selftest.hpp"

using namespace hsmult;
using Q = Rational;

namespace {

std::string read(const std::string& name) {
    std::ifstream in(std::string(HSMULT_FIXTURES) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProblemInstance<Q> load(const std::string& name) { return build_instance<Q>(parse_instance(read(name))); }

double seconds_since(std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct Check {
    std::string detail;
    bool ok = true;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

const char* rational_fixtures[] = {"example1.json", "example2.json", "example3_j1.json", "example3_j2.json",
                                   "example4.json", "example4_perturbed.json"};

Check ac1() {
    Check c;
    auto t = std::chrono::steady_clock::now();
    auto inst = load("example1.json");
    auto r = multiplicity(inst);
    c.require(r.e == 5, "e = " + std::to_string(r.e));
    c.require(r.dual.xis.size() == 1, "expected one accepted element");
    if (r.dual.xis.size() == 1) {
        // a/x^4y - 1/x^2y^2 + b/xy^3 scaled by 1/a
        RatFunc<Q> a = RatFunc<Q>::param(0), b = RatFunc<Q>::param(1);
        DualElement<RatFunc<Q>> expect(inst.order);
        expect.add_term(Exponent{3, 0}, RatFunc<Q>(1));
        expect.add_term(Exponent{1, 1}, RatFunc<Q>(-1) / a);
        expect.add_term(Exponent{0, 2}, b / a);
        c.require(r.dual.xis[0] == expect, "xi = " + r.dual.xis[0].to_string(inst.variables, r.param_names));
    }
    c.require(r.polylist().size() == 1 && r.polylist()[0] == ParamPoly<Q>::var(0), "PolyList is not [t_1_3]");
    Q zero_a[] = {Q(0), Q(1)};
    c.require(!certify(std::span<const Q>(zero_a), r), "certify accepts a = 0");
    double s = seconds_since(t);
    c.require(s < 1.0, "took " + std::to_string(s) + " s");
    return c;
}

Check ac2() {
    Check c;
    auto t = std::chrono::steady_clock::now();
    auto r = multiplicity(load("example2.json"));
    c.require(r.e == 18, "e = " + std::to_string(r.e));
    c.require(r.dual.t1.size() == 14 && r.dual.xis.size() == 4,
              "split " + std::to_string(r.dual.t1.size()) + " + " + std::to_string(r.dual.xis.size()));
    c.require(seconds_since(t) < 10.0, "too slow");
    return c;
}

Check ac3() {
    Check c;
    auto t = std::chrono::steady_clock::now();
    auto inst = load("example3_j1.json");
    auto h = parse_expression<Q>(parse_instance(read("example3_j1.json")), "x*z");
    auto m = is_in_integral_closure(inst, h, nullptr);
    c.require(m.member, "x*z not reported integral");
    c.require(m.e_ideal == 10 && m.ideal_run && m.ideal_run->dual.t1.size() == 8 && m.ideal_run->dual.xis.size() == 2,
              "e(J1) run is not 10 = 8 + 2");
    c.require(m.e_extended == 10 && m.extended_run && m.extended_run->dual.t1.size() == 7 &&
                  m.extended_run->dual.xis.size() == 3,
              "e(J1 + xz) run is not 10 = 7 + 3");
    c.require(seconds_since(t) < 10.0, "too slow");
    return c;
}

Check ac4() {
    Check c;
    auto t = std::chrono::steady_clock::now();
    auto r = multiplicity(load("example4.json"));
    double s1 = seconds_since(t);
    t = std::chrono::steady_clock::now();
    auto p = multiplicity(load("example4_perturbed.json"));
    double s2 = seconds_since(t);
    c.require(r.e == 24, "e = " + std::to_string(r.e));
    c.require(p.e == r.e, "perturbed e = " + std::to_string(p.e));
    c.require(p.polylist() == r.polylist(), "PolyList differs");
    c.require(p.matlist() == r.matlist(), "MatList differs");
    c.require(s1 < 30.0 && s2 < 30.0, "too slow");
    return c;
}

Check ac5() {
    Check c;
    auto lengths = selftest_monomial_length(20240601, 120);
    auto fits = selftest_multiplicity_fit(20240602, 25);
    c.require(lengths.cases >= 100 && lengths.passed(), std::to_string(lengths.failures) + " length mismatches");
    c.require(fits.cases >= 20 && fits.passed(), std::to_string(fits.failures) + " multiplicity mismatches");
    for (auto& m : lengths.messages) c.require(false, m);
    for (auto& m : fits.messages) c.require(false, m);
    return c;
}

Check ac6() {
    Check c;
    for (auto name : rational_fixtures) {
        auto inst = load(name);
        auto r = multiplicity(inst);
        auto cert = find_reduction(inst, r, inst.search_bound);
        c.require(verify_reduction_by_length(inst, std::span<const Q>(cert.a), r.e),
                  std::string(name) + ": reduction fails the length check");
    }
    Zp::Scope s(32003);
    auto inst = build_instance<Zp>(parse_instance(read("example1_f32003.json")));
    auto r = multiplicity(inst);
    auto cert = find_reduction(inst, r, inst.search_bound);
    c.require(verify_reduction_by_length(inst, std::span<const Zp>(cert.a), r.e), "F_32003: length check fails");
    return c;
}

Check ac7() {
    Check c;
    std::size_t count = 0;
    for (auto name : {"example1.json", "example2.json", "example3_j1.json", "example3_j2.json", "example4.json"}) {
        for (auto& m : multiplicity(load(name)).matlist()) {
            ++count;
            auto exact = kernel(m);
            c.require(kernel_via_modp(m, ModpPolicy{}) == exact, std::string(name) + ": mod p kernel differs");
            ModpPolicy bad;
            bad.forced_points.assign(2, std::vector<std::uint32_t>(detail::param_count(m), 0));
            ModpStats st;
            c.require(kernel_via_modp(m, bad, &st) == exact, std::string(name) + ": forced point result differs");
        }
    }
    // a point where the image drops rank must be retried
    using P = ParamPoly<Q>;
    ExactMatrix<P> m{{P::var(0), P()}, {P::var(1), P(1)}};
    ModpPolicy bad;
    bad.forced_points = {{0, 0}};
    ModpStats st;
    c.require(kernel_via_modp(m, bad, &st).trivial() && st.retries == 1, "retry path not taken");
    c.require(count > 0, "no MatList matrices");
    return c;
}

Check ac8() {
    Check c;
    auto check = [&](const std::string& name, const std::vector<std::string>& bad) {
        for (auto& b : bad) c.require(false, name + ": " + b);
    };
    SolverConfig off;
    off.modp = ModpMode::Off;
    for (auto name : rational_fixtures) {
        auto inst = load(name);
        auto r = multiplicity(inst);
        check(name, check_invariants(r.dual));
        // every kernel at most one-dimensional: UnexpectedNullity would have thrown
        auto exact = compute_dual_basis(generic_generators(inst), inst.order, inst.caps, off);
        check(std::string(name) + " (exact solver)", check_invariants(exact));
        std::vector<Series<Q>> given = inst.ideal;
        given.insert(given.end(), inst.quotient.begin(), inst.quotient.end());
        auto plain = compute_dual_basis(given, inst.order, inst.caps);
        check(std::string(name) + " (given generators)", check_invariants(plain));
    }
    return c;
}

Check ac9() {
    Check c;
    Zp::Scope s(32003);
    auto inst = build_instance<Zp>(parse_instance(read("example1_f32003.json")));
    auto r = multiplicity(inst);
    c.require(r.e == 5, "e = " + std::to_string(r.e));
    auto cert = find_reduction(inst, r, inst.search_bound);
    auto again = find_reduction(inst, multiplicity(inst), inst.search_bound);
    c.require(cert.a == again.a, "search is not deterministic");
    c.require(cert.mode == CertificateMode::Symbolic, "not certified");
    c.require(certify(std::span<const Zp>(cert.a), r), "certificate does not hold");
    return c;
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"AC1 example 1: e = 5, xi and PolyList", ac1},
        {"AC2 example 2: e = 18 = 14 + 4", ac2},
        {"AC3 example 3: e = 10 both ways, xz integral", ac3},
        {"AC4 example 4: e = 24, perturbation invariant", ac4},
        {"AC5 oracle equivalence on random monomial ideals", ac5},
        {"AC6 reductions pass the length check", ac6},
        {"AC7 mod p kernels match exact kernels", ac7},
        {"AC8 invariants on every fixture", ac8},
        {"AC9 finite field run of example 1", ac9},
    };
    int failed = 0;
    for (auto& [name, fn] : criteria) {
        Check c;
        try {
            c = fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        std::cout << (c.ok ? "PASS " : "FAIL ") << name;
        if (!c.ok) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        if (!c.ok) ++failed;
    }
    return failed == 0 ? 0 : 1;
}

#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace testing_helpers;

namespace {

std::vector<Series<Q>> ex1() { return {series<Q>("x^3"), series<Q>("y^2"), series<Q>("x*y")}; }

std::vector<Series<QT>> ex1_generic() {
    return {series<QT>("x^3 + a*x*y"), series<QT>("y^2 + b*x*y")};
}

} // namespace

TEST(BuildMatrix, MonomialGeneratorsOnOneTerm) {
    auto m = build_matrix(ex1(), std::vector<DualTerm>{{3, 0}});
    // only x^3 hits 1/x^4y, giving the row for 1/xy
    ASSERT_EQ(m.rows(), 1u);
    EXPECT_EQ(m.at(0, 0), Q(1));
    EXPECT_EQ(m.tags()[0].generator, 0u);
    EXPECT_EQ(m.tags()[0].term, (Exponent{0, 0}));
}

TEST(BuildMatrix, GenericGeneratorsOnThreeTerms) {
    std::vector<DualTerm> gamma{{3, 0}, {1, 1}, {0, 2}};
    auto m = build_matrix(ex1_generic(), gamma);
    ASSERT_EQ(m.cols(), 3u);
    ASSERT_EQ(m.rows(), 2u);
    PT a = PT::var(0), b = PT::var(1);
    std::vector<PT> r0{m.at(0, 0), m.at(0, 1), m.at(0, 2)}, r1{m.at(1, 0), m.at(1, 1), m.at(1, 2)};
    EXPECT_EQ(r0, (std::vector<PT>{PT(1), a, PT()}));
    EXPECT_EQ(r1, (std::vector<PT>{PT(), b, PT(1)}));
    auto k = kernel(m);
    ASSERT_FALSE(k.trivial());
    EXPECT_EQ(*k.vector, (std::vector<PT>{a, PT(-1), b}));
}

TEST(BuildMatrix, RejectsBadInput) {
    EXPECT_THROW(build_matrix(ex1(), {}), ValidationError);
    EXPECT_THROW(build_matrix(ex1(), std::vector<DualTerm>{{0, 2}, {1, 1}}), ValidationError);
}

TEST(Engine, MonomialExampleHasNoAcceptedElements) {
    auto st = compute_dual_basis(ex1(), glex(2));
    EXPECT_EQ(st.length(), 4u);
    EXPECT_TRUE(st.xis.empty());
    EXPECT_TRUE(check_invariants(st).empty());
}

TEST(Engine, GenericExampleTrace) {
    auto st = initial_state(ex1_generic(), glex(2));
    EXPECT_EQ(st.t1.size(), 4u);
    EXPECT_EQ(st.candidates.size(), 3u);
    // smallest open candidate is 1/xy^3, which is rejected
    step(st);
    EXPECT_TRUE(st.rejected.contains(Exponent{0, 2}));
    step(st);
    EXPECT_TRUE(st.rejected.contains(Exponent{1, 1}));
    step(st);
    ASSERT_EQ(st.xis.size(), 1u);
    EXPECT_EQ(st.xis.front().to_string(xyz(2), std::vector<std::string>{"a", "b"}),
              "1/x^4y - (1/a)/x^2y^2 + (b/a)/xy^3");
    EXPECT_EQ(st.polylist, std::vector<PT>{PT::var(0)});
    while (!st.done()) step(st);
    EXPECT_EQ(st.length(), 5u);
    EXPECT_EQ(st.matlist.size(), 3u);
    EXPECT_TRUE(check_invariants(st).empty());
}

TEST(Engine, StepOnFinishedStateThrows) {
    auto st = compute_dual_basis(ex1(), glex(2));
    EXPECT_THROW(step(st), std::logic_error);
}

TEST(Engine, LengthIndependentOfOrder) {
    std::vector<std::string> gens{"x^2 + y^3", "x*y^2 - y^4", "y^5"};
    for (auto kind : {OrderKind::GradedLex, OrderKind::GradedRevLex}) {
        MonomialOrder o(kind, 2);
        std::vector<SparsePoly<Q>> F;
        for (auto& g : gens) {
            ExprContext<Q> ctx{xyz(2), o, {}, 1, 1};
            F.push_back(parse_polynomial<Q>(g, ctx));
        }
        auto st = compute_dual_basis(F, o);
        EXPECT_EQ(st.length(), vector_space_length(F, 30)) << to_string(kind);
        EXPECT_TRUE(check_invariants(st).empty());
    }
}

TEST(Engine, SeriesGeneratorsMatchTheirTruncations) {
    auto f = parse_instance(read_fixture("series.txt"));
    auto inst = build_instance<Q>(f);
    auto st = compute_dual_basis(inst.ideal, inst.order, inst.caps);
    std::vector<SparsePoly<Q>> polys;
    for (auto& s : inst.ideal) polys.push_back(s.truncate(12));
    EXPECT_EQ(st.length(), vector_space_length(polys, 30));
    EXPECT_TRUE(check_invariants(st).empty());
}

TEST(Engine, NotZeroDimensional) {
    std::vector<SparsePoly<Q>> F{poly<Q>("x^2"), poly<Q>("x*y")};
    EXPECT_THROW(compute_dual_basis(F, glex(2)), NotZeroDimensional);
}

TEST(Engine, CapsAreEnforced) {
    std::vector<SparsePoly<Q>> F{poly<Q>("x^30"), poly<Q>("y^30")};
    ResourceCaps caps;
    caps.max_terms = 100;
    EXPECT_THROW(compute_dual_basis(F, glex(2), caps), CapExceeded);
    ResourceCaps deg;
    deg.max_degree = 3;
    std::vector<SparsePoly<Q>> G{poly<Q>("x^3 + y^3"), poly<Q>("x*y")};
    EXPECT_THROW(compute_dual_basis(G, glex(2), deg), CapExceeded);
}

TEST(Engine, PrimeFieldMatchesRationals) {
    std::vector<SparsePoly<Q>> F{poly<Q>("x^2 + y^3"), poly<Q>("x*y^2 - y^4"), poly<Q>("y^5")};
    std::size_t lq = compute_dual_basis(F, glex(2)).length();
    Zp::Scope s(32003);
    std::vector<SparsePoly<Zp>> G{poly<Zp>("x^2 + y^3"), poly<Zp>("x*y^2 - y^4"), poly<Zp>("y^5")};
    auto st = compute_dual_basis(G, glex(2));
    EXPECT_EQ(st.length(), lq);
    EXPECT_TRUE(check_invariants(st).empty());
}

TEST(Engine, SolverModesAgree) {
    auto inst = fixture_q("example2.json");
    auto gens = generic_generators(inst);
    SolverConfig off, on;
    off.modp = ModpMode::Off;
    on.modp = ModpMode::On;
    auto a = compute_dual_basis(gens, inst.order, inst.caps, off);
    auto b = compute_dual_basis(gens, inst.order, inst.caps, on);
    EXPECT_EQ(a.length(), b.length());
    EXPECT_EQ(a.xis, b.xis);
    EXPECT_EQ(a.polylist, b.polylist);
    EXPECT_GT(b.stats.solver.modp_solves, 0u);
    EXPECT_EQ(a.stats.solver.modp_solves, 0u);
}

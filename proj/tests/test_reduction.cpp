#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace testing_helpers;

namespace {

std::vector<Q> qs(std::initializer_list<long> v) {
    std::vector<Q> out;
    for (long x : v) out.push_back(Q(x));
    return out;
}

std::size_t split_accepted(const MultiplicityResult<Q>& r) { return r.dual.xis.size(); }

} // namespace

TEST(Generic, ParameterNamesAndGenerators) {
    EXPECT_EQ(parameter_names(2, 4), (std::vector<std::string>{"t_1_3", "t_1_4", "t_2_3", "t_2_4"}));
    auto inst = fixture_q("example1.json");
    EXPECT_EQ(inst.nparams(), 2u);
    auto g = generic_generators(inst);
    ASSERT_EQ(g.size(), 2u);
    auto names = parameter_names(2, 3);
    EXPECT_EQ(g[0].to_string(inst.variables, names), "x^3 + t_1_3*x*y");
    EXPECT_EQ(g[1].to_string(inst.variables, names), "t_2_3*x*y + y^2");
    auto s = specialized_generators(inst, std::span<const Q>(qs({1, 0})));
    EXPECT_EQ(s[0].to_string(inst.variables), "x^3 + x*y");
    EXPECT_EQ(s[1].to_string(inst.variables), "y^2");
}

TEST(Multiplicity, Example1) {
    auto r = multiplicity(fixture_q("example1.json"));
    EXPECT_EQ(r.e, 5u);
    EXPECT_EQ(r.dual.t1.size(), 4u);
    ASSERT_EQ(r.polylist().size(), 1u);
    EXPECT_EQ(r.polylist()[0].to_string(r.param_names), "t_1_3");
    EXPECT_EQ(r.matlist().size(), 3u);
}

TEST(Multiplicity, WorkedExamples) {
    auto r2 = multiplicity(fixture_q("example2.json"));
    EXPECT_EQ(r2.e, 18u);
    EXPECT_EQ(r2.dual.t1.size(), 14u);
    EXPECT_EQ(split_accepted(r2), 4u);
    auto j1 = multiplicity(fixture_q("example3_j1.json"));
    EXPECT_EQ(j1.e, 10u);
    EXPECT_EQ(split_accepted(j1), 2u);
    auto j2 = multiplicity(fixture_q("example3_j2.json"));
    EXPECT_EQ(j2.e, 10u);
    EXPECT_EQ(split_accepted(j2), 3u);
    auto r4 = multiplicity(fixture_q("example4.json"));
    EXPECT_EQ(r4.e, 24u);
    EXPECT_EQ(split_accepted(r4), 6u);
}

TEST(Multiplicity, PerturbationDoesNotChangeCertificate) {
    auto a = multiplicity(fixture_q("example4.json"));
    auto b = multiplicity(fixture_q("example4_perturbed.json"));
    EXPECT_EQ(a.e, b.e);
    EXPECT_EQ(a.polylist(), b.polylist());
    EXPECT_EQ(a.matlist(), b.matlist());
}

TEST(Multiplicity, DimensionZeroIsTheColength) {
    ProblemInstance<Q> inst;
    inst.variables = {"x", "y"};
    inst.order = glex(2);
    inst.quotient = {series<Q>("x^2"), series<Q>("y^3")};
    inst.dim = 0;
    EXPECT_EQ(multiplicity(inst).e, 6u);
}

TEST(Certify, Example1Points) {
    auto inst = fixture_q("example1.json");
    auto r = multiplicity(inst);
    EXPECT_TRUE(certify(std::span<const Q>(qs({1, 1})), r));
    EXPECT_FALSE(certify(std::span<const Q>(qs({0, 5})), r));
    EXPECT_THROW(certify(std::span<const Q>(qs({1})), r), ValidationError);
}

TEST(Shells, Order) {
    std::vector<std::vector<long>> seen;
    enumerate_shells<Q>(2, 1, [&](std::span<const Q> a) {
        std::vector<long> v;
        for (auto& x : a) v.push_back(std::stol(x.to_string()));
        seen.push_back(v);
        return false;
    });
    std::vector<std::vector<long>> expect{{0, 0}, {0, 1}, {0, -1}, {1, 0}, {1, 1}, {1, -1}, {-1, 0}, {-1, 1}, {-1, -1}};
    EXPECT_EQ(seen, expect);
}

TEST(Shells, PrimeFieldDeduplicates) {
    Zp::Scope s(2);
    std::size_t count = 0;
    enumerate_shells<Zp>(2, 3, [&](std::span<const Zp>) {
        ++count;
        return false;
    });
    EXPECT_EQ(count, 4u);
}

TEST(FindReduction, Fixtures) {
    struct Case {
        const char* file;
        std::vector<Q> a;
    };
    std::vector<Case> cases{{"example1.json", qs({1, 1})},
                            {"example2.json", qs({0, 0, 1})},
                            {"example3_j1.json", qs({1, 0})},
                            {"example3_j2.json", qs({1, 0, 0, 1})},
                            {"example4.json", qs({0, 1, 0})}};
    for (auto& c : cases) {
        auto inst = fixture_q(c.file);
        auto r = multiplicity(inst);
        auto cert = find_reduction(inst, r, 3);
        EXPECT_EQ(cert.a, c.a) << c.file;
        EXPECT_EQ(cert.mode, CertificateMode::Symbolic);
        EXPECT_EQ(cert.generators.size(), inst.dim);
        EXPECT_TRUE(verify_reduction_by_length(inst, std::span<const Q>(cert.a), r.e)) << c.file;
    }
}

TEST(VerifyByLength, Example1) {
    auto inst = fixture_q("example1.json");
    EXPECT_TRUE(verify_reduction_by_length(inst, std::span<const Q>(qs({1, 1}))));
    EXPECT_FALSE(verify_reduction_by_length(inst, std::span<const Q>(qs({0, 0}))));
    // x(x^2 + y), y^2 has colength 6
    EXPECT_FALSE(verify_reduction_by_length(inst, std::span<const Q>(qs({1, 0})), 5));
    EXPECT_TRUE(verify_reduction_by_length(inst, std::span<const Q>(qs({1, -1})), 5));
    auto cert = find_reduction_by_length(inst, 5, 2);
    EXPECT_EQ(cert.a, qs({1, 1}));
    EXPECT_EQ(cert.mode, CertificateMode::LengthVerified);
}

TEST(VerifyByLength, ParameterIdealIsItsOwnReduction) {
    ProblemInstance<Q> inst;
    inst.variables = {"x", "y"};
    inst.order = glex(2);
    inst.ideal = {series<Q>("x^2"), series<Q>("y^3")};
    inst.dim = 2;
    EXPECT_EQ(multiplicity(inst).e, 6u);
    EXPECT_TRUE(verify_reduction_by_length(inst, std::span<const Q>{}));
}

TEST(FindReduction, ExhaustedWithinBound) {
    // a = 0 gives x^2, xy, which is not m-primary
    ProblemInstance<Q> inst;
    inst.variables = {"x", "y"};
    inst.order = glex(2);
    inst.ideal = {series<Q>("x^2"), series<Q>("x*y"), series<Q>("y^2")};
    inst.dim = 2;
    auto r = multiplicity(inst);
    EXPECT_EQ(r.e, 4u);
    EXPECT_THROW(find_reduction(inst, r, 0), SearchExhausted);
    // x^2, xy + y^2 is a reduction too, but the certificate cannot see it
    EXPECT_TRUE(verify_reduction_by_length(inst, std::span<const Q>(qs({0, 1})), 4));
    EXPECT_FALSE(certify(std::span<const Q>(qs({0, 1})), r));
    EXPECT_EQ(find_reduction(inst, r, 1).a, qs({1, 0}));
}

TEST(FindReduction, PrimeFieldSmallPrime) {
    // over F_2 the point (1, 0) already works: x^2 + xy, y^2
    Zp::Scope s(2);
    ProblemInstance<Zp> inst;
    inst.variables = {"x", "y"};
    inst.order = glex(2);
    inst.ideal = {series<Zp>("x^2"), series<Zp>("y^2"), series<Zp>("x*y")};
    inst.dim = 2;
    auto r = multiplicity(inst);
    auto c = find_reduction(inst, r, 3);
    EXPECT_TRUE(verify_reduction_by_length(inst, std::span<const Zp>(c.a), r.e));
}

TEST(Membership, Example3) {
    auto inst = fixture_q("example3_j1.json");
    MultiplicityCache cache;
    auto m = is_in_integral_closure(inst, series<Q>("x*z", 3), &cache);
    EXPECT_TRUE(m.member);
    EXPECT_EQ(m.e_ideal, 10u);
    EXPECT_EQ(m.e_extended, 10u);
    ASSERT_TRUE(m.extended_run);
    EXPECT_EQ(m.extended_run->dual.xis.size(), 3u);
    EXPECT_EQ(cache.size(), 2u);
    // second query hits the cache for J
    auto again = is_in_integral_closure(inst, series<Q>("x*z", 3), &cache);
    EXPECT_FALSE(again.ideal_run);
    EXPECT_TRUE(again.member);
}

TEST(Membership, GeneratorIsAlwaysIntegral) {
    auto inst = fixture_q("example1.json");
    EXPECT_TRUE(is_in_integral_closure(inst, inst.ideal.front(), nullptr).member);
}

TEST(Membership, SquaresOfTheMaximalIdeal) {
    ProblemInstance<Q> inst;
    inst.variables = {"x", "y"};
    inst.order = glex(2);
    inst.ideal = {series<Q>("x^2"), series<Q>("y^2")};
    inst.dim = 2;
    auto xy = is_in_integral_closure(inst, series<Q>("x*y"), nullptr);
    EXPECT_TRUE(xy.member);
    EXPECT_EQ(xy.e_ideal, 4u);
    auto x = is_in_integral_closure(inst, series<Q>("x"), nullptr);
    EXPECT_FALSE(x.member);
    EXPECT_EQ(x.e_extended, 2u);
}

TEST(Validation, BadInstances) {
    ProblemInstance<Q> inst;
    inst.variables = {"x", "y"};
    inst.order = glex(2);
    inst.ideal = {series<Q>("x")};
    inst.dim = 2;
    EXPECT_THROW(multiplicity(inst), ValidationError);
    inst.dim = 3;
    EXPECT_THROW(inst.validate(), ValidationError);
}

#include <random>

#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace testing_helpers;

namespace {

PT a() { return PT::var(0); }
PT b() { return PT::var(1); }

template <class D>
bool in_kernel(const ExactMatrix<D>& m, const std::vector<D>& v) {
    return is_zero_vector<D>(m.multiply(v));
}

} // namespace

TEST(Kernel, ExampleVectorOverParameters) {
    ExactMatrix<PT> m{{PT(1), a(), PT()}, {PT(), b(), PT(1)}};
    auto k = kernel(m);
    ASSERT_FALSE(k.trivial());
    std::vector<PT> expect{a(), PT(-1), b()};
    EXPECT_EQ(*k.vector, expect);
}

TEST(Kernel, TrivialWhenDeterminantNonzero) {
    ExactMatrix<PT> m{{a(), PT()}, {b(), PT(1)}};
    EXPECT_TRUE(kernel(m).trivial());
    EXPECT_EQ(rank(m), 2u);
}

TEST(Kernel, ZeroOneByOne) {
    ExactMatrix<Q> m{{Q(0)}};
    auto k = kernel(m);
    ASSERT_FALSE(k.trivial());
    EXPECT_EQ(*k.vector, std::vector<Q>{Q(1)});
}

TEST(Kernel, NullityAboveOneThrows) {
    ExactMatrix<Q> m{{Q(1), Q(1), Q(1)}};
    EXPECT_THROW(kernel(m), UnexpectedNullity);
    try {
        kernel(m);
    } catch (const UnexpectedNullity& e) {
        EXPECT_EQ(e.nullity(), 2u);
    }
}

TEST(Kernel, CanonicalForms) {
    ExactMatrix<Q> m{{Q(2), Q(4)}};
    // primitive integer vector, first nonzero entry positive
    EXPECT_EQ(*kernel(m).vector, (std::vector<Q>{Q(2), Q(-1)}));
    ExactMatrix<Q> m2{{Q(1, 2), Q(-1, 3)}};
    EXPECT_EQ(*kernel(m2).vector, (std::vector<Q>{Q(2), Q(3)}));
    Zp::Scope s(7);
    ExactMatrix<Zp> m3{{Zp(3), Zp(1)}};
    EXPECT_EQ(*kernel(m3).vector, (std::vector<Zp>{Zp(1), Zp(4)}));
}

TEST(Rank, Examples) {
    ExactMatrix<Q> id{{Q(1), Q(0), Q(0)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}};
    EXPECT_EQ(rank(id), 3u);
    EXPECT_EQ(rank(ExactMatrix<Q>(2, 3)), 0u);
}

TEST(NonsingularAt, Examples) {
    ExactMatrix<PT> m{{a(), PT()}, {b(), PT(1)}};
    Q p1[] = {Q(1), Q(0)}, p2[] = {Q(0), Q(1)};
    EXPECT_TRUE(nonsingular_at<Rational>(m, p1));
    EXPECT_FALSE(nonsingular_at<Rational>(m, p2));
    ExactMatrix<PT> one{{PT(1)}};
    EXPECT_TRUE(nonsingular_at<Rational>(one, p2));
}

TEST(Elimination, FractionFreeAgreesWithRationalFunctions) {
    // random small matrices over Q[a,b] with nullity <= 1
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-2, 2), shape(1, 4);
    int checked = 0;
    for (int it = 0; it < 200 && checked < 60; ++it) {
        std::size_t rows = static_cast<std::size_t>(shape(rng)), cols = static_cast<std::size_t>(shape(rng));
        ExactMatrix<PT> m(rows, cols);
        ExactMatrix<QT> mf(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                PT e = PT(c(rng)) + PT(c(rng)) * a() + PT(c(rng)) * b() * a();
                m.at(i, j) = e;
                mf.at(i, j) = QT(e);
            }
        std::size_t r = rank(m);
        EXPECT_EQ(r, rank(mf));
        if (cols - r > 1) continue;
        ++checked;
        auto k = kernel(m);
        auto kf = kernel(mf);
        ASSERT_EQ(k.trivial(), kf.trivial());
        if (k.trivial()) continue;
        EXPECT_TRUE(in_kernel(m, *k.vector));
        std::vector<QT> lifted;
        for (auto& e : *k.vector) lifted.push_back(QT(e));
        EXPECT_EQ(lifted, *kf.vector);
    }
    EXPECT_GE(checked, 30);
}

TEST(Elimination, RankPlusNullityOverPrimeField) {
    Zp::Scope s(101);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(0, 3);
    for (int it = 0; it < 100; ++it) {
        ExactMatrix<Zp> m(3, 4);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = Zp(c(rng) == 0 ? 0 : c(rng));
        std::size_t r = rank(m);
        if (4 - r > 1) continue;
        auto k = kernel(m);
        EXPECT_EQ(k.trivial(), r == 4);
        if (!k.trivial()) {
            EXPECT_TRUE(in_kernel(m, *k.vector));
        }
    }
}

TEST(Matrix, TagsAndSelection) {
    ExactMatrix<Q> m(0, 2);
    Q r1[] = {Q(1), Q(2)}, r2[] = {Q(3), Q(4)};
    m.append_row(r1, RowTag{0, Exponent{1, 0}});
    m.append_row(r2, RowTag{1, Exponent{0, 0}});
    EXPECT_EQ(m.tags().size(), 2u);
    EXPECT_EQ(m.tags()[1].generator, 1u);
    std::size_t col[] = {1};
    EXPECT_EQ(m.columns(col).at(1, 0), Q(4));
    std::size_t row[] = {1};
    EXPECT_EQ(m.select_rows(row).at(0, 0), Q(3));
    Q bad[] = {Q(1)};
    EXPECT_THROW(m.append_row(bad), ValidationError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "forge/random.hpp"

using forge::RandomSource;

TEST(RandomSource, MatchesReferenceStream) {
    RandomSource rng(42);
    EXPECT_EQ(rng.next_u64(), 0x15780b2e0c2ec716ULL);
    EXPECT_EQ(rng.next_u64(), 0x6104d9866d113a7eULL);
    EXPECT_EQ(rng.next_u64(), 0xae17533239e499a1ULL);
    EXPECT_EQ(rng.next_u64(), 0xecb8ad4703b360a1ULL);

    RandomSource zero(0);
    EXPECT_EQ(zero.next_u64(), 0x99ec5f36cb75f2b4ULL);
    EXPECT_EQ(zero.next_u64(), 0xbf6e1f784956452aULL);
}

TEST(RandomSource, UniformUsesTop53Bits) {
    RandomSource rng(42);
    EXPECT_EQ(rng.uniform(), 0.08386297105988216);
}

TEST(RandomSource, SameSeedSameSequence) {
    RandomSource a(7), b(7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomSource, UniformRangeAndMean) {
    RandomSource rng(1);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
}

TEST(RandomSource, IndexIsUniform) {
    RandomSource rng(3);
    const std::size_t k = 7;
    const int n = 70000;
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) ++counts[rng.index(k)];
    double chi2 = 0.0;
    const double expected = static_cast<double>(n) / k;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 6 degrees of freedom, upper 0.001 quantile
    EXPECT_LT(chi2, 22.46);
}

TEST(RandomSource, IndexConsumesAWordEvenForOne) {
    RandomSource a(5), b(5);
    EXPECT_EQ(a.index(1), 0u);
    b.next_u64();
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_THROW(a.index(0), std::invalid_argument);
}

TEST(RandomSource, NormalMoments) {
    RandomSource rng(11);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        s += z;
        s2 += z * z;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(RandomSource, NormalConsumesTwoUniforms) {
    RandomSource a(9), b(9);
    const double z = a.normal();
    const double u1 = b.uniform();
    const double u2 = b.uniform();
    EXPECT_EQ(z, std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * M_PI * u2));
    EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RandomSource, BernoulliRate) {
    RandomSource rng(13);
    int hits = 0;
    for (int i = 0; i < 100000; ++i) hits += rng.bernoulli(0.3);
    EXPECT_NEAR(hits / 100000.0, 0.3, 0.006);
    RandomSource never(1);
    for (int i = 0; i < 1000; ++i) ASSERT_FALSE(never.bernoulli(0.0));
}

TEST(RandomSource, DeriveIsDeterministicAndSeparates) {
    const RandomSource master(99);
    auto a = master.derive({1, 2});
    auto b = master.derive({1, 2});
    auto c = master.derive({2, 1});
    auto d = master.derive({1, 3});
    EXPECT_EQ(a.seed(), b.seed());
    EXPECT_NE(a.seed(), c.seed());
    EXPECT_NE(a.seed(), d.seed());
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_EQ(RandomSource::mix_seed(99, {1, 2}), a.seed());
}

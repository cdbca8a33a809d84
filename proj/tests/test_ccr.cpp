#include <gtest/gtest.h>

#include <cmath>

#include "forge/ccr.hpp"
#include "oracles.hpp"

using namespace forge;

TEST(ExpandSphere, HandTraces) {
    EXPECT_DOUBLE_EQ(expand_sphere(std::vector<double>{0.5, 1.5}, 1.0).radius, 0.75);
    EXPECT_EQ(expand_sphere(std::vector<double>{0.5, 1.5}, 1.0).consumed, 1u);
    EXPECT_EQ(expand_sphere(std::vector<double>{0.5, 1.5}, 0.0).radius, 0.0);
    EXPECT_EQ(expand_sphere(std::vector<double>{}, 1.0).radius, 1.0);
    // all majority passed: leftover 1.0 spread over 2 observations
    EXPECT_DOUBLE_EQ(expand_sphere(std::vector<double>{0.5, 0.75}, 2.0).radius, 0.75 + (2.0 - 0.5 - 0.5) / 2.0);
    EXPECT_THROW(expand_sphere(std::vector<double>{1.0}, -1.0), std::invalid_argument);
}

TEST(ExpandSphere, MatchesIncrementalOracle) {
    RandomSource rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> d(rng.index(6));
        for (auto& v : d) v = 1.5 * rng.uniform();
        if (trial % 5 == 0 && !d.empty()) d[0] = 0.0;
        std::sort(d.begin(), d.end());
        const double energy = 0.05 + 0.9 * rng.uniform();
        const auto s = expand_sphere(d, energy);
        ASSERT_NEAR(s.radius, oracle::sphere_radius(d, energy), 1e-6) << "trial " << trial;
        if (s.consumed < d.size()) ASSERT_LE(s.radius, d[s.consumed]);
    }
}

TEST(Translations, OneDimensionalPushAndAccumulation) {
    RandomSource rng(1);
    const Matrix maj{{0.5}};
    const Matrix one_center{{0.0}};
    const std::vector<double> r{0.75};
    const Matrix t = compute_translations(maj, one_center, r, Norm::l2(), rng);
    EXPECT_DOUBLE_EQ(t(0, 0), 0.25);

    const Matrix two_centers{{0.0}, {1.0}};
    const std::vector<double> r2{0.75, 0.75};
    const Matrix t2 = compute_translations(maj, two_centers, r2, Norm::l2(), rng);
    EXPECT_DOUBLE_EQ(t2(0, 0), 0.25 - 0.25);

    const Matrix far{{5.0}};
    EXPECT_EQ(compute_translations(far, one_center, r, Norm::l2(), rng)(0, 0), 0.0);
}

TEST(Translations, CoincidentPointPushedToBoundary) {
    RandomSource rng(3);
    const Matrix maj{{1.0, 2.0, 3.0}};
    for (const Norm& norm : {Norm::l1(), Norm::l2(), Norm::lp(3)}) {
        const std::vector<double> r{0.4};
        const Matrix t = compute_translations(maj, maj, r, norm, rng);
        const std::vector<double> zero(3, 0.0);
        EXPECT_NEAR(distance(t.row(0), zero, norm), 0.4, 1e-12);
    }
}

TEST(ProportionalCounts, Examples) {
    EXPECT_EQ(proportional_sample_counts(std::vector<double>{1, 1}, 6, 2), (std::vector<std::size_t>{2, 2}));
    EXPECT_EQ(proportional_sample_counts(std::vector<double>{1, 3}, 6, 2), (std::vector<std::size_t>{3, 1}));
    EXPECT_EQ(proportional_sample_counts(std::vector<double>{1, 3}, 2, 2), (std::vector<std::size_t>{0, 0}));
    EXPECT_THROW(proportional_sample_counts(std::vector<double>{1, 0}, 6, 2), std::domain_error);
}

namespace {

struct Instance {
    Matrix majority;
    Matrix minority;
};

Instance random_instance(RandomSource& rng) {
    const std::size_t m = 1 + rng.index(4);
    const std::size_t n_min = 1 + rng.index(15);
    const std::size_t n_maj = n_min + rng.index(60);
    return {oracle::random_matrix(n_maj, m, rng), oracle::random_matrix(n_min, m, rng, 0.7)};
}

}  // namespace

TEST(Ccr, BalanceAndContainment) {
    RandomSource rng(30);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = random_instance(rng);
        const CcrParams params{0.2 + rng.uniform(), trial % 2 ? Norm::l1() : Norm::l2()};
        const auto out = ccr(inst.majority, inst.minority, params, rng);
        const std::size_t n_maj = inst.majority.rows(), n_min = inst.minority.rows();
        ASSERT_EQ(out.translated_majority.rows(), n_maj);
        ASSERT_LE(n_min + out.synthetic.rows(), n_maj);
        ASSERT_LT(n_maj - (n_min + out.synthetic.rows()), std::max<std::size_t>(n_min, 1));
        ASSERT_EQ(out.origin.size(), out.synthetic.rows());
        for (std::size_t s = 0; s < out.synthetic.rows(); ++s) {
            const auto i = out.origin[s];
            ASSERT_LE(distance(out.synthetic.row(s), inst.minority.row(i), Norm::l2()), out.radii[i] * (1 + 1e-12));
        }
    }
}

TEST(Ccr, SingleSphereTranslatesOntoBoundary) {
    RandomSource rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng.index(4);
        const Matrix minority = oracle::random_matrix(1, m, rng);
        const Matrix majority = oracle::random_matrix(5 + rng.index(20), m, rng);
        const Norm norm = trial % 2 ? Norm::l1() : Norm::l2();
        const auto out = ccr(majority, minority, CcrParams{0.5 + 2.0 * rng.uniform(), norm}, rng);
        const double r = out.radii[0];
        for (std::size_t j = 0; j < majority.rows(); ++j) {
            const double before = distance(majority.row(j), minority.row(0), norm);
            const double after = distance(out.translated_majority.row(j), minority.row(0), norm);
            if (before < r) {
                ASSERT_NEAR(after, r, 1e-9);
            } else {
                ASSERT_EQ(after, before);
            }
        }
    }
}

TEST(Ccr, FarMajoritySmallEnergy) {
    RandomSource rng(2);
    const Matrix minority{{0.0, 0.0}};
    const Matrix majority{{10, 0}, {0, 10}, {-10, 0}, {0, -10}, {10, 10}};
    const auto out = ccr(majority, minority, CcrParams{0.3, Norm::l2()}, rng);
    EXPECT_DOUBLE_EQ(out.radii[0], 0.3);
    EXPECT_EQ(out.synthetic.rows(), 4u);
    for (std::size_t s = 0; s < out.synthetic.rows(); ++s) {
        EXPECT_LE(distance(out.synthetic.row(s), minority.row(0), Norm::l2()), 0.3);
    }
    EXPECT_EQ(out.translated_majority, majority);
}

TEST(Ccr, BalancedInputStillCleans) {
    RandomSource rng(4);
    const Matrix minority{{0.0}, {5.0}};
    const Matrix majority{{0.1}, {9.0}};
    const auto out = ccr(majority, minority, CcrParams{1.0, Norm::l2()}, rng);
    EXPECT_EQ(out.synthetic.rows(), 0u);
    EXPECT_NE(out.translated_majority(0, 0), 0.1);
}

TEST(Ccr, ErrorsAndDeterminism) {
    RandomSource rng(5);
    EXPECT_THROW(ccr(Matrix{{1.0}}, Matrix(0, 1), CcrParams{}, rng), std::invalid_argument);
    EXPECT_THROW(ccr(Matrix{{1.0}}, Matrix{{1.0}, {2.0}}, CcrParams{}, rng), std::invalid_argument);
    EXPECT_THROW(ccr(Matrix{{1.0}}, Matrix{{1.0}}, CcrParams{0.0, Norm::l2()}, rng), std::invalid_argument);
    RandomSource a(77), b(77);
    const auto inst = random_instance(a);
    const auto same = random_instance(b);
    const auto x = ccr(inst.majority, inst.minority, CcrParams{}, a);
    const auto y = ccr(same.majority, same.minority, CcrParams{}, b);
    EXPECT_EQ(x.synthetic, y.synthetic);
    EXPECT_EQ(x.translated_majority, y.translated_majority);
}

TEST(RbCcr, AllRegionIsBitIdenticalToCcr) {
    RandomSource rng(40);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(rng);
        const double energy = 0.2 + rng.uniform();
        RandomSource a(trial), b(trial);
        const auto plain = ccr(inst.majority, inst.minority, CcrParams{energy, Norm::l2()}, a);
        RbCcrParams p;
        p.energy = energy;
        p.region = SamplingRegion::All;
        const auto guided = rb_ccr(inst.majority, inst.minority, p, b);
        ASSERT_EQ(plain.radii, guided.radii);
        ASSERT_EQ(plain.counts, guided.counts);
        ASSERT_EQ(plain.translated_majority, guided.translated_majority);
        ASSERT_EQ(plain.synthetic, guided.synthetic);
    }
}

TEST(RbCcr, RegionsRespectBoundsAndContainment) {
    RandomSource rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = random_instance(rng);
        RbCcrParams p;
        p.energy = 0.3 + rng.uniform();
        p.gamma = 0.3 + rng.uniform();
        p.region = static_cast<SamplingRegion>(trial % 3);
        const auto out = rb_ccr(inst.majority, inst.minority, p, rng);
        ASSERT_LE(inst.minority.rows() + out.synthetic.rows(), inst.majority.rows());
        for (std::size_t s = 0; s < out.synthetic.rows(); ++s) {
            const auto i = out.origin[s];
            ASSERT_LE(distance(out.synthetic.row(s), inst.minority.row(i), Norm::l2()), out.radii[i] * (1 + 1e-12));
        }
    }
}

TEST(GuidedSample, HighRegionFilter) {
    RandomSource rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix minority = oracle::random_matrix(10, 2, rng);
        const PotentialParams pp{0.5, Norm::l2()};
        const auto g = guided_sample(minority.row(0), 0.8, minority, pp, SamplingRegion::High, 50, 30, rng);
        ASSERT_EQ(g.points.rows(), 30u);
        ASSERT_GE(g.suitable, 1u);
        for (std::size_t s = 0; s < g.points.rows(); ++s) {
            const bool is_center = std::equal(g.points.row(s).begin(), g.points.row(s).end(), minority.row(0).begin());
            ASSERT_TRUE(is_center || potential(g.points.row(s), minority, pp) >= g.bound_high);
        }
        const auto low = guided_sample(minority.row(0), 0.8, minority, pp, SamplingRegion::Low, 50, 30, rng);
        for (std::size_t s = 0; s < low.points.rows(); ++s) {
            const bool is_center =
                std::equal(low.points.row(s).begin(), low.points.row(s).end(), minority.row(0).begin());
            ASSERT_TRUE(is_center || potential(low.points.row(s), minority, pp) <= low.bound_low);
        }
    }
}

TEST(GuidedSample, FlatPotentialMakesEverythingEqual) {
    RandomSource rng(43);
    const Matrix minority{{0.0, 0.0}, {0.1, 0.0}};
    const PotentialParams huge{1e9, Norm::l2()};
    const auto e = guided_sample(minority.row(0), 0.5, minority, huge, SamplingRegion::Equal, 40, 10, rng);
    EXPECT_EQ(e.suitable, 41u);
    const auto l = guided_sample(minority.row(0), 0.5, minority, huge, SamplingRegion::Low, 40, 10, rng);
    EXPECT_EQ(l.suitable, 1u);
    for (std::size_t s = 0; s < l.points.rows(); ++s) {
        EXPECT_EQ(l.points(s, 0), 0.0);
        EXPECT_EQ(l.points(s, 1), 0.0);
    }
}

TEST(GuidedSample, AllRegionUniformInBall) {
    RandomSource rng(44);
    const std::vector<double> center{1.0, -2.0, 0.5};
    const auto g = guided_sample(center, 2.0, Matrix(0, 3), PotentialParams{}, SamplingRegion::All, 1, 10000, rng);
    EXPECT_LT(oracle::ball_chi_square(g.points, center, 2.0), oracle::kChiSquare19At01);
}

TEST(Region, ParseAndName) {
    EXPECT_EQ(parse_region("leh"), SamplingRegion::All);
    EXPECT_EQ(parse_region("H"), SamplingRegion::High);
    EXPECT_EQ(region_name(SamplingRegion::Low), "L");
    EXPECT_THROW(parse_region("X"), std::invalid_argument);
}

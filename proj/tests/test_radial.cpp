#include <gtest/gtest.h>

#include <cmath>

#include "forge/radial.hpp"
#include "oracles.hpp"

using namespace forge;

namespace {

RboParams hand_params() {
    RboParams p;
    p.gamma = 1.0;
    p.step = 0.5;
    p.iterations = 1;
    p.k = 2;
    p.norm = Norm::l1();
    return p;
}

// First seed whose single climbing step moves in direction `sign`.
std::uint64_t seed_with_sign(int sign) {
    for (std::uint64_t s = 0;; ++s) {
        RandomSource rng(s);
        ClimbTrace trace;
        climb(std::vector<double>{0.0}, Matrix{{1.0}}, Matrix{{0.0}}, hand_params(), rng, &trace);
        if (trace.steps.at(0).sign == sign) return s;
    }
}

}  // namespace

TEST(Rbo, HandTraceAcceptsTowardsBalance) {
    RandomSource rng(seed_with_sign(+1));
    ClimbTrace trace;
    const auto p = climb(std::vector<double>{0.0}, Matrix{{1.0}}, Matrix{{0.0}}, hand_params(), rng, &trace);
    EXPECT_NEAR(trace.initial_potential, std::exp(-1.0) - 1.0, 1e-15);
    EXPECT_NEAR(trace.initial_potential, -0.632, 5e-4);
    EXPECT_NEAR(trace.steps[0].proposed_potential, 0.0, 1e-15);
    EXPECT_TRUE(trace.steps[0].accepted);
    EXPECT_EQ(p, std::vector<double>{0.5});
}

TEST(Rbo, HandTraceRejectsAwayFromBalance) {
    RandomSource rng(seed_with_sign(-1));
    ClimbTrace trace;
    const auto p = climb(std::vector<double>{0.0}, Matrix{{1.0}}, Matrix{{0.0}}, hand_params(), rng, &trace);
    EXPECT_NEAR(trace.steps[0].proposed_potential, std::exp(-2.25) - std::exp(-0.25), 1e-15);
    EXPECT_NEAR(trace.steps[0].proposed_potential, -0.674, 1e-3);
    EXPECT_FALSE(trace.steps[0].accepted);
    EXPECT_EQ(p, std::vector<double>{0.0});
}

TEST(Rbo, SizeMonotoneAndReach) {
    RandomSource rng(50);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 1 + rng.index(4);
        const std::size_t n_min = 1 + rng.index(10);
        const std::size_t n_maj = n_min + 1 + rng.index(30);
        const Matrix maj = oracle::random_matrix(n_maj, m, rng);
        const Matrix mn = oracle::random_matrix(n_min, m, rng, 0.5);
        RboParams p;
        p.gamma = 0.3 + rng.uniform();
        p.step = 0.02 + 0.1 * rng.uniform();
        p.iterations = rng.index(60);
        p.k = 1 + rng.index(12);
        p.early_stop_prob = trial % 3 == 0 ? 0.05 : 0.0;
        const auto out = rbo(maj, mn, p, rng);
        ASSERT_EQ(out.synthetic.rows(), n_maj - n_min);
        for (std::size_t s = 0; s < out.synthetic.rows(); ++s) {
            const auto& t = out.traces[s];
            ASSERT_LE(t.steps.size(), p.iterations);
            double current = std::abs(t.initial_potential);
            for (const auto& step : t.steps) {
                if (step.accepted) {
                    ASSERT_LT(std::abs(step.proposed_potential), current);
                    current = std::abs(step.proposed_potential);
                }
            }
            const double reach = distance(out.synthetic.row(s), mn.row(t.seed_row), Norm::l1());
            ASSERT_LE(reach, static_cast<double>(p.iterations) * p.step + 1e-9);
        }
    }
}

TEST(Rbo, ZeroIterationsCopiesMinority) {
    RandomSource rng(51);
    const Matrix mn{{1, 1}, {2, 2}};
    const Matrix maj = oracle::random_matrix(6, 2, rng);
    RboParams p;
    p.iterations = 0;
    const auto out = rbo(maj, mn, p, rng);
    ASSERT_EQ(out.synthetic.rows(), 4u);
    for (std::size_t s = 0; s < 4; ++s) {
        const auto row = out.synthetic.row(s);
        EXPECT_TRUE((row[0] == 1 && row[1] == 1) || (row[0] == 2 && row[1] == 2));
    }
}

TEST(Rbo, OneShortOfBalanceGivesOnePoint) {
    RandomSource rng(52);
    const auto out = rbo(Matrix{{0}, {1}, {2}}, Matrix{{5}, {6}}, RboParams{}, rng);
    EXPECT_EQ(out.synthetic.rows(), 1u);
}

TEST(Rbo, ErrorsAndDeterminism) {
    RandomSource rng(53);
    EXPECT_THROW(rbo(Matrix{{0}}, Matrix{{1}}, RboParams{}, rng), std::invalid_argument);
    RboParams bad;
    bad.step = 0.0;
    EXPECT_THROW(rbo(Matrix{{0}, {2}}, Matrix{{1}}, bad, rng), std::invalid_argument);
    const Matrix maj = oracle::random_matrix(20, 3, rng), mn = oracle::random_matrix(5, 3, rng);
    RandomSource a(9), b(9);
    EXPECT_EQ(rbo(maj, mn, RboParams{}, a).synthetic, rbo(maj, mn, RboParams{}, b).synthetic);
}

TEST(Rbu, HandTrace) {
    RbuParams p;
    p.gamma = 1.0;
    p.ratio = 1.0;
    const auto out = rbu(Matrix{{0}, {10}}, Matrix{{10.1}}, p);
    EXPECT_EQ(out.removed_rows, std::vector<std::size_t>{0});
    EXPECT_EQ(out.kept, (Matrix{{10}}));
}

TEST(Rbu, RemovalCounts) {
    EXPECT_EQ(rbu_removal_count(10, 5, 0.5), 3u);
    EXPECT_EQ(rbu_removal_count(10, 5, 1.0), 5u);
    EXPECT_EQ(rbu_removal_count(10, 5, 0.0), 0u);
    RandomSource rng(54);
    const Matrix maj = oracle::random_matrix(10, 2, rng), mn = oracle::random_matrix(5, 2, rng);
    RbuParams p;
    p.ratio = 0.5;
    EXPECT_EQ(rbu(maj, mn, p).kept.rows(), 7u);
    p.ratio = 0.0;
    EXPECT_EQ(rbu(maj, mn, p).kept, maj);
    p.ratio = 1.0;
    EXPECT_EQ(rbu(maj, mn, p).kept.rows(), 5u);
    EXPECT_THROW(rbu(mn, maj, p), std::invalid_argument);
    p.ratio = 1.5;
    EXPECT_THROW(rbu(maj, mn, p), std::invalid_argument);
}

TEST(Rbu, IncrementalMatchesRecompute) {
    RandomSource rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng.index(4);
        const std::size_t n_min = rng.index(10);
        const std::size_t n_maj = n_min + 1 + rng.index(30);
        const Matrix maj = oracle::random_matrix(n_maj, m, rng), mn = oracle::random_matrix(n_min, m, rng);
        RbuParams p;
        p.gamma = 0.3 + 2.0 * rng.uniform();
        p.ratio = rng.uniform();
        p.norm = trial % 2 ? Norm::l1() : Norm::l2();
        const PotentialParams pp{p.gamma, p.norm};
        double worst = 0.0;
        const auto out = rbu(maj, mn, p, [&](const std::vector<double>& phi, const std::vector<bool>& removed) {
            const auto fresh = oracle::rbu_potentials(maj, mn, removed, pp);
            for (std::size_t i = 0; i < phi.size(); ++i)
                if (!removed[i]) worst = std::max(worst, std::abs(phi[i] - fresh[i]));
        });
        ASSERT_LT(worst, 1e-9);
        ASSERT_EQ(out.removed_rows.size(), rbu_removal_count(n_maj, n_min, p.ratio));
    }
}

TEST(Rbu, RemovesCurrentMaximumWithLowestIndexTies) {
    // two identical far-from-minority rows: the lower index goes first
    const auto out = rbu(Matrix{{0}, {0}, {5}}, Matrix{{5.2}}, RbuParams{});
    EXPECT_EQ(out.removed_rows, (std::vector<std::size_t>{0, 1}));
}

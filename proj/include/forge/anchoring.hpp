#pragma once

#include <cstddef>

#include "forge/dataset.hpp"
#include "forge/potential.hpp"
#include "forge/random.hpp"

namespace forge {

struct PaParams {
    double ratio = 0.5;            // share of the imbalance removed by oversampling
    std::size_t anchors = 10;
    std::size_t iterations = 200;
    double gamma = 1.0;
    double lambda = 1e-3;          // displacement regulariser (oversampling only)
    double learning_rate = 0.01;
    double jitter = 1e-4;
    Norm potential_norm = Norm::l1();

    void validate() const;
};

// Optimizable synthetic observations and the rows they started from.
struct PrototypeSet {
    Matrix positions;
    Matrix start;
};

// Lloyd k-means. Initial centroids are k distinct rows drawn without
// replacement; stops at an assignment fixpoint or after max_iterations.
Matrix generate_anchors(const Matrix& X, std::size_t k, RandomSource& rng, std::size_t max_iterations = 300);

// sum_i (Psi(X)_i - Psi(P)_i)^2 + lambda * sum_j exp(-(||P_j - P0_j||_2 / gamma)^2)
double resemblance_loss(const Matrix& X, const Matrix& anchors, const Matrix& prototypes, const Matrix& start,
                        const PotentialParams& params, double lambda);

// Analytic d loss / d prototypes. When every anchor potential of the
// prototypes underflows, the potential term contributes zero.
Matrix loss_gradient(const Matrix& X, const Matrix& anchors, const Matrix& prototypes, const Matrix& start,
                     const PotentialParams& params, double lambda);

// Adam state for a flat parameter vector (beta1 0.9, beta2 0.999, eps 1e-8).
class Adam {
public:
    Adam(std::size_t size, double learning_rate, double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);

    void step(std::span<double> params, std::span<const double> grad);
    std::size_t steps_taken() const { return t_; }

private:
    double lr_, beta1_, beta2_, eps_;
    std::size_t t_ = 0;
    std::vector<double> m_, v_;
};

// Adds uniform [-jitter, jitter] noise to the start rows, then runs
// `iterations` Adam steps on the resemblance loss against X.
PrototypeSet optimize_prototypes(const Matrix& X, const Matrix& anchors, const Matrix& start, const PaParams& params,
                                 double lambda, RandomSource& rng);

struct PaResult {
    Matrix anchors;
    PrototypeSet minority_prototypes;
    PrototypeSet majority_prototypes;
    std::size_t n_oversampled = 0;   // minority prototypes added
    std::size_t n_undersampled = 0;  // majority prototypes replacing the majority
};

struct PaCounts {
    std::size_t oversample = 0;
    std::size_t undersample = 0;
};

// n_PAO = round(ratio * d), n_PAU = n_maj - (d - n_PAO), d = n_maj - n_min.
PaCounts pa_counts(std::size_t n_majority, std::size_t n_minority, double ratio);

// Anchor count is clamped to the number of rows. Resampled data = minority ∪
// minority prototypes (class min) and majority prototypes (class maj).
PaResult potential_anchoring(const Matrix& majority, const Matrix& minority, const PaParams& params,
                             RandomSource& rng);

}  // namespace forge

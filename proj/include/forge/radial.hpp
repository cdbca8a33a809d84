#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "forge/dataset.hpp"
#include "forge/potential.hpp"
#include "forge/random.hpp"

namespace forge {

struct RboParams {
    double gamma = 1.0;
    double step = 0.05;
    std::size_t iterations = 500;
    std::size_t k = 10;
    double early_stop_prob = 0.0;
    Norm norm = Norm::l1();

    void validate() const;
};

struct RbuParams {
    double gamma = 1.0;
    double ratio = 1.0;
    Norm norm = Norm::l2();

    void validate() const;
};

// One hill-climbing proposal: move `sign * step` along `axis`.
struct ClimbStep {
    std::size_t axis = 0;
    int sign = 1;
    double proposed_potential = 0.0;
    bool accepted = false;
};

struct ClimbTrace {
    std::size_t seed_row = 0;
    double initial_potential = 0.0;
    std::vector<ClimbStep> steps;
    bool stopped_early = false;
};

struct RboResult {
    Matrix synthetic;
    std::vector<ClimbTrace> traces;
};

// Climbs from `start`, keeping a move only when it strictly lowers the
// absolute mutual potential of the fixed neighbourhood.
std::vector<double> climb(std::span<const double> start, const Matrix& local_majority, const Matrix& local_minority,
                          const RboParams& params, RandomSource& rng, ClimbTrace* trace = nullptr);

// Generates n_maj - n_min synthetic minority observations. Every seed's
// neighbourhood is its k nearest rows of majority ∪ minority, itself
// included, computed once up front.
RboResult rbo(const Matrix& majority, const Matrix& minority, const RboParams& params, RandomSource& rng);

struct RbuResult {
    Matrix kept;
    std::vector<std::size_t> kept_rows;
    std::vector<std::size_t> removed_rows;  // removal order
};

// Number of majority rows RBU removes: ceil(ratio * (n_maj - n_min)).
std::size_t rbu_removal_count(std::size_t n_majority, std::size_t n_minority, double ratio);

// Repeatedly drops the majority row with the highest mutual potential
// (ties: lowest row), then subtracts the dropped row's RBF from the rest.
// Observer, when given, sees the running potentials after every removal,
// indexed by original row (removed rows keep their last value).
RbuResult rbu(const Matrix& majority, const Matrix& minority, const RbuParams& params,
              const std::function<void(const std::vector<double>&, const std::vector<bool>&)>& observer = {});

}  // namespace forge

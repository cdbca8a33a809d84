#pragma once

#include <cstddef>
#include <vector>

#include "forge/dataset.hpp"
#include "forge/random.hpp"

namespace forge {

// Provenance of one interpolated observation: point = a + t * (b - a).
struct Interpolation {
    std::vector<double> parent_a;
    std::vector<double> parent_b;
    double t = 0.0;
};

struct InterpolationResult {
    Matrix rows;
    std::vector<Interpolation> created;
};

// Appends n interpolants between a random minority row and one of its k
// nearest minority neighbours (self excluded). A single minority row
// degrades to duplication with a warning.
InterpolationResult smote(const Matrix& minority, std::size_t k, std::size_t n, RandomSource& rng);

// n rounds of: pick a row of the evolving set and one of its k nearest
// neighbours there, drop both, append their interpolant.
InterpolationResult smute(const Matrix& majority, std::size_t k, std::size_t n, RandomSource& rng);

struct CsmouteParams {
    std::size_t k_smote = 5;
    std::size_t k_smute = 5;
    double ratio = 0.5;

    void validate() const;
};

struct CsmouteResult {
    InterpolationResult majority;
    InterpolationResult minority;
    std::size_t n_smote = 0;
    std::size_t n_smute = 0;
};

// Half-away-from-zero rounding of a nonnegative product.
std::size_t round_count(double value);

CsmouteResult csmoute(const Matrix& majority, const Matrix& minority, const CsmouteParams& params, RandomSource& rng);

// Appends n uniform-with-replacement duplicates.
Matrix random_oversample(const Matrix& minority, std::size_t n, RandomSource& rng);

// Removes n rows uniformly without replacement; survivors keep their order.
Matrix random_undersample(const Matrix& majority, std::size_t n, RandomSource& rng);

}  // namespace forge

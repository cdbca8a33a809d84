#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "forge/dataset.hpp"
#include "forge/potential.hpp"
#include "forge/random.hpp"

namespace forge {

// Result of growing one minority-centred sphere through its sorted majority
// distances. `consumed` counts the majority observations the sphere expanded
// past; radius never exceeds the next distance in line.
struct SphereExpansion {
    double radius = 0.0;
    std::size_t consumed = 0;
};

struct CcrParams {
    double energy = 1.0;
    Norm norm = Norm::l2();

    void validate() const;
};

enum class SamplingRegion { Low, Equal, High, All };

SamplingRegion parse_region(std::string_view text);
std::string region_name(SamplingRegion region);

struct RbCcrParams {
    double energy = 1.0;
    double gamma = 1.0;
    SamplingRegion region = SamplingRegion::All;
    std::size_t candidates = 100;
    // Norm of the minority potential used to partition the sphere.
    Norm potential_norm = Norm::l2();

    void validate() const;
};

struct CcrResult {
    Matrix translated_majority;
    Matrix synthetic;
    std::vector<double> radii;
    std::vector<std::size_t> counts;
    // Generating minority row of every synthetic observation.
    std::vector<std::size_t> origin;
};

// Energy-budgeted expansion. Each step past the next majority observation
// costs (d_j - r) times the number of majority observations reached so far,
// that one included. Leftover budget after the last majority observation
// extends the radius at the final rate; an empty list gives radius = energy.
SphereExpansion expand_sphere(std::span<const double> sorted_distances, double energy);

// Accumulated push vectors moving every in-sphere majority observation to the
// sphere surface. A majority row coinciding with a centre is pushed along a
// random direction (unit length under `norm`).
Matrix compute_translations(const Matrix& majority, const Matrix& minority, std::span<const double> radii,
                            const Norm& norm, RandomSource& rng);

// floor(r_i^-1 / sum_k r_k^-1 * (n_maj - n_min)); throws on a zero radius.
std::vector<std::size_t> proportional_sample_counts(std::span<const double> radii, std::size_t n_majority,
                                                    std::size_t n_minority);

// Uniform point in the L2 ball: normalized Gaussian direction * r * U^(1/m).
std::vector<double> sample_in_ball(std::span<const double> center, double radius, RandomSource& rng);

struct GuidedSample {
    Matrix points;
    // Potential bounds of the partition (equal to the centre potential in the
    // flat case, unused for the All region).
    double center_potential = 0.0;
    double bound_low = 0.0;
    double bound_high = 0.0;
    std::size_t suitable = 0;
};

// Draws `candidates` points in the sphere, splits them into low/equal/high
// minority-potential regions around the centre's potential, and returns `n`
// draws with replacement from {center} plus the candidates of `region`.
// Region All skips the partition and samples the ball directly. When every
// candidate potential equals the centre potential, all candidates count as
// the equal region.
GuidedSample guided_sample(std::span<const double> center, double radius, const Matrix& minority,
                           const PotentialParams& potential_params, SamplingRegion region, std::size_t candidates,
                           std::size_t n, RandomSource& rng);

CcrResult ccr(const Matrix& majority, const Matrix& minority, const CcrParams& params, RandomSource& rng);

// Same cleaning and counts as ccr with the L2 norm; generation goes through
// guided_sample. With region All the draw sequence matches ccr exactly.
CcrResult rb_ccr(const Matrix& majority, const Matrix& minority, const RbCcrParams& params, RandomSource& rng);

}  // namespace forge

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "forge/dataset.hpp"

namespace forge {

// Spread and distance norm of the Gaussian RBF attached to every observation.
struct PotentialParams {
    double gamma = 1.0;
    Norm norm = Norm::l1();

    void validate() const;
};

// exp(-(d / gamma)^2)
double rbf(double dist, double gamma);

// Class potential: sum over rows of X of rbf(||X_i - x||, gamma).
double potential(std::span<const double> x, const Matrix& X, const PotentialParams& params);

// Majority potential minus minority potential; positive where the majority dominates.
double mutual_class_potential(std::span<const double> x, const Matrix& majority, const Matrix& minority,
                              const PotentialParams& params);

// Raw potential of X at every anchor.
std::vector<double> anchor_potentials(const Matrix& X, const Matrix& anchors, const PotentialParams& params);

// Anchor potentials divided by their sum. Throws std::domain_error when every
// anchor potential underflows to zero.
std::vector<double> normalized_potential(const Matrix& X, const Matrix& anchors, const PotentialParams& params);

struct GridBounds {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
};

// Mutual class potential sampled on a regular rx-by-ry lattice. Values are
// stored y-major: value(ix, iy) = values[iy * rx + ix].
struct PotentialGrid {
    GridBounds bounds;
    std::size_t rx = 0;
    std::size_t ry = 0;
    std::vector<double> values;

    double x_at(std::size_t ix) const;
    double y_at(std::size_t iy) const;
    double value(std::size_t ix, std::size_t iy) const { return values[iy * rx + ix]; }
};

// Majority = every row whose label differs from `minority_label`.
PotentialGrid potential_grid(const Dataset& ds, const std::string& minority_label, const GridBounds& bounds,
                             std::size_t rx, std::size_t ry, const PotentialParams& params);

// Header `x,y,potential`, one row per node, rows of the lattice in order.
void write_grid_csv(const PotentialGrid& grid, std::ostream& out);

}  // namespace forge

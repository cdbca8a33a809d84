#include "forge/potential.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace forge {

void PotentialParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("potential: gamma must be positive and finite");
    }
}

double rbf(double dist, double gamma) {
    const double s = dist / gamma;
    return std::exp(-s * s);
}

double potential(std::span<const double> x, const Matrix& X, const PotentialParams& params) {
    params.validate();
    double total = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) total += rbf(distance(X.row(i), x, params.norm), params.gamma);
    return total;
}

double mutual_class_potential(std::span<const double> x, const Matrix& majority, const Matrix& minority,
                              const PotentialParams& params) {
    return potential(x, majority, params) - potential(x, minority, params);
}

std::vector<double> anchor_potentials(const Matrix& X, const Matrix& anchors, const PotentialParams& params) {
    std::vector<double> out;
    out.reserve(anchors.rows());
    for (std::size_t i = 0; i < anchors.rows(); ++i) out.push_back(potential(anchors.row(i), X, params));
    return out;
}

std::vector<double> normalized_potential(const Matrix& X, const Matrix& anchors, const PotentialParams& params) {
    if (anchors.rows() == 0) throw std::invalid_argument("normalized_potential: need at least one anchor");
    auto values = anchor_potentials(X, anchors, params);
    double total = 0.0;
    for (double v : values) total += v;
    if (!(total > 0.0)) {
        throw std::domain_error("normalized_potential: all anchor potentials are zero (underflow); use a larger gamma");
    }
    for (double& v : values) v /= total;
    return values;
}

double PotentialGrid::x_at(std::size_t ix) const {
    return bounds.x_min + (bounds.x_max - bounds.x_min) * static_cast<double>(ix) / static_cast<double>(rx - 1);
}

double PotentialGrid::y_at(std::size_t iy) const {
    return bounds.y_min + (bounds.y_max - bounds.y_min) * static_cast<double>(iy) / static_cast<double>(ry - 1);
}

PotentialGrid potential_grid(const Dataset& ds, const std::string& minority_label, const GridBounds& bounds,
                             std::size_t rx, std::size_t ry, const PotentialParams& params) {
    if (ds.dims() != 2 && !(ds.size() == 0 && ds.dims() == 0)) {
        throw std::invalid_argument("potential_grid: dataset must have exactly 2 features, has " +
                                    std::to_string(ds.dims()));
    }
    if (rx < 2 || ry < 2) throw std::invalid_argument("potential_grid: resolution must be at least 2 per axis");
    params.validate();

    Matrix majority(0, 2), minority(0, 2);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        (ds.labels[i] == minority_label ? minority : majority).append_row(ds.features.row(i));
    }

    PotentialGrid grid{bounds, rx, ry, {}};
    grid.values.reserve(rx * ry);
    for (std::size_t iy = 0; iy < ry; ++iy) {
        for (std::size_t ix = 0; ix < rx; ++ix) {
            const double node[2] = {grid.x_at(ix), grid.y_at(iy)};
            grid.values.push_back(mutual_class_potential(node, majority, minority, params));
        }
    }
    return grid;
}

void write_grid_csv(const PotentialGrid& grid, std::ostream& out) {
    out << "x,y,potential\n";
    char buf[96];
    for (std::size_t iy = 0; iy < grid.ry; ++iy) {
        for (std::size_t ix = 0; ix < grid.rx; ++ix) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.x_at(ix), grid.y_at(iy), grid.value(ix, iy));
            out << buf;
        }
    }
}

}  // namespace forge

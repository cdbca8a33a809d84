#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "forge/anchoring.hpp"
#include "forge/dataset.hpp"
#include "forge/potential.hpp"

namespace oracle {

inline forge::Matrix random_matrix(std::size_t n, std::size_t m, forge::RandomSource& rng, double scale = 1.0) {
    forge::Matrix x(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) x(i, j) = scale * rng.normal();
    return x;
}

// Full stable sort of all candidates by distance.
inline std::vector<std::size_t> knn(std::span<const double> q, const forge::Matrix& pool, std::size_t k,
                                    const forge::Norm& norm, std::optional<std::size_t> exclude = std::nullopt) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pool.rows(); ++i)
        if (!exclude || *exclude != i) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return forge::distance(q, pool.row(a), norm) < forge::distance(q, pool.row(b), norm);
    });
    idx.resize(std::min(k, idx.size()));
    return idx;
}

// Grows the radius in increments of h, paying the current number of
// majority observations reached per unit (the one being approached counts,
// capped at the total once all are passed).
inline double sphere_radius(std::vector<double> d, double energy, double h = 1e-7) {
    std::sort(d.begin(), d.end());
    const double cap = static_cast<double>(std::max<std::size_t>(d.size(), 1));
    double r = 0.0;
    double e = energy;
    std::size_t passed = 0;
    while (passed < d.size() && d[passed] <= 0.0) ++passed;
    for (;;) {
        const double cost = std::min(1.0 + static_cast<double>(passed), cap);
        if (e <= cost * h) return r + e / cost;
        e -= cost * h;
        r += h;
        while (passed < d.size() && d[passed] < r) ++passed;
    }
}

// Mutual potential of every surviving majority row, recomputed from scratch.
inline std::vector<double> rbu_potentials(const forge::Matrix& majority, const forge::Matrix& minority,
                                          const std::vector<bool>& removed, const forge::PotentialParams& p) {
    forge::Matrix alive(0, majority.cols());
    for (std::size_t i = 0; i < majority.rows(); ++i)
        if (!removed[i]) alive.append_row(majority.row(i));
    std::vector<double> out(majority.rows(), 0.0);
    for (std::size_t i = 0; i < majority.rows(); ++i)
        if (!removed[i]) out[i] = forge::mutual_class_potential(majority.row(i), alive, minority, p);
    return out;
}

// Central finite differences of the prototype loss.
inline forge::Matrix numeric_gradient(const forge::Matrix& x, const forge::Matrix& anchors, const forge::Matrix& p,
                                      const forge::Matrix& p0, const forge::PotentialParams& params, double lambda,
                                      double h = 1e-6) {
    forge::Matrix g(p.rows(), p.cols());
    forge::Matrix probe = p;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j) {
            const double keep = probe(i, j);
            probe(i, j) = keep + h;
            const double up = forge::resemblance_loss(x, anchors, probe, p0, params, lambda);
            probe(i, j) = keep - h;
            const double down = forge::resemblance_loss(x, anchors, probe, p0, params, lambda);
            probe(i, j) = keep;
            g(i, j) = (up - down) / (2.0 * h);
        }
    }
    return g;
}

// ||a - b||_2 / max(||a||_2, ||b||_2); zero when both vanish.
inline double relative_error(const forge::Matrix& a, const forge::Matrix& b) {
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        diff += (a.data()[i] - b.data()[i]) * (a.data()[i] - b.data()[i]);
        na += a.data()[i] * a.data()[i];
        nb += b.data()[i] * b.data()[i];
    }
    const double scale = std::sqrt(std::max(na, nb));
    if (scale < 1e-12) return std::sqrt(diff);
    return std::sqrt(diff) / scale;
}

// Chi-square statistic of L2 distances to `center` against the uniform-ball
// law P(dist <= s r) = s^m, over `shells` equal-probability shells.
inline double ball_chi_square(const forge::Matrix& points, std::span<const double> center, double radius,
                              std::size_t shells = 20) {
    const double m = static_cast<double>(center.size());
    std::vector<double> counts(shells, 0.0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const double s = forge::distance(points.row(i), center, forge::Norm::l2()) / radius;
        const double u = std::pow(std::min(s, 1.0), m);
        counts[std::min(shells - 1, static_cast<std::size_t>(u * static_cast<double>(shells)))] += 1.0;
    }
    const double expected = static_cast<double>(points.rows()) / static_cast<double>(shells);
    double chi2 = 0.0;
    for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
    return chi2;
}

// Upper 0.01 quantile of chi-square with 19 degrees of freedom.
constexpr double kChiSquare19At01 = 36.191;

}  // namespace oracle

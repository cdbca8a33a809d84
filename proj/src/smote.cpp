#include "forge/smote.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forge/log.hpp"

namespace forge {
namespace {

std::vector<double> interpolate(std::span<const double> a, std::span<const double> b, double t) {
    std::vector<double> out(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) out[c] = a[c] + t * (b[c] - a[c]);
    return out;
}

}  // namespace

InterpolationResult smote(const Matrix& minority, std::size_t k, std::size_t n, RandomSource& rng) {
    if (k == 0) throw std::invalid_argument("smote: k must be at least 1");
    InterpolationResult out;
    out.rows = minority;
    if (n == 0) return out;
    if (minority.rows() == 0) throw std::invalid_argument("smote: cannot oversample an empty minority class");

    if (minority.rows() == 1) {
        warn("smote: single minority observation, synthetic rows are duplicates");
        for (std::size_t s = 0; s < n; ++s) {
            out.rows.append_row(minority.row(0));
            out.created.push_back({{minority.row(0).begin(), minority.row(0).end()},
                                   {minority.row(0).begin(), minority.row(0).end()},
                                   0.0});
        }
        return out;
    }

    std::vector<std::vector<std::size_t>> neighbors(minority.rows());
    for (std::size_t i = 0; i < minority.rows(); ++i) {
        neighbors[i] = k_nearest_neighbors(i, minority, k, Norm::l2(), false);
    }
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t a = rng.index(minority.rows());
        const std::size_t b = neighbors[a][rng.index(neighbors[a].size())];
        const double t = rng.uniform();
        auto point = interpolate(minority.row(a), minority.row(b), t);
        out.rows.append_row(point);
        out.created.push_back({{minority.row(a).begin(), minority.row(a).end()},
                               {minority.row(b).begin(), minority.row(b).end()},
                               t});
    }
    return out;
}

InterpolationResult smute(const Matrix& majority, std::size_t k, std::size_t n, RandomSource& rng) {
    if (k == 0) throw std::invalid_argument("smute: k must be at least 1");
    if (n > 0 && n >= majority.rows()) {
        throw std::invalid_argument("smute: cannot remove " + std::to_string(n) + " of " +
                                    std::to_string(majority.rows()) + " observations");
    }
    InterpolationResult out;
    out.rows = majority;
    for (std::size_t s = 0; s < n; ++s) {
        Matrix& current = out.rows;
        const std::size_t a = rng.index(current.rows());
        const auto candidates = k_nearest_neighbors(a, current, k, Norm::l2(), false);
        const std::size_t b = candidates[rng.index(candidates.size())];
        const double t = rng.uniform();
        Interpolation record{{current.row(a).begin(), current.row(a).end()},
                             {current.row(b).begin(), current.row(b).end()},
                             t};
        auto point = interpolate(current.row(a), current.row(b), t);

        Matrix next(0, current.cols());
        for (std::size_t i = 0; i < current.rows(); ++i) {
            if (i != a && i != b) next.append_row(current.row(i));
        }
        next.append_row(point);
        current = std::move(next);
        out.created.push_back(std::move(record));
    }
    return out;
}

void CsmouteParams::validate() const {
    if (k_smote == 0 || k_smute == 0) throw std::invalid_argument("csmoute: neighbour counts must be at least 1");
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("csmoute: ratio must lie in [0, 1]");
}

std::size_t round_count(double value) {
    if (value < 0.0 || !std::isfinite(value)) throw std::invalid_argument("round_count: negative or non-finite");
    return static_cast<std::size_t>(std::round(value));
}

CsmouteResult csmoute(const Matrix& majority, const Matrix& minority, const CsmouteParams& params, RandomSource& rng) {
    params.validate();
    if (majority.rows() < minority.rows()) throw std::invalid_argument("csmoute: majority class smaller than minority");
    const std::size_t n = majority.rows() - minority.rows();

    CsmouteResult out;
    out.n_smote = round_count(static_cast<double>(n) * params.ratio);
    out.n_smute = n - out.n_smote;
    out.minority = smote(minority, params.k_smote, out.n_smote, rng);
    out.majority = smute(majority, params.k_smute, out.n_smute, rng);
    return out;
}

Matrix random_oversample(const Matrix& minority, std::size_t n, RandomSource& rng) {
    Matrix out = minority;
    if (n == 0) return out;
    if (minority.rows() == 0) throw std::invalid_argument("random_oversample: empty class");
    for (std::size_t s = 0; s < n; ++s) out.append_row(minority.row(rng.index(minority.rows())));
    return out;
}

Matrix random_undersample(const Matrix& majority, std::size_t n, RandomSource& rng) {
    if (n > majority.rows()) {
        throw std::invalid_argument("random_undersample: cannot remove " + std::to_string(n) + " of " +
                                    std::to_string(majority.rows()) + " observations");
    }
    auto drop = sample_without_replacement(majority.rows(), n, rng);
    std::vector<bool> dropped(majority.rows(), false);
    for (std::size_t i : drop) dropped[i] = true;
    Matrix out(0, majority.cols());
    for (std::size_t i = 0; i < majority.rows(); ++i) {
        if (!dropped[i]) out.append_row(majority.row(i));
    }
    return out;
}

}  // namespace forge

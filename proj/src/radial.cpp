#include "forge/radial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace forge {

void RboParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("rbo: gamma must be positive");
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("rbo: step must be positive");
    if (k == 0) throw std::invalid_argument("rbo: k must be at least 1");
    if (!(early_stop_prob >= 0.0 && early_stop_prob <= 1.0)) {
        throw std::invalid_argument("rbo: early_stop_prob must lie in [0, 1]");
    }
}

void RbuParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("rbu: gamma must be positive");
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("rbu: ratio must lie in [0, 1]");
}

std::vector<double> climb(std::span<const double> start, const Matrix& local_majority, const Matrix& local_minority,
                          const RboParams& params, RandomSource& rng, ClimbTrace* trace) {
    const PotentialParams pp{params.gamma, params.norm};
    std::vector<double> current(start.begin(), start.end());
    std::vector<double> proposal(current.size());
    double phi = mutual_class_potential(current, local_majority, local_minority, pp);
    if (trace) trace->initial_potential = phi;

    for (std::size_t it = 0; it < params.iterations; ++it) {
        if (params.early_stop_prob > 0.0 && rng.bernoulli(params.early_stop_prob)) {
            if (trace) trace->stopped_early = true;
            break;
        }
        const std::size_t axis = rng.index(current.size());
        const int sign = rng.index(2) == 0 ? -1 : 1;
        proposal = current;
        proposal[axis] += sign * params.step;
        const double phi_new = mutual_class_potential(proposal, local_majority, local_minority, pp);
        const bool accept = std::abs(phi_new) < std::abs(phi);
        if (accept) {
            current.swap(proposal);
            phi = phi_new;
        }
        if (trace) trace->steps.push_back({axis, sign, phi_new, accept});
    }
    return current;
}

RboResult rbo(const Matrix& majority, const Matrix& minority, const RboParams& params, RandomSource& rng) {
    params.validate();
    if (minority.rows() == 0) throw std::invalid_argument("rbo: minority class is empty");
    if (majority.rows() <= minority.rows()) {
        throw std::invalid_argument("rbo: majority class must be strictly larger than minority class");
    }
    if (majority.cols() != minority.cols()) throw std::invalid_argument("rbo: feature count mismatch");

    const Matrix pool = vstack(majority, minority);
    const std::size_t n_maj = majority.rows();
    std::vector<Matrix> local_maj(minority.rows()), local_min(minority.rows());
    for (std::size_t i = 0; i < minority.rows(); ++i) {
        local_maj[i] = Matrix(0, pool.cols());
        local_min[i] = Matrix(0, pool.cols());
        for (std::size_t idx : k_nearest_neighbors(n_maj + i, pool, params.k, params.norm, true)) {
            (idx < n_maj ? local_maj[i] : local_min[i]).append_row(pool.row(idx));
        }
    }

    RboResult out;
    out.synthetic = Matrix(0, minority.cols());
    const std::size_t needed = majority.rows() - minority.rows();
    out.traces.reserve(needed);
    for (std::size_t s = 0; s < needed; ++s) {
        ClimbTrace trace;
        trace.seed_row = rng.index(minority.rows());
        const auto point = climb(minority.row(trace.seed_row), local_maj[trace.seed_row], local_min[trace.seed_row],
                                 params, rng, &trace);
        out.synthetic.append_row(point);
        out.traces.push_back(std::move(trace));
    }
    return out;
}

std::size_t rbu_removal_count(std::size_t n_majority, std::size_t n_minority, double ratio) {
    if (n_majority <= n_minority) return 0;
    return static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n_majority - n_minority)));
}

RbuResult rbu(const Matrix& majority, const Matrix& minority, const RbuParams& params,
              const std::function<void(const std::vector<double>&, const std::vector<bool>&)>& observer) {
    params.validate();
    if (params.ratio > 0.0 && majority.rows() <= minority.rows()) {
        throw std::invalid_argument("rbu: majority class must be strictly larger than minority class");
    }
    if (minority.rows() > 0 && majority.cols() != minority.cols()) {
        throw std::invalid_argument("rbu: feature count mismatch");
    }

    const PotentialParams pp{params.gamma, params.norm};
    const std::size_t n = majority.rows();
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = mutual_class_potential(majority.row(i), majority, minority, pp);

    std::vector<bool> removed(n, false);
    RbuResult out;
    const std::size_t to_remove = rbu_removal_count(n, minority.rows(), params.ratio);
    out.removed_rows.reserve(to_remove);
    for (std::size_t step = 0; step < to_remove; ++step) {
        std::size_t best = n;
        double best_phi = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!removed[i] && (best == n || phi[i] > best_phi)) {
                best = i;
                best_phi = phi[i];
            }
        }
        removed[best] = true;
        out.removed_rows.push_back(best);
        const auto x = majority.row(best);
        for (std::size_t i = 0; i < n; ++i) {
            if (!removed[i]) phi[i] -= rbf(distance(majority.row(i), x, params.norm), params.gamma);
        }
        if (observer) observer(phi, removed);
    }

    out.kept = Matrix(0, majority.cols());
    for (std::size_t i = 0; i < n; ++i) {
        if (!removed[i]) {
            out.kept_rows.push_back(i);
            out.kept.append_row(majority.row(i));
        }
    }
    return out;
}

}  // namespace forge

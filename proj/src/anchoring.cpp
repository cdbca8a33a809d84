#include "forge/anchoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "forge/smote.hpp"

namespace forge {

void PaParams::validate() const {
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("pa: ratio must lie in [0, 1]");
    if (anchors == 0) throw std::invalid_argument("pa: need at least one anchor");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("pa: gamma must be positive");
    if (!(lambda >= 0.0)) throw std::invalid_argument("pa: lambda must be nonnegative");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("pa: learning rate must be positive");
    if (!(jitter >= 0.0)) throw std::invalid_argument("pa: jitter must be nonnegative");
}

Matrix generate_anchors(const Matrix& X, std::size_t k, RandomSource& rng, std::size_t max_iterations) {
    if (k == 0) throw std::invalid_argument("generate_anchors: k must be at least 1");
    if (k > X.rows()) {
        throw std::invalid_argument("generate_anchors: k=" + std::to_string(k) + " exceeds " +
                                    std::to_string(X.rows()) + " observations");
    }
    const std::size_t m = X.cols();
    const auto init = sample_without_replacement(X.rows(), k, rng);
    Matrix centroids = X.select_rows(init);

    constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> assignment(X.rows(), unassigned);
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < X.rows(); ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                double d = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    const double diff = X(i, j) - centroids(c, j);
                    d += diff * diff;
                }
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assignment[i] != best) {
                assignment[i] = best;
                changed = true;
            }
        }
        if (!changed) break;

        Matrix sums(k, m);
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            ++sizes[assignment[i]];
            for (std::size_t j = 0; j < m; ++j) sums(assignment[i], j) += X(i, j);
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] == 0) continue;  // empty cluster keeps its centroid
            for (std::size_t j = 0; j < m; ++j) centroids(c, j) = sums(c, j) / static_cast<double>(sizes[c]);
        }
    }
    return centroids;
}

namespace {

// Adds weight * d/dp exp(-(||p - a|| / gamma)^2) to grad.
void accumulate_rbf_gradient(std::span<const double> p, std::span<const double> a, double gamma, const Norm& norm,
                             double weight, std::span<double> grad) {
    const double d = distance(p, a, norm);
    if (d == 0.0) return;
    const double e = rbf(d, gamma);
    const double outer = weight * e * (-2.0 * d / (gamma * gamma));
    for (std::size_t c = 0; c < p.size(); ++c) {
        const double u = p[c] - a[c];
        double dd = 0.0;
        switch (norm.kind) {
            case Norm::Kind::L1: dd = (u > 0.0) - (u < 0.0); break;
            case Norm::Kind::L2: dd = u / d; break;
            case Norm::Kind::Lp:
                dd = u == 0.0 ? 0.0
                              : ((u > 0.0) - (u < 0.0)) * std::pow(std::abs(u), norm.p - 1.0) / std::pow(d, norm.p - 1.0);
                break;
        }
        grad[c] += outer * dd;
    }
}

double regulariser(const Matrix& prototypes, const Matrix& start, double gamma) {
    double total = 0.0;
    for (std::size_t j = 0; j < prototypes.rows(); ++j) {
        total += rbf(distance(prototypes.row(j), start.row(j), Norm::l2()), gamma);
    }
    return total;
}

void check_shapes(const Matrix& X, const Matrix& anchors, const Matrix& prototypes, const Matrix& start) {
    if (prototypes.rows() != start.rows() || prototypes.cols() != start.cols()) {
        throw std::invalid_argument("resemblance loss: prototypes and start positions differ in shape");
    }
    if (anchors.cols() != X.cols() || (prototypes.rows() > 0 && prototypes.cols() != X.cols())) {
        throw std::invalid_argument("resemblance loss: feature count mismatch");
    }
}

double loss_with_target(std::span<const double> target, const Matrix& anchors, const Matrix& prototypes,
                        const Matrix& start, const PotentialParams& params, double lambda) {
    const auto psi = normalized_potential(prototypes, anchors, params);
    double total = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const double diff = target[i] - psi[i];
        total += diff * diff;
    }
    return total + lambda * regulariser(prototypes, start, params.gamma);
}

Matrix gradient_with_target(std::span<const double> target, const Matrix& anchors, const Matrix& prototypes,
                            const Matrix& start, const PotentialParams& params, double lambda) {
    Matrix grad(prototypes.rows(), prototypes.cols());
    const auto raw = anchor_potentials(prototypes, anchors, params);
    double sum = 0.0;
    for (double v : raw) sum += v;

    if (sum > 0.0) {
        std::vector<double> g(raw.size());
        double weighted = 0.0;
        for (std::size_t l = 0; l < raw.size(); ++l) {
            const double psi = raw[l] / sum;
            g[l] = -2.0 * (target[l] - psi);
            weighted += g[l] * psi;
        }
        for (std::size_t l = 0; l < raw.size(); ++l) {
            const double h = (g[l] - weighted) / sum;
            if (h == 0.0) continue;
            for (std::size_t j = 0; j < prototypes.rows(); ++j) {
                accumulate_rbf_gradient(prototypes.row(j), anchors.row(l), params.gamma, params.norm, h, grad.row(j));
            }
        }
    }
    if (lambda != 0.0) {
        for (std::size_t j = 0; j < prototypes.rows(); ++j) {
            accumulate_rbf_gradient(prototypes.row(j), start.row(j), params.gamma, Norm::l2(), lambda, grad.row(j));
        }
    }
    return grad;
}

}  // namespace

double resemblance_loss(const Matrix& X, const Matrix& anchors, const Matrix& prototypes, const Matrix& start,
                        const PotentialParams& params, double lambda) {
    check_shapes(X, anchors, prototypes, start);
    const auto target = normalized_potential(X, anchors, params);
    return loss_with_target(target, anchors, prototypes, start, params, lambda);
}

Matrix loss_gradient(const Matrix& X, const Matrix& anchors, const Matrix& prototypes, const Matrix& start,
                     const PotentialParams& params, double lambda) {
    check_shapes(X, anchors, prototypes, start);
    const auto target = normalized_potential(X, anchors, params);
    return gradient_with_target(target, anchors, prototypes, start, params, lambda);
}

Adam::Adam(std::size_t size, double learning_rate, double beta1, double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size()) throw std::invalid_argument("Adam::step: size mismatch");
    ++t_;
    const double bias1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double bias2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
        const double m_hat = m_[i] / bias1;
        const double v_hat = v_[i] / bias2;
        params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
}

PrototypeSet optimize_prototypes(const Matrix& X, const Matrix& anchors, const Matrix& start, const PaParams& params,
                                 double lambda, RandomSource& rng) {
    PrototypeSet set{start, start};
    for (std::size_t i = 0; i < set.positions.rows(); ++i) {
        for (auto& v : set.positions.row(i)) v += rng.uniform(-params.jitter, params.jitter);
    }
    if (set.positions.rows() == 0 || params.iterations == 0) return set;

    const PotentialParams pp{params.gamma, params.potential_norm};
    const auto target = normalized_potential(X, anchors, pp);
    Adam adam(set.positions.rows() * set.positions.cols(), params.learning_rate);
    std::vector<double> flat(set.positions.data());
    for (std::size_t it = 0; it < params.iterations; ++it) {
        const Matrix grad = gradient_with_target(target, anchors, set.positions, set.start, pp, lambda);
        adam.step(flat, grad.data());
        for (std::size_t i = 0; i < set.positions.rows(); ++i) {
            auto row = set.positions.row(i);
            for (std::size_t c = 0; c < row.size(); ++c) row[c] = flat[i * row.size() + c];
        }
    }
    return set;
}

PaCounts pa_counts(std::size_t n_majority, std::size_t n_minority, double ratio) {
    if (n_majority < n_minority) throw std::invalid_argument("pa: majority class smaller than minority class");
    const std::size_t d = n_majority - n_minority;
    PaCounts counts;
    counts.oversample = round_count(ratio * static_cast<double>(d));
    counts.undersample = n_majority - (d - counts.oversample);
    return counts;
}

PaResult potential_anchoring(const Matrix& majority, const Matrix& minority, const PaParams& params,
                             RandomSource& rng) {
    params.validate();
    if (majority.rows() > 0 && minority.rows() > 0 && majority.cols() != minority.cols()) {
        throw std::invalid_argument("pa: feature count mismatch");
    }
    const auto counts = pa_counts(majority.rows(), minority.rows(), params.ratio);
    if (counts.oversample > 0 && minority.rows() == 0) throw std::invalid_argument("pa: minority class is empty");

    PaResult out;
    out.n_oversampled = counts.oversample;
    out.n_undersampled = counts.undersample;
    out.anchors = generate_anchors(vstack(majority, minority),
                                   std::min(params.anchors, majority.rows() + minority.rows()), rng);

    Matrix start_min(0, out.anchors.cols()), start_maj(0, out.anchors.cols());
    for (std::size_t i = 0; i < counts.oversample; ++i) start_min.append_row(minority.row(rng.index(minority.rows())));
    for (std::size_t i = 0; i < counts.undersample; ++i) start_maj.append_row(majority.row(rng.index(majority.rows())));

    out.minority_prototypes = optimize_prototypes(minority, out.anchors, start_min, params, params.lambda, rng);
    out.majority_prototypes = optimize_prototypes(majority, out.anchors, start_maj, params, 0.0, rng);
    return out;
}

}  // namespace forge

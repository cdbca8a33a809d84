#include "forge/ccr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace forge {

void CcrParams::validate() const {
    if (!(energy > 0.0) || !std::isfinite(energy)) throw std::invalid_argument("ccr: energy must be positive");
}

void RbCcrParams::validate() const {
    if (!(energy > 0.0) || !std::isfinite(energy)) throw std::invalid_argument("rb_ccr: energy must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("rb_ccr: gamma must be positive");
    if (candidates == 0) throw std::invalid_argument("rb_ccr: candidate count must be at least 1");
}

SamplingRegion parse_region(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (s == "L") return SamplingRegion::Low;
    if (s == "E") return SamplingRegion::Equal;
    if (s == "H") return SamplingRegion::High;
    if (s == "LEH") return SamplingRegion::All;
    throw std::invalid_argument("unknown sampling region '" + std::string(text) + "' (expected L, E, H or LEH)");
}

std::string region_name(SamplingRegion region) {
    switch (region) {
        case SamplingRegion::Low: return "L";
        case SamplingRegion::Equal: return "E";
        case SamplingRegion::High: return "H";
        case SamplingRegion::All: return "LEH";
    }
    return "?";
}

SphereExpansion expand_sphere(std::span<const double> sorted_distances, double energy) {
    if (energy < 0.0 || !std::isfinite(energy)) throw std::invalid_argument("expand_sphere: energy must be >= 0");
    if (sorted_distances.empty()) return {energy, 0};

    SphereExpansion sphere;
    double remaining = energy;
    std::size_t reached = 0;
    for (double d : sorted_distances) {
        ++reached;
        const double delta = -(d - sphere.radius) * static_cast<double>(reached);
        if (remaining + delta > 0.0) {
            sphere.radius = d;
            remaining += delta;
            sphere.consumed = reached;
        } else {
            sphere.radius += remaining / static_cast<double>(reached);
            return sphere;
        }
    }
    sphere.radius += remaining / static_cast<double>(reached);
    return sphere;
}

namespace {

std::vector<double> random_direction(std::size_t m, const Norm& norm, RandomSource& rng) {
    std::vector<double> v(m);
    const std::vector<double> origin(m, 0.0);
    for (;;) {
        for (auto& c : v) c = rng.normal();
        const double len = distance(v, origin, norm);
        if (len > 0.0) {
            for (auto& c : v) c /= len;
            return v;
        }
    }
}

struct Cleaning {
    Matrix translations;
    std::vector<double> radii;
};

// Sphere radii for every minority row plus the accumulated translations.
Cleaning clean(const Matrix& majority, const Matrix& minority, double energy, const Norm& norm, RandomSource& rng) {
    Cleaning out;
    out.radii.reserve(minority.rows());
    std::vector<std::pair<double, std::size_t>> order(majority.rows());
    std::vector<double> sorted(majority.rows());
    for (std::size_t i = 0; i < minority.rows(); ++i) {
        for (std::size_t j = 0; j < majority.rows(); ++j) order[j] = {distance(minority.row(i), majority.row(j), norm), j};
        std::sort(order.begin(), order.end());
        for (std::size_t j = 0; j < order.size(); ++j) sorted[j] = order[j].first;
        out.radii.push_back(expand_sphere(sorted, energy).radius);
    }
    out.translations = compute_translations(majority, minority, out.radii, norm, rng);
    return out;
}

}  // namespace

Matrix compute_translations(const Matrix& majority, const Matrix& minority, std::span<const double> radii,
                            const Norm& norm, RandomSource& rng) {
    if (radii.size() != minority.rows()) throw std::invalid_argument("compute_translations: one radius per minority row");
    const std::size_t m = majority.cols();
    Matrix t(majority.rows(), m);
    for (std::size_t i = 0; i < minority.rows(); ++i) {
        const auto center = minority.row(i);
        const double r = radii[i];
        for (std::size_t j = 0; j < majority.rows(); ++j) {
            const auto x = majority.row(j);
            const double d = distance(center, x, norm);
            if (!(d < r)) continue;
            auto tj = t.row(j);
            if (d > 0.0) {
                const double scale = (r - d) / d;
                for (std::size_t c = 0; c < m; ++c) tj[c] += scale * (x[c] - center[c]);
            } else {
                const auto dir = random_direction(m, norm, rng);
                for (std::size_t c = 0; c < m; ++c) tj[c] += r * dir[c];
            }
        }
    }
    return t;
}

std::vector<std::size_t> proportional_sample_counts(std::span<const double> radii, std::size_t n_majority,
                                                    std::size_t n_minority) {
    if (n_majority < n_minority) throw std::invalid_argument("proportional_sample_counts: n_maj < n_min");
    double inverse_sum = 0.0;
    for (double r : radii) {
        if (!(r > 0.0)) throw std::domain_error("proportional_sample_counts: zero sphere radius cannot be inverted");
        inverse_sum += 1.0 / r;
    }
    const double deficit = static_cast<double>(n_majority - n_minority);
    std::vector<std::size_t> counts;
    counts.reserve(radii.size());
    for (double r : radii) counts.push_back(static_cast<std::size_t>(std::floor((1.0 / r) / inverse_sum * deficit)));
    return counts;
}

std::vector<double> sample_in_ball(std::span<const double> center, double radius, RandomSource& rng) {
    const std::size_t m = center.size();
    const auto dir = random_direction(m, Norm::l2(), rng);
    const double scale = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(m));
    std::vector<double> out(center.begin(), center.end());
    for (std::size_t c = 0; c < m; ++c) out[c] += scale * dir[c];
    return out;
}

GuidedSample guided_sample(std::span<const double> center, double radius, const Matrix& minority,
                           const PotentialParams& potential_params, SamplingRegion region, std::size_t candidates,
                           std::size_t n, RandomSource& rng) {
    if (radius < 0.0) throw std::invalid_argument("guided_sample: negative radius");
    if (candidates == 0) throw std::invalid_argument("guided_sample: candidate count must be at least 1");
    potential_params.validate();

    GuidedSample out;
    out.points = Matrix(0, center.size());
    if (region == SamplingRegion::All) {
        for (std::size_t s = 0; s < n; ++s) out.points.append_row(sample_in_ball(center, radius, rng));
        out.suitable = n;
        return out;
    }

    Matrix pool(0, center.size());
    std::vector<double> z;
    z.reserve(candidates);
    for (std::size_t i = 0; i < candidates; ++i) {
        pool.append_row(sample_in_ball(center, radius, rng));
        z.push_back(potential(pool.row(i), minority, potential_params));
    }
    const double phi_center = potential(center, minority, potential_params);
    const auto [zmin_it, zmax_it] = std::minmax_element(z.begin(), z.end());
    const double zmin = *zmin_it;
    const double zmax = *zmax_it;
    out.center_potential = phi_center;
    out.bound_low = phi_center - (phi_center - zmin) / 3.0;
    out.bound_high = phi_center + (zmax - phi_center) / 3.0;

    const double spread = std::max(zmax, phi_center) - std::min(zmin, phi_center);
    const double scale = std::max({1.0, std::abs(zmax), std::abs(zmin), std::abs(phi_center)});
    const bool flat = spread <= 1e-12 * scale;

    Matrix suitable(0, center.size());
    suitable.append_row(center);
    for (std::size_t i = 0; i < candidates; ++i) {
        SamplingRegion assigned = SamplingRegion::Equal;
        if (!flat) {
            if (z[i] <= out.bound_low) {
                assigned = SamplingRegion::Low;
            } else if (z[i] >= out.bound_high) {
                assigned = SamplingRegion::High;
            }
        }
        if (assigned == region) suitable.append_row(pool.row(i));
    }
    out.suitable = suitable.rows();
    for (std::size_t s = 0; s < n; ++s) out.points.append_row(suitable.row(rng.index(suitable.rows())));
    return out;
}

namespace {

void check_binary_inputs(const Matrix& majority, const Matrix& minority, const char* who) {
    if (minority.rows() == 0) throw std::invalid_argument(std::string(who) + ": minority class is empty");
    if (majority.rows() < minority.rows()) {
        throw std::invalid_argument(std::string(who) + ": majority class smaller than minority class");
    }
    if (majority.cols() != minority.cols()) throw std::invalid_argument(std::string(who) + ": feature count mismatch");
}

Matrix add(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

}  // namespace

CcrResult ccr(const Matrix& majority, const Matrix& minority, const CcrParams& params, RandomSource& rng) {
    params.validate();
    check_binary_inputs(majority, minority, "ccr");

    auto cleaning = clean(majority, minority, params.energy, params.norm, rng);
    CcrResult out;
    out.translated_majority = add(majority, cleaning.translations);
    out.counts = proportional_sample_counts(cleaning.radii, majority.rows(), minority.rows());
    out.radii = std::move(cleaning.radii);
    out.synthetic = Matrix(0, minority.cols());
    for (std::size_t i = 0; i < minority.rows(); ++i) {
        for (std::size_t s = 0; s < out.counts[i]; ++s) {
            out.synthetic.append_row(sample_in_ball(minority.row(i), out.radii[i], rng));
            out.origin.push_back(i);
        }
    }
    return out;
}

CcrResult rb_ccr(const Matrix& majority, const Matrix& minority, const RbCcrParams& params, RandomSource& rng) {
    params.validate();
    check_binary_inputs(majority, minority, "rb_ccr");

    auto cleaning = clean(majority, minority, params.energy, Norm::l2(), rng);
    CcrResult out;
    out.translated_majority = add(majority, cleaning.translations);
    out.counts = proportional_sample_counts(cleaning.radii, majority.rows(), minority.rows());
    out.radii = std::move(cleaning.radii);
    out.synthetic = Matrix(0, minority.cols());
    const PotentialParams pp{params.gamma, params.potential_norm};
    for (std::size_t i = 0; i < minority.rows(); ++i) {
        if (out.counts[i] == 0) continue;
        auto sample = guided_sample(minority.row(i), out.radii[i], minority, pp, params.region, params.candidates,
                                    out.counts[i], rng);
        out.synthetic.append_rows(sample.points);
        out.origin.insert(out.origin.end(), out.counts[i], i);
    }
    return out;
}

}  // namespace forge

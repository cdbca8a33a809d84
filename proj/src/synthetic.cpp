#include "forge/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace forge {

namespace {

struct Sizes {
    std::size_t majority = 0;
    std::size_t minority = 0;
    std::size_t dims = 0;
};

Sizes class_sizes(const ParamMap& params, const std::string& name) {
    const std::size_t n = params.count("n", 550);
    const double ir = params.number("ir", 10.0);
    const std::size_t dims = params.count("dims", 2);
    if (!(ir >= 1.0)) throw std::invalid_argument(name + ": ir must be >= 1");
    if (dims == 0) throw std::invalid_argument(name + ": dims must be >= 1");
    const auto n_maj = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ir / (ir + 1.0)));
    if (n_maj >= n) throw std::invalid_argument(name + ": n too small for ir, minority class would be empty");
    return {n_maj, n - n_maj, dims};
}

Dataset two_gaussians(const ParamMap& params, RandomSource& rng) {
    const auto sizes = class_sizes(params, "two-gaussians");
    const double overlap = params.number("overlap", 0.5);
    if (overlap < 0.0 || overlap > 1.0) throw std::invalid_argument("two-gaussians: overlap must lie in [0, 1]");
    const double shift = 4.0 * (1.0 - overlap);

    Dataset ds(Matrix(0, sizes.dims), {});
    std::vector<double> row(sizes.dims);
    for (std::size_t i = 0; i < sizes.majority; ++i) {
        for (auto& v : row) v = rng.normal();
        ds.append(row, "0");
    }
    for (std::size_t i = 0; i < sizes.minority; ++i) {
        for (auto& v : row) v = rng.normal();
        row[0] += shift;
        ds.append(row, "1");
    }
    return ds;
}

Dataset disjoint_clusters(const ParamMap& params, RandomSource& rng) {
    const auto sizes = class_sizes(params, "disjoint-clusters");
    const std::size_t clusters = params.count("clusters", 3);
    if (clusters == 0) throw std::invalid_argument("disjoint-clusters: clusters must be >= 1");
    if (clusters > sizes.minority) throw std::invalid_argument("disjoint-clusters: more clusters than minority rows");

    Dataset ds(Matrix(0, sizes.dims), {});
    std::vector<double> row(sizes.dims);
    for (std::size_t i = 0; i < sizes.majority; ++i) {
        for (auto& v : row) v = 1.5 * rng.normal();
        ds.append(row, "0");
    }
    for (std::size_t i = 0; i < sizes.minority; ++i) {
        const std::size_t c = i % clusters;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(clusters);
        for (auto& v : row) v = 0.3 * rng.normal();
        row[0] += 2.5 * std::cos(angle);
        if (sizes.dims > 1) row[1] += 2.5 * std::sin(angle);
        ds.append(row, "1");
    }
    return ds;
}

Dataset label_noise(const ParamMap& params, std::uint64_t seed) {
    const std::string base = params.text("base", "two-gaussians");
    if (base == "label-noise") throw std::invalid_argument("label-noise: base cannot itself be label-noise");
    const double rate = params.number("rate", 0.1);
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("label-noise: rate must lie in [0, 1]");

    auto base_values = params.values();
    base_values.erase("base");
    base_values.erase("rate");
    Dataset ds = generate_synthetic(base, ParamMap(base_values), seed);

    auto flips = RandomSource(seed).derive({0x6e6f697365});
    for (auto& label : ds.labels) {
        if (flips.bernoulli(rate)) label = label == "0" ? "1" : "0";
    }
    return ds;
}

}  // namespace

std::vector<std::string> synthetic_generators() { return {"two-gaussians", "disjoint-clusters", "label-noise"}; }

Dataset generate_synthetic(const std::string& name, const ParamMap& params, std::uint64_t seed) {
    RandomSource rng(seed);
    if (name == "two-gaussians") {
        params.check_known({"n", "ir", "overlap", "dims"}, name);
        return two_gaussians(params, rng);
    }
    if (name == "disjoint-clusters") {
        params.check_known({"n", "ir", "clusters", "dims"}, name);
        return disjoint_clusters(params, rng);
    }
    if (name == "label-noise") return label_noise(params, seed);
    throw std::invalid_argument("unknown synthetic generator '" + name +
                                "' (expected two-gaussians, disjoint-clusters or label-noise)");
}

}  // namespace forge

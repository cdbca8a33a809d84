#include "forge/methods.hpp"

#include <cmath>
#include <stdexcept>

#include "forge/anchoring.hpp"
#include "forge/ccr.hpp"
#include "forge/multiclass.hpp"
#include "forge/radial.hpp"
#include "forge/smote.hpp"

namespace forge {

namespace {

Dataset assemble(const BinaryView& view, const Matrix& majority, const Matrix& minority,
                 const std::vector<std::string>& names) {
    Dataset out(Matrix(0, view.majority.cols()), {}, names);
    out.append(majority, view.majority_label);
    out.append(minority, view.minority_label);
    if (out.feature_names.size() != out.dims()) out.feature_names = names;
    return out;
}

std::size_t deficit(const BinaryView& view) { return view.majority.rows() - view.minority.rows(); }

double data_dims(const BinaryView& view) { return static_cast<double>(std::max<std::size_t>(view.majority.cols(), 1)); }

double ratio_param(const ParamMap& params, double fallback) {
    const double r = params.number("ratio", fallback);
    if (r < 0.0) throw std::invalid_argument("parameter 'ratio' must be >= 0");
    return r;
}

template <typename Fn>
Resampler binary(Fn fn) {
    return [fn](const Dataset& ds, RandomSource& rng) {
        const auto view = binary_view(ds);
        return fn(view, ds.feature_names, rng);
    };
}

CcrParams ccr_params(const ParamMap& p, double dims) {
    CcrParams c;
    c.energy = p.number("energy", 0.25 * dims);
    c.norm = p.norm("norm", Norm::l2());
    c.validate();
    return c;
}

RboParams rbo_params(const ParamMap& p, double dims) {
    RboParams r;
    r.gamma = p.number("gamma", 0.25 * std::sqrt(dims));
    r.step = p.number("step", 0.05);
    r.iterations = p.count("iterations", 500);
    r.k = p.count("k", 10);
    r.early_stop_prob = p.number("early_stop", 0.0);
    r.norm = p.norm("norm", Norm::l1());
    r.validate();
    return r;
}

}  // namespace

const std::vector<MethodInfo>& registered_methods() {
    static const std::vector<MethodInfo> methods = {
        {"none", "no resampling", "", true},
        {"ros", "random oversampling with replacement", "ratio=1", false},
        {"rus", "random undersampling", "ratio=1", false},
        {"smote", "interpolating oversampling", "k=5 ratio=1", false},
        {"smute", "interpolating undersampling", "k=5 ratio=1", false},
        {"csmoute", "combined SMOTE + SMUTE", "k_smote=5 k_smute=5 ratio=0.5", false},
        {"ccr", "energy-based sphere cleaning and resampling", "energy=0.25*m norm=l2", false},
        {"rbccr", "potential-guided sphere resampling",
         "energy=0.25*m gamma=0.25*sqrt(m) region=LEH candidates=100 norm=l2", false},
        {"rbo", "radial-based oversampling", "gamma=0.25*sqrt(m) step=0.05 iterations=500 k=10 early_stop=0 norm=l1",
         false},
        {"rbu", "radial-based undersampling", "gamma=0.25*sqrt(m) ratio=1 norm=l2", false},
        {"pa", "potential anchoring",
         "ratio=0.5 anchors=10 iterations=200 gamma=0.25*sqrt(m) lambda=0.001 lr=0.01 jitter=0.0001 norm=l1", false},
        {"mcrbo", "multiclass radial-based oversampling", "same keys as rbo", true},
        {"mcccr", "multiclass sphere cleaning and resampling", "same keys as ccr", true},
    };
    return methods;
}

Resampler make_resampler(const std::string& name, const ParamMap& params) {
    // A dry run against a 1-D problem catches malformed values before any data is read.
    const auto validate_now = [&](auto build) { build(params, 1.0); };

    if (name == "none") {
        params.check_known({}, name);
        return no_resampling;
    }
    if (name == "ros" || name == "rus") {
        params.check_known({"ratio"}, name);
        const double ratio = ratio_param(params, 1.0);
        const bool over = name == "ros";
        return binary([ratio, over](const BinaryView& v, const std::vector<std::string>& names, RandomSource& rng) {
            const std::size_t n = round_count(ratio * static_cast<double>(deficit(v)));
            if (over) return assemble(v, v.majority, random_oversample(v.minority, n, rng), names);
            if (n > v.majority.rows()) throw std::invalid_argument("rus: ratio removes more rows than the majority has");
            return assemble(v, random_undersample(v.majority, n, rng), v.minority, names);
        });
    }
    if (name == "smote" || name == "smute") {
        params.check_known({"k", "ratio"}, name);
        const std::size_t k = params.count("k", 5);
        if (k == 0) throw std::invalid_argument(name + ": k must be >= 1");
        const double ratio = ratio_param(params, 1.0);
        const bool over = name == "smote";
        return binary([k, ratio, over](const BinaryView& v, const std::vector<std::string>& names, RandomSource& rng) {
            const std::size_t n = round_count(ratio * static_cast<double>(deficit(v)));
            if (over) return assemble(v, v.majority, smote(v.minority, k, n, rng).rows, names);
            return assemble(v, smute(v.majority, k, n, rng).rows, v.minority, names);
        });
    }
    if (name == "csmoute") {
        params.check_known({"k_smote", "k_smute", "ratio"}, name);
        CsmouteParams c;
        c.k_smote = params.count("k_smote", 5);
        c.k_smute = params.count("k_smute", 5);
        c.ratio = params.number("ratio", 0.5);
        c.validate();
        return binary([c](const BinaryView& v, const std::vector<std::string>& names, RandomSource& rng) {
            const auto r = csmoute(v.majority, v.minority, c, rng);
            return assemble(v, r.majority.rows, r.minority.rows, names);
        });
    }
    if (name == "ccr") {
        params.check_known({"energy", "norm"}, name);
        validate_now(ccr_params);
        return binary([params](const BinaryView& v, const std::vector<std::string>& names, RandomSource& rng) {
            const auto r = ccr(v.majority, v.minority, ccr_params(params, data_dims(v)), rng);
            return assemble(v, r.translated_majority, vstack(v.minority, r.synthetic), names);
        });
    }
    if (name == "rbccr") {
        params.check_known({"energy", "gamma", "region", "candidates", "norm"}, name);
        const auto build = [](const ParamMap& p, double dims) {
            RbCcrParams c;
            c.energy = p.number("energy", 0.25 * dims);
            c.gamma = p.number("gamma", 0.25 * std::sqrt(dims));
            c.region = parse_region(p.text("region", "LEH"));
            c.candidates = p.count("candidates", 100);
            c.potential_norm = p.norm("norm", Norm::l2());
            c.validate();
            return c;
        };
        validate_now(build);
        return binary([params, build](const BinaryView& v, const std::vector<std::string>& names, RandomSource& rng) {
            const auto r = rb_ccr(v.majority, v.minority, build(params, data_dims(v)), rng);
            return assemble(v, r.translated_majority, vstack(v.minority, r.synthetic), names);
        });
    }
    if (name == "rbo") {
        params.check_known({"gamma", "step", "iterations", "k", "early_stop", "norm"}, name);
        validate_now(rbo_params);
        return binary([params](const BinaryView& v, const std::vector<std::string>& names, RandomSource& rng) {
            if (deficit(v) == 0) return assemble(v, v.majority, v.minority, names);
            const auto r = rbo(v.majority, v.minority, rbo_params(params, data_dims(v)), rng);
            return assemble(v, v.majority, vstack(v.minority, r.synthetic), names);
        });
    }
    if (name == "rbu") {
        params.check_known({"gamma", "ratio", "norm"}, name);
        const auto build = [](const ParamMap& p, double dims) {
            RbuParams c;
            c.gamma = p.number("gamma", 0.25 * std::sqrt(dims));
            c.ratio = p.number("ratio", 1.0);
            c.norm = p.norm("norm", Norm::l2());
            c.validate();
            return c;
        };
        validate_now(build);
        return binary([params, build](const BinaryView& v, const std::vector<std::string>& names, RandomSource&) {
            const auto r = rbu(v.majority, v.minority, build(params, data_dims(v)));
            return assemble(v, r.kept, v.minority, names);
        });
    }
    if (name == "pa") {
        params.check_known({"ratio", "anchors", "iterations", "gamma", "lambda", "lr", "jitter", "norm"}, name);
        const auto build = [](const ParamMap& p, double dims) {
            PaParams c;
            c.ratio = p.number("ratio", 0.5);
            c.anchors = p.count("anchors", 10);
            c.iterations = p.count("iterations", 200);
            c.gamma = p.number("gamma", 0.25 * std::sqrt(dims));
            c.lambda = p.number("lambda", 1e-3);
            c.learning_rate = p.number("lr", 0.01);
            c.jitter = p.number("jitter", 1e-4);
            c.potential_norm = p.norm("norm", Norm::l1());
            c.validate();
            return c;
        };
        validate_now(build);
        return binary([params, build](const BinaryView& v, const std::vector<std::string>& names, RandomSource& rng) {
            const auto r = potential_anchoring(v.majority, v.minority, build(params, data_dims(v)), rng);
            return assemble(v, r.majority_prototypes.positions, vstack(v.minority, r.minority_prototypes.positions),
                            names);
        });
    }
    if (name == "mcrbo") {
        params.check_known({"gamma", "step", "iterations", "k", "early_stop", "norm"}, name);
        validate_now(rbo_params);
        return [params](const Dataset& ds, RandomSource& rng) {
            const double dims = static_cast<double>(std::max<std::size_t>(ds.dims(), 1));
            return mc_rbo(ds, rbo_params(params, dims), rng).resampled;
        };
    }
    if (name == "mcccr") {
        params.check_known({"energy", "norm"}, name);
        validate_now(ccr_params);
        return [params](const Dataset& ds, RandomSource& rng) {
            const double dims = static_cast<double>(std::max<std::size_t>(ds.dims(), 1));
            return mc_ccr(ds, ccr_params(params, dims), rng).resampled;
        };
    }
    std::string known;
    for (const auto& m : registered_methods()) known += (known.empty() ? "" : ", ") + m.name;
    throw std::invalid_argument("unknown method '" + name + "' (registered: " + known + ")");
}

}  // namespace forge

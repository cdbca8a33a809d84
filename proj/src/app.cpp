#include "forge/app.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "forge/csv.hpp"
#include "forge/evaluation.hpp"
#include "forge/methods.hpp"
#include "forge/potential.hpp"
#include "forge/synthetic.hpp"

namespace forge {

namespace {

constexpr const char* kConfigPrefix = "# forge-config ";

nlohmann::json config_json(const RunConfig& c) {
    nlohmann::json j;
    j["command"] = c.command;
    j["input"] = c.input;
    j["method"] = c.method;
    j["params"] = c.params;
    j["seed"] = c.seed;
    j["folds"] = c.folds;
    j["repeats"] = c.repeats;
    j["standardize"] = c.standardize;
    j["label_column"] = c.label_column;
    j["neighbors"] = c.neighbors;
    return j;
}

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

nlohmann::json metrics_json(const MetricsReport& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, v] : m.entries()) j[name] = optional_json(v);
    return j;
}

void write_atomically(const std::string& path, const std::string& content) {
    if (path.empty()) throw std::invalid_argument("no output path given");
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot move output into place at '" + path + "': " + ec.message());
    }
}

std::string csv_artifact(const RunConfig& config, const Dataset& ds) {
    std::ostringstream out;
    out << kConfigPrefix << config_to_json(config) << '\n';
    write_csv(ds, out);
    return out.str();
}

Dataset read_input(const RunConfig& config) {
    if (config.input.empty()) throw std::invalid_argument(config.command + ": --input is required");
    return parse_csv_file(config.input, config.label_column);
}

std::string run_resample(const RunConfig& config) {
    const auto resampler = make_resampler(config.method, ParamMap(config.params));
    Dataset ds = read_input(config);
    std::optional<Standardizer> z;
    if (config.standardize) {
        z = Standardizer::fit(ds.features);
        ds.features = z->apply(ds.features);
    }
    RandomSource rng(config.seed);
    Dataset out = resampler(ds, rng);
    if (z) out.features = z->invert(out.features);
    out.feature_names = ds.feature_names;
    return csv_artifact(config, out);
}

std::string run_evaluate(const RunConfig& config) {
    const auto resampler = make_resampler(config.method, ParamMap(config.params));
    if (config.neighbors == 0) throw std::invalid_argument("evaluate: neighbors must be >= 1");
    const Dataset ds = read_input(config);
    CvOptions options;
    options.folds = config.folds;
    options.repeats = config.repeats;
    options.seed = config.seed;
    options.standardize = config.standardize;
    const std::size_t k = config.neighbors;
    const auto report =
        cross_validate(ds, resampler, [k] { return std::make_unique<KnnClassifier>(k, Norm::l2()); }, options);

    nlohmann::json j;
    j["config"] = config_json(config);
    j["method"] = config.method;
    j["params"] = config.params;
    j["seed"] = config.seed;
    j["folds"] = config.folds;
    j["repeats"] = config.repeats;
    j["classifier"] = {{"name", "knn"}, {"k", k}, {"norm", "l2"}};
    j["positive_label"] = report.positive_label;
    j["failed_folds"] = report.failed;
    nlohmann::json mean = nlohmann::json::object(), sd = nlohmann::json::object(), defined = nlohmann::json::object();
    for (const auto& [name, s] : report.summary) {
        mean[name] = optional_json(s.mean);
        sd[name] = optional_json(s.std);
        defined[name] = s.defined;
    }
    nlohmann::json per_fold = nlohmann::json::array();
    for (const auto& f : report.folds) {
        nlohmann::json e;
        e["repeat"] = f.repeat;
        e["fold"] = f.fold;
        e["ok"] = f.ok;
        e["train_size"] = f.train_size;
        e["resampled_size"] = f.resampled_size;
        if (f.ok) {
            e["metrics"] = metrics_json(f.metrics);
        } else {
            e["error"] = f.error;
        }
        per_fold.push_back(std::move(e));
    }
    j["metrics"] = {{"mean", mean}, {"std", sd}, {"defined", defined}, {"per_fold", per_fold}};
    return j.dump(2) + "\n";
}

std::string run_grid(const RunConfig& config) {
    const ParamMap p(config.params);
    p.check_known({"gamma", "norm", "rx", "ry", "minority", "x_min", "x_max", "y_min", "y_max"}, "grid");
    const Dataset ds = read_input(config);
    if (ds.dims() != 2) throw std::invalid_argument("grid: needs a 2-D dataset, got " + std::to_string(ds.dims()));
    if (ds.size() == 0) throw std::invalid_argument("grid: empty dataset");

    std::string minority = p.text("minority", "");
    if (minority.empty()) minority = binary_view(ds).minority_label;
    GridBounds b;
    double lo[2], hi[2];
    for (std::size_t c = 0; c < 2; ++c) {
        lo[c] = hi[c] = ds.features(0, c);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            lo[c] = std::min(lo[c], ds.features(i, c));
            hi[c] = std::max(hi[c], ds.features(i, c));
        }
        const double pad = 0.1 * std::max(hi[c] - lo[c], 1e-9);
        lo[c] -= pad;
        hi[c] += pad;
    }
    b.x_min = p.number("x_min", lo[0]);
    b.x_max = p.number("x_max", hi[0]);
    b.y_min = p.number("y_min", lo[1]);
    b.y_max = p.number("y_max", hi[1]);
    PotentialParams pp;
    pp.gamma = p.number("gamma", 1.0);
    pp.norm = p.norm("norm", Norm::l1());
    const auto grid = potential_grid(ds, minority, b, p.count("rx", 50), p.count("ry", 50), pp);

    std::ostringstream out;
    out << kConfigPrefix << config_to_json(config) << '\n';
    write_grid_csv(grid, out);
    return out.str();
}

std::string run_synth(const RunConfig& config) {
    return csv_artifact(config, generate_synthetic(config.method, ParamMap(config.params), config.seed));
}

}  // namespace

std::string config_to_json(const RunConfig& config) { return config_json(config).dump(); }

RunConfig config_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.input = j.value("input", "");
    c.method = j.value("method", "");
    c.params = j.value("params", std::map<std::string, std::string>{});
    c.seed = j.value("seed", std::uint64_t{0});
    c.folds = j.value("folds", std::size_t{5});
    c.repeats = j.value("repeats", std::size_t{1});
    c.standardize = j.value("standardize", false);
    c.label_column = j.value("label_column", "");
    c.neighbors = j.value("neighbors", std::size_t{5});
    return c;
}

RunConfig config_from_artifact(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string first;
    std::getline(in, first);
    const std::string prefix = kConfigPrefix;
    if (first.rfind(prefix, 0) == 0) return config_from_json(first.substr(prefix.size()));
    std::stringstream rest;
    rest << first << '\n' << in.rdbuf();
    const auto j = nlohmann::json::parse(rest.str());
    return config_from_json(j.at("config").dump());
}

int run(const RunConfig& config, std::ostream& err) {
    try {
        std::string content;
        if (config.command == "resample") {
            content = run_resample(config);
        } else if (config.command == "evaluate") {
            content = run_evaluate(config);
        } else if (config.command == "grid") {
            content = run_grid(config);
        } else if (config.command == "synth") {
            content = run_synth(config);
        } else {
            throw std::invalid_argument("unknown command '" + config.command + "'");
        }
        write_atomically(config.output, content);
        return 0;
    } catch (const std::exception& e) {
        err << "forge " << config.command << ": error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace forge

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "forge/app.hpp"
#include "forge/methods.hpp"
#include "forge/params.hpp"
#include "forge/synthetic.hpp"

namespace {

std::string methods_help() {
    std::string text = "Resampling methods (defaults unvalidated against published parameter grids; m = feature count):\n";
    for (const auto& m : forge::registered_methods()) {
        text += "  " + m.name + (m.multiclass ? "" : " [binary]") + ": " + m.summary;
        if (!m.defaults.empty()) text += "\n      " + m.defaults;
        text += "\n";
    }
    text +=
        "Generators for synth: two-gaussians (n ir overlap dims), disjoint-clusters (n ir clusters dims),\n"
        "  label-noise (base rate + base parameters)\n"
        "Grid parameters: gamma=1 norm=l1 rx=50 ry=50 minority=<smaller class> x_min x_max y_min y_max\n"
        "Distance-based methods are scale-sensitive; standardization is off unless --standardize is given.\n";
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forge: resampling for imbalanced tabular data"};
    app.footer(methods_help());
    app.require_subcommand(1);

    forge::RunConfig config;
    std::vector<std::string> params;

    const std::pair<const char*, const char*> commands[] = {
        {"resample", "resample a labelled CSV and write the result as CSV"},
        {"evaluate", "cross-validate a method with a k-NN classifier and write JSON metrics"},
        {"grid", "write the mutual class potential of 2-D data on a lattice"},
        {"synth", "generate a synthetic imbalanced dataset"},
    };
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        if (std::string(name) != "synth") sub->add_option("--input", config.input, "input CSV")->required();
        sub->add_option("--output", config.output, "output file")->required();
        if (std::string(name) != "grid") {
            sub->add_option("--method", config.method, "method or generator name")->required();
        }
        sub->add_option("--params", params, "key=value parameters");
        sub->add_option("--seed", config.seed, "random seed");
        sub->add_option("--label-column", config.label_column, "label column name");
        if (std::string(name) == "evaluate") {
            sub->add_option("--folds", config.folds, "cross-validation folds")->check(CLI::Range(2, 1000));
            sub->add_option("--repeats", config.repeats, "cross-validation repeats")->check(CLI::Range(1, 1000));
            sub->add_option("--neighbors", config.neighbors, "k of the k-NN classifier")->check(CLI::Range(1, 100000));
        }
        if (std::string(name) == "resample" || std::string(name) == "evaluate") {
            sub->add_flag("--standardize", config.standardize, "z-score features before resampling");
        }
        sub->callback([&config, sub] { config.command = sub->get_name(); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        config.params = forge::ParamMap::parse(params).values();
    } catch (const std::exception& e) {
        std::cerr << "forge: error: " << e.what() << '\n';
        return 2;
    }
    return forge::run(config, std::cerr);
}

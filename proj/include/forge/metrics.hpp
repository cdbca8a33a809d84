#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace forge {

// counts[t][p]: observations of true class t predicted as class p.
struct ConfusionMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> counts;

    // Label set = `labels` if given, else the sorted union of truth and predictions.
    static ConfusionMatrix from_predictions(std::span<const std::string> truth, std::span<const std::string> predicted,
                                            std::vector<std::string> labels = {});
    static ConfusionMatrix binary(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn,
                                  const std::string& positive = "1", const std::string& negative = "0");

    std::size_t index_of(const std::string& label) const;
    std::size_t total() const;
    // Collapses to positive vs everything else.
    ConfusionMatrix one_vs_rest(const std::string& positive) const;
};

// Undefined values (zero denominators, missing scores) are std::nullopt.
struct MetricsReport {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> specificity;
    std::optional<double> f_measure;
    std::optional<double> g_mean;
    std::optional<double> auc;
    std::optional<double> avacc;

    std::vector<std::pair<std::string, std::optional<double>>> entries() const;
};

struct ScoredTruth {
    std::vector<double> scores;   // higher = more positive
    std::vector<bool> positive;
};

// Mann-Whitney AUC with mid-ranks for ties; nullopt without both classes.
std::optional<double> rank_auc(std::span<const double> scores, const std::vector<bool>& positive);

// Binary confusion matrix only; `positive` names the positive class.
MetricsReport binary_metrics(const ConfusionMatrix& cm, const std::string& positive,
                             const std::optional<ScoredTruth>& scores = std::nullopt);

// Mean of per-class recall; nullopt when a true class has no observations.
std::optional<double> avacc(const ConfusionMatrix& cm);

// Any number of classes: binary metrics of positive-vs-rest, plus accuracy
// and avacc over the full matrix.
MetricsReport evaluate_predictions(const ConfusionMatrix& cm, const std::string& positive,
                                   const std::optional<ScoredTruth>& scores = std::nullopt);

}  // namespace forge

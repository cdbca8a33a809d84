#include "forge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace forge {
namespace {

std::optional<double> ratio(double num, double den) {
    if (den == 0.0) return std::nullopt;
    return num / den;
}

}  // namespace

ConfusionMatrix ConfusionMatrix::from_predictions(std::span<const std::string> truth,
                                                  std::span<const std::string> predicted,
                                                  std::vector<std::string> labels) {
    if (truth.size() != predicted.size()) throw std::invalid_argument("confusion matrix: length mismatch");
    if (labels.empty()) {
        std::set<std::string> all(truth.begin(), truth.end());
        all.insert(predicted.begin(), predicted.end());
        labels.assign(all.begin(), all.end());
    }
    ConfusionMatrix cm;
    cm.labels = std::move(labels);
    cm.counts.assign(cm.labels.size(), std::vector<std::size_t>(cm.labels.size(), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) ++cm.counts[cm.index_of(truth[i])][cm.index_of(predicted[i])];
    return cm;
}

ConfusionMatrix ConfusionMatrix::binary(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn,
                                        const std::string& positive, const std::string& negative) {
    ConfusionMatrix cm;
    cm.labels = {positive, negative};
    cm.counts = {{tp, fn}, {fp, tn}};
    return cm;
}

std::size_t ConfusionMatrix::index_of(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw std::invalid_argument("confusion matrix: unknown label '" + label + "'");
    return static_cast<std::size_t>(it - labels.begin());
}

std::size_t ConfusionMatrix::total() const {
    std::size_t n = 0;
    for (const auto& row : counts) n = std::accumulate(row.begin(), row.end(), n);
    return n;
}

ConfusionMatrix ConfusionMatrix::one_vs_rest(const std::string& positive) const {
    const std::size_t p = index_of(positive);
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t t = 0; t < labels.size(); ++t) {
        for (std::size_t q = 0; q < labels.size(); ++q) {
            const std::size_t c = counts[t][q];
            if (t == p && q == p) tp += c;
            else if (t == p) fn += c;
            else if (q == p) fp += c;
            else tn += c;
        }
    }
    return binary(tp, fp, fn, tn, positive, "rest");
}

std::vector<std::pair<std::string, std::optional<double>>> MetricsReport::entries() const {
    return {{"accuracy", accuracy}, {"precision", precision}, {"recall", recall},   {"specificity", specificity},
            {"f_measure", f_measure}, {"g_mean", g_mean},     {"auc", auc},         {"avacc", avacc}};
}

std::optional<double> rank_auc(std::span<const double> scores, const std::vector<bool>& positive) {
    if (scores.size() != positive.size()) throw std::invalid_argument("rank_auc: length mismatch");
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double pos_rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t q = i; q < j; ++q) {
            if (positive[order[q]]) {
                pos_rank_sum += mid_rank;
                ++n_pos;
            }
        }
        i = j;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) return std::nullopt;
    const double np = static_cast<double>(n_pos);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

MetricsReport binary_metrics(const ConfusionMatrix& cm, const std::string& positive,
                             const std::optional<ScoredTruth>& scores) {
    if (cm.labels.size() != 2) throw std::invalid_argument("binary_metrics: confusion matrix is not binary");
    const std::size_t p = cm.index_of(positive);
    const std::size_t q = 1 - p;
    const double tp = static_cast<double>(cm.counts[p][p]);
    const double fn = static_cast<double>(cm.counts[p][q]);
    const double fp = static_cast<double>(cm.counts[q][p]);
    const double tn = static_cast<double>(cm.counts[q][q]);

    MetricsReport r;
    r.accuracy = ratio(tp + tn, tp + tn + fp + fn);
    r.precision = ratio(tp, tp + fp);
    r.recall = ratio(tp, tp + fn);
    r.specificity = ratio(tn, tn + fp);
    if (r.precision && r.recall) r.f_measure = ratio(2.0 * *r.precision * *r.recall, *r.precision + *r.recall);
    if (r.recall && r.specificity) r.g_mean = std::sqrt(*r.recall * *r.specificity);
    if (scores) r.auc = rank_auc(scores->scores, scores->positive);
    r.avacc = avacc(cm);
    return r;
}

std::optional<double> avacc(const ConfusionMatrix& cm) {
    if (cm.labels.empty()) return std::nullopt;
    double sum = 0.0;
    for (std::size_t t = 0; t < cm.labels.size(); ++t) {
        const double row = static_cast<double>(std::accumulate(cm.counts[t].begin(), cm.counts[t].end(), std::size_t{0}));
        if (row == 0.0) return std::nullopt;
        sum += static_cast<double>(cm.counts[t][t]) / row;
    }
    return sum / static_cast<double>(cm.labels.size());
}

MetricsReport evaluate_predictions(const ConfusionMatrix& cm, const std::string& positive,
                                   const std::optional<ScoredTruth>& scores) {
    MetricsReport r = binary_metrics(cm.one_vs_rest(positive), positive, scores);
    std::size_t correct = 0;
    for (std::size_t t = 0; t < cm.labels.size(); ++t) correct += cm.counts[t][t];
    r.accuracy = ratio(static_cast<double>(correct), static_cast<double>(cm.total()));
    r.avacc = avacc(cm);
    return r;
}

}  // namespace forge

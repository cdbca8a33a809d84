#include "forge/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace forge {

Predictions knn_classify(const Dataset& train, const Matrix& test, std::size_t k, const Norm& norm,
                         const std::string& positive_label) {
    if (train.size() == 0) throw std::invalid_argument("knn_classify: empty training set");
    if (k == 0) throw std::invalid_argument("knn_classify: k must be at least 1");
    Predictions out;
    out.labels.reserve(test.rows());
    out.positive_scores.reserve(test.rows());
    for (std::size_t i = 0; i < test.rows(); ++i) {
        const auto nn = k_nearest_neighbors(test.row(i), train.features, k, norm);
        std::map<std::string, std::pair<std::size_t, double>> votes;  // label -> (count, summed distance)
        for (std::size_t idx : nn) {
            auto& v = votes[train.labels[idx]];
            ++v.first;
            v.second += distance(test.row(i), train.features.row(idx), norm);
        }
        const std::string* best = nullptr;
        std::pair<std::size_t, double> best_vote{0, 0.0};
        for (const auto& [label, vote] : votes) {
            const bool better = best == nullptr || vote.first > best_vote.first ||
                                (vote.first == best_vote.first && vote.second < best_vote.second);
            if (better) {
                best = &label;
                best_vote = vote;
            }
        }
        out.labels.push_back(*best);
        const auto pos = votes.find(positive_label);
        const double pos_votes = pos == votes.end() ? 0.0 : static_cast<double>(pos->second.first);
        out.positive_scores.push_back(pos_votes / static_cast<double>(nn.size()));
    }
    return out;
}

void KnnClassifier::fit(const Dataset& train) { train_ = train; }

Predictions KnnClassifier::predict(const Matrix& test, const std::string& positive_label) const {
    return knn_classify(train_, test, k_, norm_, positive_label);
}

Dataset no_resampling(const Dataset& ds, RandomSource&) { return ds; }

namespace {

std::string smallest_class(const Dataset& ds) {
    const auto counts = ds.class_counts();
    if (counts.empty()) throw std::invalid_argument("cross_validate: empty dataset");
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
        if (it->second < best->second) best = it;
    }
    return best->first;
}

std::map<std::string, MetricSummary> summarize(const std::vector<FoldOutcome>& folds) {
    std::map<std::string, std::vector<double>> values;
    for (const auto& [name, v] : MetricsReport{}.entries()) values[name];
    for (const auto& f : folds) {
        if (!f.ok) continue;
        for (const auto& [name, v] : f.metrics.entries()) {
            if (v) values[name].push_back(*v);
        }
    }
    std::map<std::string, MetricSummary> out;
    for (const auto& [name, vs] : values) {
        MetricSummary s;
        s.defined = vs.size();
        if (!vs.empty()) {
            double sum = 0.0;
            for (double v : vs) sum += v;
            const double mean = sum / static_cast<double>(vs.size());
            double sq = 0.0;
            for (double v : vs) sq += (v - mean) * (v - mean);
            s.mean = mean;
            s.std = vs.size() > 1 ? std::sqrt(sq / static_cast<double>(vs.size() - 1)) : 0.0;
        }
        out[name] = s;
    }
    return out;
}

}  // namespace

CvReport cross_validate(const Dataset& ds, const Resampler& resampler, const ClassifierFactory& classifier,
                        const CvOptions& options) {
    if (options.repeats == 0) throw std::invalid_argument("cross_validate: repeats must be at least 1");
    CvReport report;
    report.positive_label = options.positive_label.empty() ? smallest_class(ds) : options.positive_label;
    std::vector<std::string> all_labels;
    for (const auto& [label, count] : ds.class_counts()) all_labels.push_back(label);

    const RandomSource master(options.seed);
    for (std::size_t r = 0; r < options.repeats; ++r) {
        auto split_rng = master.derive({r, 0});
        const auto folds = stratified_k_fold(ds, options.folds, split_rng);
        for (std::size_t f = 0; f < folds.size(); ++f) {
            FoldOutcome outcome;
            outcome.repeat = r;
            outcome.fold = f;
            outcome.train_size = folds[f].train.size();
            try {
                Dataset train = ds.subset(folds[f].train);
                Dataset test = ds.subset(folds[f].test);
                if (options.standardize) {
                    const auto z = Standardizer::fit(train.features);
                    train.features = z.apply(train.features);
                    test.features = z.apply(test.features);
                }
                auto fold_rng = master.derive({r, f + 1});
                const Dataset resampled = resampler(train, fold_rng);
                resampled.validate();
                outcome.resampled_size = resampled.size();

                auto model = classifier();
                model->fit(resampled);
                const auto pred = model->predict(test.features, report.positive_label);
                const auto cm = ConfusionMatrix::from_predictions(test.labels, pred.labels, all_labels);
                ScoredTruth scored{pred.positive_scores, {}};
                for (const auto& l : test.labels) scored.positive.push_back(l == report.positive_label);
                outcome.metrics = evaluate_predictions(cm, report.positive_label, scored);
                outcome.ok = true;
            } catch (const std::exception& e) {
                outcome.error = e.what();
                ++report.failed;
            }
            report.folds.push_back(std::move(outcome));
        }
    }
    report.summary = summarize(report.folds);
    return report;
}

}  // namespace forge

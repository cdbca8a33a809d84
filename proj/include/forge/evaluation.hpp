#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forge/dataset.hpp"
#include "forge/metrics.hpp"
#include "forge/random.hpp"

namespace forge {

struct Predictions {
    std::vector<std::string> labels;
    std::vector<double> positive_scores;  // fraction of votes for the positive class
};

class Classifier {
public:
    virtual ~Classifier() = default;
    virtual void fit(const Dataset& train) = 0;
    virtual Predictions predict(const Matrix& test, const std::string& positive_label) const = 0;
};

// Majority vote of the k nearest training rows. Vote ties go to the label
// with the smaller summed neighbour distance, then the lexically smaller label.
Predictions knn_classify(const Dataset& train, const Matrix& test, std::size_t k, const Norm& norm,
                         const std::string& positive_label);

class KnnClassifier final : public Classifier {
public:
    explicit KnnClassifier(std::size_t k = 5, Norm norm = Norm::l2()) : k_(k), norm_(norm) {}
    void fit(const Dataset& train) override;
    Predictions predict(const Matrix& test, const std::string& positive_label) const override;

private:
    std::size_t k_;
    Norm norm_;
    Dataset train_;
};

using Resampler = std::function<Dataset(const Dataset&, RandomSource&)>;
using ClassifierFactory = std::function<std::unique_ptr<Classifier>()>;

struct CvOptions {
    std::size_t folds = 5;
    std::size_t repeats = 1;
    std::uint64_t seed = 0;
    bool standardize = false;    // z-score fit on each training split
    std::string positive_label;  // empty: the smallest class
};

struct FoldOutcome {
    std::size_t repeat = 0;
    std::size_t fold = 0;
    bool ok = false;
    std::string error;
    std::size_t train_size = 0;
    std::size_t resampled_size = 0;
    MetricsReport metrics;
};

struct MetricSummary {
    std::optional<double> mean;
    std::optional<double> std;  // sample standard deviation, 0 for a single value
    std::size_t defined = 0;    // folds where the metric was defined
};

struct CvReport {
    std::string positive_label;
    std::vector<FoldOutcome> folds;  // ordered by (repeat, fold)
    std::map<std::string, MetricSummary> summary;
    std::size_t failed = 0;
};

// Seeds: split of repeat r uses derive({r, 0}); resampling of (r, f) uses
// derive({r, f + 1}). Only training rows ever reach the resampler.
CvReport cross_validate(const Dataset& ds, const Resampler& resampler, const ClassifierFactory& classifier,
                        const CvOptions& options);

// Identity resampler.
Dataset no_resampling(const Dataset& ds, RandomSource& rng);

}  // namespace forge

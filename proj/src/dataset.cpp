#include "forge/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>

namespace forge {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    for (const auto& r : rows) {
        append_row(std::span<const double>(r.begin(), r.size()));
    }
}

void Matrix::append_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) {
        throw std::invalid_argument("Matrix::append_row: expected " + std::to_string(cols_) + " values, got " +
                                    std::to_string(values.size()));
    }
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

void Matrix::append_rows(const Matrix& other) {
    for (std::size_t i = 0; i < other.rows(); ++i) append_row(other.row(i));
    if (rows_ == 0 && cols_ == 0) cols_ = other.cols();
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
    Matrix out(0, cols_);
    out.data_.reserve(indices.size() * cols_);
    for (std::size_t idx : indices) {
        if (idx >= rows_) throw std::out_of_range("Matrix::select_rows: row index out of range");
        out.append_row(row(idx));
    }
    return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    Matrix out = top;
    if (out.rows() == 0 && out.cols() == 0) return bottom;
    out.append_rows(bottom);
    return out;
}

Norm Norm::lp(double p) {
    if (!std::isfinite(p) || p < 1.0) throw std::invalid_argument("Norm::lp: p must be finite and >= 1");
    if (p == 1.0) return l1();
    if (p == 2.0) return l2();
    return {Kind::Lp, p};
}

Norm Norm::parse(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "l1") return l1();
    if (s == "l2") return l2();
    if (s.rfind("lp:", 0) == 0) s = s.substr(3);
    try {
        std::size_t used = 0;
        const double p = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return lp(p);
    } catch (const std::exception&) {
        throw std::invalid_argument("unrecognized norm '" + std::string(text) + "' (expected l1, l2, lp:<p> or <p>)");
    }
}

std::string Norm::name() const {
    switch (kind) {
        case Kind::L1: return "l1";
        case Kind::L2: return "l2";
        case Kind::Lp: break;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "lp:%.17g", p);
    return buf;
}

double distance(std::span<const double> a, std::span<const double> b, const Norm& norm) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("distance: dimensionality mismatch (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    double acc = 0.0;
    switch (norm.kind) {
        case Norm::Kind::L1:
            for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
            return acc;
        case Norm::Kind::L2:
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        case Norm::Kind::Lp:
            for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(std::abs(a[i] - b[i]), norm.p);
            return std::pow(acc, 1.0 / norm.p);
    }
    return acc;
}

Dataset::Dataset(Matrix f, std::vector<std::string> l, std::vector<std::string> names)
    : features(std::move(f)), labels(std::move(l)), feature_names(std::move(names)) {
    if (feature_names.empty()) feature_names = default_feature_names(features.cols());
    validate();
}

void Dataset::validate() const {
    if (features.rows() != labels.size()) {
        throw std::invalid_argument("Dataset: " + std::to_string(features.rows()) + " feature rows but " +
                                    std::to_string(labels.size()) + " labels");
    }
    if (!feature_names.empty() && feature_names.size() != features.cols()) {
        throw std::invalid_argument("Dataset: feature name count does not match column count");
    }
    for (std::size_t i = 0; i < features.rows(); ++i) {
        for (std::size_t j = 0; j < features.cols(); ++j) {
            if (!std::isfinite(features(i, j))) {
                throw std::invalid_argument("Dataset: non-finite value at row " + std::to_string(i) + ", column " +
                                            std::to_string(j));
            }
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Dataset out;
    out.features = features.select_rows(indices);
    out.feature_names = feature_names;
    out.labels.reserve(indices.size());
    for (std::size_t idx : indices) out.labels.push_back(labels.at(idx));
    return out;
}

Matrix Dataset::rows_of(std::string_view label) const {
    Matrix out(0, features.cols());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) out.append_row(features.row(i));
    }
    return out;
}

std::map<std::string, std::size_t> Dataset::class_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& l : labels) ++counts[l];
    return counts;
}

void Dataset::append(std::span<const double> row, const std::string& label) {
    features.append_row(row);
    labels.push_back(label);
    if (feature_names.size() != features.cols()) feature_names = default_feature_names(features.cols());
}

void Dataset::append(const Matrix& rows, const std::string& label) {
    for (std::size_t i = 0; i < rows.rows(); ++i) append(rows.row(i), label);
}

std::vector<std::string> default_feature_names(std::size_t m) {
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t j = 0; j < m; ++j) names.push_back("x" + std::to_string(j));
    return names;
}

std::vector<std::size_t> k_nearest_neighbors(std::span<const double> query, const Matrix& pool, std::size_t k,
                                             const Norm& norm, std::optional<std::size_t> exclude) {
    if (pool.empty()) throw std::invalid_argument("k_nearest_neighbors: empty pool");
    if (k == 0) throw std::invalid_argument("k_nearest_neighbors: k must be positive");

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(pool.rows());
    for (std::size_t i = 0; i < pool.rows(); ++i) {
        if (exclude && *exclude == i) continue;
        scored.emplace_back(distance(query, pool.row(i), norm), i);
    }
    const std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end());

    std::vector<std::size_t> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(scored[i].second);
    return out;
}

std::vector<std::size_t> k_nearest_neighbors(std::size_t query_row, const Matrix& pool, std::size_t k,
                                             const Norm& norm, bool include_self) {
    if (pool.empty()) throw std::invalid_argument("k_nearest_neighbors: empty pool");
    if (query_row >= pool.rows()) throw std::out_of_range("k_nearest_neighbors: query row out of range");
    return k_nearest_neighbors(pool.row(query_row), pool, k, norm,
                               include_self ? std::nullopt : std::optional<std::size_t>(query_row));
}

std::map<std::string, std::vector<std::size_t>> split_by_class(std::span<const std::string> labels) {
    std::map<std::string, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < labels.size(); ++i) out[labels[i]].push_back(i);
    return out;
}

std::map<std::string, std::vector<std::size_t>> split_by_class(const Dataset& ds) { return split_by_class(ds.labels); }

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, RandomSource& rng) {
    if (count > n) throw std::invalid_argument("sample_without_replacement: count exceeds population");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.index(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    return idx;
}

std::vector<Fold> stratified_k_fold(std::span<const std::string> labels, std::size_t folds, RandomSource& rng) {
    if (folds < 2) throw std::invalid_argument("stratified_k_fold: need at least 2 folds");
    const auto by_class = split_by_class(labels);
    for (const auto& [label, members] : by_class) {
        if (members.size() < folds) {
            throw std::invalid_argument("stratified_k_fold: class '" + label + "' has " +
                                        std::to_string(members.size()) + " observations, fewer than " +
                                        std::to_string(folds) + " folds");
        }
    }

    std::vector<std::size_t> assignment(labels.size());
    std::size_t offset = 0;
    for (const auto& [label, members] : by_class) {
        auto order = sample_without_replacement(members.size(), members.size(), rng);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            assignment[members[order[pos]]] = (offset + pos) % folds;
        }
        offset = (offset + members.size()) % folds;
    }

    std::vector<Fold> out(folds);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t f = 0; f < folds; ++f) {
            (assignment[i] == f ? out[f].test : out[f].train).push_back(i);
        }
    }
    return out;
}

std::vector<Fold> stratified_k_fold(const Dataset& ds, std::size_t folds, RandomSource& rng) {
    return stratified_k_fold(ds.labels, folds, rng);
}

BinaryView binary_view(const Dataset& ds) {
    const auto counts = ds.class_counts();
    if (counts.size() != 2) {
        throw std::invalid_argument("binary method requires exactly 2 classes, found " + std::to_string(counts.size()));
    }
    auto first = counts.begin();
    auto second = std::next(first);
    // map iterates lexically, so on equal counts `first` stays majority
    const bool first_is_majority = first->second >= second->second;
    BinaryView view;
    view.majority_label = first_is_majority ? first->first : second->first;
    view.minority_label = first_is_majority ? second->first : first->first;
    view.majority = ds.rows_of(view.majority_label);
    view.minority = ds.rows_of(view.minority_label);
    return view;
}

Standardizer Standardizer::fit(const Matrix& x) {
    Standardizer s;
    const std::size_t m = x.cols();
    s.mean.assign(m, 0.0);
    s.scale.assign(m, 1.0);
    if (x.rows() == 0) return s;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < m; ++j) s.mean[j] += x(i, j);
    for (auto& v : s.mean) v /= static_cast<double>(x.rows());
    std::vector<double> var(m, 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const double d = x(i, j) - s.mean[j];
            var[j] += d * d;
        }
    for (std::size_t j = 0; j < m; ++j) {
        const double sd = std::sqrt(var[j] / static_cast<double>(x.rows()));
        s.scale[j] = sd > 0.0 ? sd : 1.0;
    }
    return s;
}

Matrix Standardizer::apply(const Matrix& x) const {
    Matrix out = x;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = (out(i, j) - mean[j]) / scale[j];
    return out;
}

Matrix Standardizer::invert(const Matrix& x) const {
    Matrix out = x;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = out(i, j) * scale[j] + mean[j];
    return out;
}

}  // namespace forge

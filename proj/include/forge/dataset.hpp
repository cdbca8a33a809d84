#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forge/random.hpp"

namespace forge {

// Dense row-major matrix of doubles. Rows are observations.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    // An empty matrix with zero columns adopts the width of its first row.
    void append_row(std::span<const double> values);
    void append_rows(const Matrix& other);
    Matrix select_rows(std::span<const std::size_t> indices) const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix vstack(const Matrix& top, const Matrix& bottom);

// Distance norm. lp(1) and lp(2) collapse to the dedicated kinds.
struct Norm {
    enum class Kind { L1, L2, Lp };

    Kind kind = Kind::L2;
    double p = 2.0;

    static Norm l1() { return {Kind::L1, 1.0}; }
    static Norm l2() { return {Kind::L2, 2.0}; }
    static Norm lp(double p);

    // Accepts "l1", "l2", "lp:<p>" or a bare number p.
    static Norm parse(std::string_view text);
    std::string name() const;

    bool operator==(const Norm&) const = default;
};

double distance(std::span<const double> a, std::span<const double> b, const Norm& norm);

// Labelled observations. Labels are opaque strings.
struct Dataset {
    Matrix features;
    std::vector<std::string> labels;
    std::vector<std::string> feature_names;

    Dataset() = default;
    Dataset(Matrix features, std::vector<std::string> labels, std::vector<std::string> feature_names = {});

    std::size_t size() const { return labels.size(); }
    std::size_t dims() const { return features.cols(); }

    // Throws std::invalid_argument on non-finite values or a label count mismatch.
    void validate() const;

    Dataset subset(std::span<const std::size_t> indices) const;
    Matrix rows_of(std::string_view label) const;
    std::map<std::string, std::size_t> class_counts() const;

    void append(std::span<const double> row, const std::string& label);
    void append(const Matrix& rows, const std::string& label);
};

std::vector<std::string> default_feature_names(std::size_t m);

// Indices of the k nearest pool rows, distance ascending, ties by row index.
// k is clamped to the number of candidates; `exclude` drops one pool row.
std::vector<std::size_t> k_nearest_neighbors(std::span<const double> query, const Matrix& pool, std::size_t k,
                                             const Norm& norm, std::optional<std::size_t> exclude = std::nullopt);

// Pool-member query; with include_self == false the query row itself is skipped.
std::vector<std::size_t> k_nearest_neighbors(std::size_t query_row, const Matrix& pool, std::size_t k,
                                             const Norm& norm, bool include_self);

std::map<std::string, std::vector<std::size_t>> split_by_class(const Dataset& ds);
std::map<std::string, std::vector<std::size_t>> split_by_class(std::span<const std::string> labels);

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Per class: members shuffled, then dealt round-robin into folds starting at
// an offset that carries over between classes, so both per-class and total
// test sizes differ by at most one.
std::vector<Fold> stratified_k_fold(std::span<const std::string> labels, std::size_t folds, RandomSource& rng);
std::vector<Fold> stratified_k_fold(const Dataset& ds, std::size_t folds, RandomSource& rng);

// Two-class view with majority = larger class (ties: lexically smaller label).
struct BinaryView {
    std::string majority_label;
    std::string minority_label;
    Matrix majority;
    Matrix minority;
};

BinaryView binary_view(const Dataset& ds);

// Per-feature z-score. Constant features get unit scale.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> scale;

    static Standardizer fit(const Matrix& x);
    Matrix apply(const Matrix& x) const;
    Matrix invert(const Matrix& x) const;
};

// Draws `count` distinct indices from [0, n) by partial Fisher-Yates.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, RandomSource& rng);

}  // namespace forge

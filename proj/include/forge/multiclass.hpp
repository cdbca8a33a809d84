#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "forge/ccr.hpp"
#include "forge/dataset.hpp"
#include "forge/radial.hpp"
#include "forge/random.hpp"

namespace forge {

// Classes by descending count; equal counts ordered lexically by label.
struct ClassOrder {
    std::vector<std::string> labels;
    std::vector<std::size_t> counts;

    // Number of classes with strictly more observations than position i.
    std::size_t larger_than(std::size_t position) const;
};

ClassOrder class_order(const Dataset& ds);

struct CombinedMajority {
    Matrix rows;
    std::vector<std::size_t> source_class;  // class position of every drawn row
    std::vector<std::size_t> source_row;    // row within that class's pool
    std::size_t quota = 0;
    std::size_t shortfall = 0;              // rows drawn with replacement
};

// Draws floor(largest / n_classes) rows from each of the first n_classes
// pools without replacement. A pool below quota contributes all of its rows
// plus the rest drawn with replacement, with a warning.
CombinedMajority combined_majority(const std::vector<Matrix>& pools, std::size_t n_classes, std::size_t largest,
                                   RandomSource& rng);

enum class RowOrigin { Original, Translated, Synthetic };

struct RowProvenance {
    RowOrigin origin = RowOrigin::Original;
    std::size_t original_row = 0;  // meaningful for Original / Translated
    std::string generated_for;     // class label, meaningful for Synthetic
};

struct McStep {
    std::string label;
    std::size_t n_classes = 0;
    std::size_t quota = 0;
    std::vector<std::size_t> drawn_per_source;            // by class position
    std::vector<std::size_t> drawn_synthetic_per_source;  // subset of the above
    std::size_t generated = 0;
    std::vector<std::size_t> drawn_rows;  // MC-CCR only: rows of the output drawn this step
};

struct MulticlassResult {
    ClassOrder order;
    Dataset resampled;  // original rows (possibly moved) first, then synthetics
    std::vector<RowProvenance> provenance;
    std::vector<Matrix> synthetic;  // per class position
    std::vector<McStep> steps;      // one per class position
};

// Oversamples every non-largest class with binary RBO against its combined
// majority, drawn from originals ∪ earlier synthetics of the larger classes.
MulticlassResult mc_rbo(const Dataset& ds, const RboParams& params, RandomSource& rng);

// Same decomposition with binary CCR; drawn rows are written back at their
// translated positions and synthetics join their class for later draws.
MulticlassResult mc_ccr(const Dataset& ds, const CcrParams& params, RandomSource& rng);

}  // namespace forge

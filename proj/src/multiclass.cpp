#include "forge/multiclass.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "forge/log.hpp"

namespace forge {

std::size_t ClassOrder::larger_than(std::size_t position) const {
    std::size_t n = 0;
    for (std::size_t c : counts) n += c > counts.at(position) ? 1 : 0;
    return n;
}

ClassOrder class_order(const Dataset& ds) {
    const auto counts = ds.class_counts();
    std::vector<std::pair<std::string, std::size_t>> entries(counts.begin(), counts.end());
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    ClassOrder order;
    for (auto& [label, count] : entries) {
        order.labels.push_back(label);
        order.counts.push_back(count);
    }
    return order;
}

CombinedMajority combined_majority(const std::vector<Matrix>& pools, std::size_t n_classes, std::size_t largest,
                                   RandomSource& rng) {
    if (n_classes == 0) throw std::invalid_argument("combined_majority: no larger classes");
    if (n_classes > pools.size()) throw std::invalid_argument("combined_majority: not enough class pools");
    CombinedMajority out;
    out.quota = largest / n_classes;
    out.rows = Matrix(0, pools.front().cols());
    for (std::size_t j = 0; j < n_classes; ++j) {
        const Matrix& pool = pools[j];
        std::vector<std::size_t> picks;
        if (pool.rows() >= out.quota) {
            picks = sample_without_replacement(pool.rows(), out.quota, rng);
        } else {
            if (pool.rows() == 0) throw std::invalid_argument("combined_majority: empty source class");
            picks = sample_without_replacement(pool.rows(), pool.rows(), rng);
            const std::size_t missing = out.quota - pool.rows();
            warn("combined majority: class pool " + std::to_string(j) + " has " + std::to_string(pool.rows()) +
                 " rows for a quota of " + std::to_string(out.quota) + "; drawing " + std::to_string(missing) +
                 " with replacement");
            for (std::size_t s = 0; s < missing; ++s) picks.push_back(rng.index(pool.rows()));
            out.shortfall += missing;
        }
        for (std::size_t r : picks) {
            out.rows.append_row(pool.row(r));
            out.source_class.push_back(j);
            out.source_row.push_back(r);
        }
    }
    return out;
}

namespace {

McStep describe_step(const ClassOrder& order, std::size_t i, const CombinedMajority& cm,
                     const std::vector<std::size_t>& original_sizes) {
    McStep step;
    step.label = order.labels[i];
    step.n_classes = order.larger_than(i);
    step.quota = cm.quota;
    step.drawn_per_source.assign(order.labels.size(), 0);
    step.drawn_synthetic_per_source.assign(order.labels.size(), 0);
    for (std::size_t r = 0; r < cm.source_class.size(); ++r) {
        const std::size_t j = cm.source_class[r];
        ++step.drawn_per_source[j];
        if (cm.source_row[r] >= original_sizes[j]) ++step.drawn_synthetic_per_source[j];
    }
    return step;
}

void require_multiclass(const ClassOrder& order, const char* who) {
    if (order.labels.size() < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 classes");
}

}  // namespace

MulticlassResult mc_rbo(const Dataset& ds, const RboParams& params, RandomSource& rng) {
    params.validate();
    MulticlassResult out;
    out.order = class_order(ds);
    require_multiclass(out.order, "mc_rbo");
    const std::size_t n_cls = out.order.labels.size();

    std::vector<Matrix> originals(n_cls);
    std::vector<std::size_t> original_sizes(n_cls);
    for (std::size_t c = 0; c < n_cls; ++c) {
        originals[c] = ds.rows_of(out.order.labels[c]);
        original_sizes[c] = originals[c].rows();
    }
    out.synthetic.assign(n_cls, Matrix(0, ds.dims()));
    out.steps.resize(n_cls);
    out.steps[0].label = out.order.labels[0];

    for (std::size_t i = 1; i < n_cls; ++i) {
        const std::size_t n_classes = out.order.larger_than(i);
        if (n_classes == 0) {
            out.steps[i].label = out.order.labels[i];
            continue;
        }
        std::vector<Matrix> pools;
        for (std::size_t j = 0; j < n_classes; ++j) pools.push_back(vstack(originals[j], out.synthetic[j]));
        const auto cm = combined_majority(pools, n_classes, out.order.counts[0], rng);
        out.steps[i] = describe_step(out.order, i, cm, original_sizes);
        if (cm.rows.rows() > originals[i].rows()) {
            out.synthetic[i] = rbo(cm.rows, originals[i], params, rng).synthetic;
        }
        out.steps[i].generated = out.synthetic[i].rows();
    }

    out.resampled = ds;
    for (std::size_t r = 0; r < ds.size(); ++r) out.provenance.push_back({RowOrigin::Original, r, {}});
    for (std::size_t c = 0; c < n_cls; ++c) {
        out.resampled.append(out.synthetic[c], out.order.labels[c]);
        for (std::size_t s = 0; s < out.synthetic[c].rows(); ++s) {
            out.provenance.push_back({RowOrigin::Synthetic, 0, out.order.labels[c]});
        }
    }
    return out;
}

MulticlassResult mc_ccr(const Dataset& ds, const CcrParams& params, RandomSource& rng) {
    params.validate();
    MulticlassResult out;
    out.order = class_order(ds);
    require_multiclass(out.order, "mc_ccr");
    const std::size_t n_cls = out.order.labels.size();

    Dataset work = ds;
    for (std::size_t r = 0; r < ds.size(); ++r) out.provenance.push_back({RowOrigin::Original, r, {}});

    // members[c]: rows of `work` in class c, originals first, then synthetics
    std::vector<std::vector<std::size_t>> members(n_cls);
    std::vector<std::size_t> original_sizes(n_cls);
    for (std::size_t c = 0; c < n_cls; ++c) {
        for (std::size_t r = 0; r < ds.size(); ++r) {
            if (ds.labels[r] == out.order.labels[c]) members[c].push_back(r);
        }
        original_sizes[c] = members[c].size();
    }
    out.synthetic.assign(n_cls, Matrix(0, ds.dims()));
    out.steps.resize(n_cls);
    out.steps[0].label = out.order.labels[0];

    for (std::size_t i = 1; i < n_cls; ++i) {
        const std::size_t n_classes = out.order.larger_than(i);
        if (n_classes == 0) {
            out.steps[i].label = out.order.labels[i];
            continue;
        }
        std::vector<Matrix> pools;
        for (std::size_t j = 0; j < n_classes; ++j) pools.push_back(work.features.select_rows(members[j]));
        const auto cm = combined_majority(pools, n_classes, out.order.counts[0], rng);
        out.steps[i] = describe_step(out.order, i, cm, original_sizes);

        const Matrix minority = work.features.select_rows(members[i]);
        if (cm.rows.rows() < minority.rows()) continue;
        const auto result = ccr(cm.rows, minority, params, rng);

        // later draws of the same row overwrite earlier ones
        for (std::size_t r = 0; r < cm.rows.rows(); ++r) {
            const std::size_t row = members[cm.source_class[r]][cm.source_row[r]];
            out.steps[i].drawn_rows.push_back(row);
            const auto moved = result.translated_majority.row(r);
            std::copy(moved.begin(), moved.end(), work.features.row(row).begin());
            const bool moved_away = !std::equal(moved.begin(), moved.end(), ds.features.row(row).begin());
            if (out.provenance[row].origin == RowOrigin::Original && moved_away) {
                out.provenance[row].origin = RowOrigin::Translated;
            }
        }
        for (std::size_t s = 0; s < result.synthetic.rows(); ++s) {
            members[i].push_back(work.size());
            work.append(result.synthetic.row(s), out.order.labels[i]);
            out.provenance.push_back({RowOrigin::Synthetic, 0, out.order.labels[i]});
        }
        out.synthetic[i] = result.synthetic;
        out.steps[i].generated = result.synthetic.rows();
    }
    out.resampled = std::move(work);
    return out;
}

}  // namespace forge

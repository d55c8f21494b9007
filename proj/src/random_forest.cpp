#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "moodbench/errors.hpp"
#include "moodbench/models.hpp"
#include "moodbench/rng.hpp"

namespace moodbench::models {

namespace {

constexpr std::uint64_t kTreeStream = 0x7472656500000000ULL;  // "tree"

std::uint32_t value_of(const SparseVector& x, std::uint32_t feature) {
    auto it = std::lower_bound(x.pairs.begin(), x.pairs.end(), feature,
                               [](const auto& p, std::uint32_t f) { return p.first < f; });
    return (it != x.pairs.end() && it->first == feature) ? it->second : 0;
}

double gini(const std::array<std::uint64_t, 2>& counts) {
    const double n = static_cast<double>(counts[0] + counts[1]);
    if (n == 0.0) return 0.0;
    const double p0 = counts[0] / n;
    const double p1 = counts[1] / n;
    return 1.0 - p0 * p0 - p1 * p1;
}

struct Split {
    bool found = false;
    std::uint32_t feature = 0;
    double threshold = 0.0;
    double impurity = 0.0;
};

class TreeBuilder {
  public:
    TreeBuilder(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                const Hyperparams& hp, Rng rng, std::uint32_t n_features)
        : x_(x), y_(y), hp_(hp), rng_(rng), n_features_(n_features) {
        mtry_ = hp.rf_features_per_split
                    ? hp.rf_features_per_split
                    : std::max<std::uint32_t>(
                          1, static_cast<std::uint32_t>(
                                 std::floor(std::sqrt(static_cast<double>(n_features)))));
        mtry_ = std::min(mtry_, n_features_);
    }

    DecisionTree build(std::vector<std::uint32_t> samples) {
        DecisionTree tree;
        grow(tree, std::move(samples), 0);
        return tree;
    }

  private:
    std::int32_t grow(DecisionTree& tree, std::vector<std::uint32_t> samples, int depth) {
        std::array<std::uint32_t, 2> counts{0, 0};
        for (std::uint32_t i : samples) ++counts[class_index(y_[i])];

        const auto node_id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.push_back(TreeNode{});
        tree.nodes[node_id].class_counts = counts;

        const bool pure = counts[0] == 0 || counts[1] == 0;
        const bool too_small = samples.size() < hp_.rf_min_samples_split;
        const bool at_depth = hp_.rf_max_depth >= 0 && depth >= hp_.rf_max_depth;
        if (!pure && !too_small && !at_depth) {
            Split split = best_split(samples);
            if (split.found) {
                std::vector<std::uint32_t> left, right;
                for (std::uint32_t i : samples) {
                    (value_of(x_[i], split.feature) <= split.threshold ? left : right)
                        .push_back(i);
                }
                samples.clear();
                samples.shrink_to_fit();
                tree.nodes[node_id].feature = static_cast<std::int32_t>(split.feature);
                tree.nodes[node_id].threshold = split.threshold;
                const std::int32_t l = grow(tree, std::move(left), depth + 1);
                tree.nodes[node_id].left = l;
                const std::int32_t r = grow(tree, std::move(right), depth + 1);
                tree.nodes[node_id].right = r;
            }
        }
        return node_id;
    }

    // mtry distinct features drawn per node; thresholds at midpoints of
    // consecutive distinct observed counts.
    Split best_split(const std::vector<std::uint32_t>& samples) {
        std::set<std::uint32_t> chosen;
        std::vector<std::uint32_t> candidates;
        while (candidates.size() < mtry_) {
            auto f = static_cast<std::uint32_t>(rng_.below(n_features_));
            if (chosen.insert(f).second) candidates.push_back(f);
        }

        Split best;
        std::vector<std::pair<std::uint32_t, int>> column;  // (count, class)
        for (std::uint32_t f : candidates) {
            column.clear();
            for (std::uint32_t i : samples)
                column.emplace_back(value_of(x_[i], f), class_index(y_[i]));
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (column.front().first == column.back().first) continue;  // constant

            const std::uint64_t n = column.size();
            std::array<std::uint64_t, 2> left{0, 0}, total{0, 0};
            for (const auto& [value, c] : column) ++total[c];

            std::size_t k = 0;
            while (k < column.size()) {
                const std::uint32_t value = column[k].first;
                while (k < column.size() && column[k].first == value) {
                    ++left[column[k].second];
                    ++k;
                }
                if (k >= column.size()) break;  // no right side left
                std::array<std::uint64_t, 2> right{total[0] - left[0], total[1] - left[1]};
                const double n_left = static_cast<double>(left[0] + left[1]);
                const double n_right = static_cast<double>(right[0] + right[1]);
                const double impurity =
                    (n_left * gini(left) + n_right * gini(right)) / static_cast<double>(n);
                if (!best.found || impurity < best.impurity) {
                    best.found = true;
                    best.feature = f;
                    best.threshold =
                        (static_cast<double>(value) + static_cast<double>(column[k].first)) / 2.0;
                    best.impurity = impurity;
                }
            }
        }
        return best;
    }

    const std::vector<SparseVector>& x_;
    const std::vector<Label>& y_;
    const Hyperparams& hp_;
    Rng rng_;
    std::uint32_t n_features_;
    std::uint32_t mtry_ = 1;
};

}  // namespace

int DecisionTree::predict_class(const SparseVector& x) const {
    std::int32_t node = 0;
    while (nodes[node].feature >= 0) {
        const auto& n = nodes[node];
        node = value_of(x, static_cast<std::uint32_t>(n.feature)) <= n.threshold ? n.left
                                                                                 : n.right;
    }
    const auto& counts = nodes[node].class_counts;
    return counts[0] >= counts[1] ? 0 : 1;  // tie goes to Depressive
}

DecisionTree train_tree(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                        const std::vector<std::uint32_t>& sample_indices,
                        const Hyperparams& hp, std::uint64_t seed, std::uint64_t tree_index,
                        std::uint32_t n_features) {
    TreeBuilder builder(x, y, hp, Rng::derive(seed, kTreeStream | tree_index), n_features);
    return builder.build(sample_indices);
}

std::vector<std::uint32_t> forest_bootstrap_indices(const Hyperparams& hp, std::uint64_t seed,
                                                    std::uint64_t tree_index, std::size_t n) {
    Rng rng = Rng::derive(seed, kTreeStream | tree_index);
    std::vector<std::uint32_t> samples(n);
    if (hp.rf_bootstrap) {
        for (auto& s : samples) s = static_cast<std::uint32_t>(rng.below(n));
    } else {
        for (std::uint32_t i = 0; i < samples.size(); ++i) samples[i] = i;
    }
    return samples;
}

RfParams train_forest(const std::vector<SparseVector>& x, const std::vector<Label>& y,
                      const Hyperparams& hp, std::uint64_t seed, std::uint32_t n_features,
                      int n_threads) {
    if (hp.rf_n_trees == 0) throw Error("rf_n_trees must be >= 1");
    RfParams params;
    params.trees.resize(hp.rf_n_trees);

    auto build_one = [&](std::uint32_t t) {
        Rng rng = Rng::derive(seed, kTreeStream | t);
        std::vector<std::uint32_t> samples(x.size());
        if (hp.rf_bootstrap) {
            for (auto& s : samples) s = static_cast<std::uint32_t>(rng.below(x.size()));
        } else {
            for (std::uint32_t i = 0; i < samples.size(); ++i) samples[i] = i;
        }
        TreeBuilder builder(x, y, hp, rng, n_features);
        params.trees[t] = builder.build(std::move(samples));
    };

    if (n_threads <= 1) {
        for (std::uint32_t t = 0; t < hp.rf_n_trees; ++t) build_one(t);
        return params;
    }

    std::atomic<std::uint32_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint32_t t = next.fetch_add(1);
            if (t >= hp.rf_n_trees) return;
            build_one(t);
        }
    };
    std::vector<std::thread> pool;
    const auto n_workers = static_cast<std::size_t>(
        std::min<int>(n_threads, static_cast<int>(hp.rf_n_trees)));
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return params;
}

}  // namespace moodbench::models

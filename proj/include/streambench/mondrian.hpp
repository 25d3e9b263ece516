#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "streambench/classifier.hpp"
#include "streambench/rng.hpp"

namespace streambench {

struct MondrianParams {
    int tree_count = 10;
    double base_count = 0.0;      // pseudo-count toward uniform in node posteriors
    double discount_factor = 0.6; // weight pulled from the parent posterior
    double budget = 0.4;          // lifetime bound on split times (depth control)
    std::size_t memory_bytes = 600 * 1024;

    void validate() const {
        if (tree_count < 1) throw ConfigError("tree_count must be >= 1");
        if (base_count < 0.0) throw ConfigError("base_count must be >= 0");
        if (!(discount_factor >= 0.0 && discount_factor < 1.0))
            throw ConfigError("discount_factor must be in [0,1)");
        if (!(budget > 0.0)) throw ConfigError("budget must be > 0");
        if (memory_bytes == 0) throw ConfigError("memory_bytes must be > 0");
    }
};

struct SplitSample {
    int feature;
    double value;
};

// Samples a split from a range box: P(feature i) proportional to its range,
// value uniform within that feature's interval. Returns nothing when every
// range is zero.
std::optional<SplitSample> sample_split(const std::vector<double>& lo,
                                        const std::vector<double>& hi, Rng& rng);

// Fixed-size node record under the self-accounting rule:
// 2*dim range reals + num_classes counters + 5 ids.
std::size_t mondrian_node_record_bytes(int dimensionality, int num_classes);

// Fixed-capacity node store shared by every tree in one forest. Capacity is
// derived from the byte budget at construction and never changes.
class NodeArena {
public:
    NodeArena(int dimensionality, int num_classes, std::size_t budget_bytes);

    std::size_t capacity() const { return capacity_; }
    std::size_t used() const { return used_; }
    std::size_t free_slots() const { return capacity_ - used_; }

    // Returns the new node id, or -1 when the arena is exhausted.
    int alloc(int tree_id);

    std::int32_t& parent(int i) { return parent_[static_cast<std::size_t>(i)]; }
    std::int32_t& left(int i) { return left_[static_cast<std::size_t>(i)]; }
    std::int32_t& right(int i) { return right_[static_cast<std::size_t>(i)]; }
    std::int32_t& split_feature(int i) { return split_feature_[static_cast<std::size_t>(i)]; }
    double& split_value(int i) { return split_value_[static_cast<std::size_t>(i)]; }
    double& split_time(int i) { return split_time_[static_cast<std::size_t>(i)]; }
    double* box_lo(int i) { return &box_lo_[static_cast<std::size_t>(i) * dim_]; }
    double* box_hi(int i) { return &box_hi_[static_cast<std::size_t>(i) * dim_]; }
    std::uint32_t* counts(int i) { return &counts_[static_cast<std::size_t>(i) * classes_]; }
    const std::uint32_t* counts(int i) const { return &counts_[static_cast<std::size_t>(i) * classes_]; }
    const double* box_lo(int i) const { return &box_lo_[static_cast<std::size_t>(i) * dim_]; }
    const double* box_hi(int i) const { return &box_hi_[static_cast<std::size_t>(i) * dim_]; }
    std::int32_t split_feature(int i) const { return split_feature_[static_cast<std::size_t>(i)]; }
    double split_value(int i) const { return split_value_[static_cast<std::size_t>(i)]; }
    double split_time(int i) const { return split_time_[static_cast<std::size_t>(i)]; }
    std::int32_t left(int i) const { return left_[static_cast<std::size_t>(i)]; }
    std::int32_t right(int i) const { return right_[static_cast<std::size_t>(i)]; }
    std::int32_t parent(int i) const { return parent_[static_cast<std::size_t>(i)]; }

    bool is_leaf(int i) const { return split_feature_[static_cast<std::size_t>(i)] < 0; }

private:
    int dim_, classes_;
    std::size_t capacity_, used_ = 0;
    std::vector<std::int32_t> parent_, left_, right_, split_feature_, tree_id_;
    std::vector<double> split_value_, split_time_;
    std::vector<double> box_lo_, box_hi_;
    std::vector<std::uint32_t> counts_;
};

// Online Mondrian forest over one shared pre-allocated arena. Structure
// growth stops when the arena is full; class counts keep updating. Tree
// structure depends only on features, labels touch only the counts.
class MondrianForest final : public ClassifierBase {
public:
    MondrianForest(const StreamSpec& spec, const MondrianParams& params, std::uint64_t seed);

    Label predict(const Instance& instance) const override;
    void train(const Instance& instance) override;
    std::size_t memory_bytes() const override { return params_.memory_bytes; }

    const NodeArena& arena() const { return arena_; }
    const MondrianParams& params() const { return params_; }

    // Averaged per-tree smoothed posterior; exposed for tests.
    void posterior(const Instance& instance, std::vector<double>& out) const;

private:
    void extend_tree(int tree, const Instance& x, Label y);
    void tree_posterior(int root, const std::vector<double>& features,
                        std::vector<double>& out) const;

    MondrianParams params_;
    NodeArena arena_;
    std::vector<std::int32_t> roots_;
    std::vector<Rng> tree_rngs_;
};

}  // namespace streambench

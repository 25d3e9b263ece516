#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "streambench/classifier.hpp"
#include "streambench/naive_bayes.hpp"

namespace streambench {

// epsilon = sqrt(R^2 ln(1/delta) / (2n))
double hoeffding_bound(double range, double delta, std::uint64_t n);

struct HoeffdingTreeParams {
    double delta = 0.01;
    int grace_period = 10;
    double tie_epsilon = 0.05;

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must be in (0,1)");
        if (grace_period < 1) throw ConfigError("grace_period must be >= 1");
        if (tie_epsilon < 0.0) throw ConfigError("tie_epsilon must be >= 0");
    }
};

// Incremental decision tree splitting leaves on the Hoeffding bound, with
// Gaussian Naive Bayes leaf learners. Internal nodes are immutable once
// created; adaptation to drift happens only through new leaves.
class HoeffdingTree final : public ClassifierBase {
public:
    HoeffdingTree(const StreamSpec& spec, const HoeffdingTreeParams& params);

    Label predict(const Instance& instance) const override;
    void train(const Instance& instance) override;
    std::size_t memory_bytes() const override;

    struct SplitCandidate {
        bool valid = false;
        int feature = -1;
        double threshold = 0.0;
        double best_gain = 0.0;
        double gap = 0.0;  // best gain minus runner-up gain
    };

    // Evaluates candidate splits for a leaf from its per-class Gaussian
    // observers; 10 equally spaced thresholds per feature between the
    // observed min and max.
    SplitCandidate best_split(int node_id) const;

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int leaf_count() const;
    int depth() const;

    // Leaf stats accessor for tests (node 0 is the root).
    const GaussianNaiveBayes& leaf_stats(int node_id) const { return *nodes_[static_cast<std::size_t>(node_id)].stats; }
    bool is_leaf(int node_id) const { return nodes_[static_cast<std::size_t>(node_id)].split_feature < 0; }

    static std::size_t leaf_record_bytes(const StreamSpec& spec);
    static std::size_t internal_record_bytes();

private:
    struct Node {
        // Observer stats; retained after a split so nothing is discarded.
        std::unique_ptr<GaussianNaiveBayes> stats;
        std::vector<double> min_seen, max_seen;
        int since_attempt = 0;
        // set when the node becomes internal
        int split_feature = -1;
        double split_value = 0.0;
        int left = -1, right = -1;
    };

    int route_to_leaf(const Instance& x) const;
    void split_leaf(int node_id, int feature, double threshold);
    int new_leaf();

    HoeffdingTreeParams params_;
    std::vector<Node> nodes_;
    int internal_count_ = 0;
    double gain_range_;  // log2(num_classes)
};

}  // namespace streambench

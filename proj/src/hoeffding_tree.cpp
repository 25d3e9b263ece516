#include "streambench/hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace streambench {

namespace {

constexpr int kThresholdsPerFeature = 10;

double phi(double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); }

// Entropy in bits of an unnormalized mass vector.
double entropy(const std::vector<double>& mass) {
    double total = 0.0;
    for (double m : mass) total += m;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double m : mass) {
        if (m <= 0.0) continue;
        const double p = m / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

double hoeffding_bound(double range, double delta, std::uint64_t n) {
    if (!(range > 0.0)) throw UsageError("hoeffding_bound: range must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw UsageError("hoeffding_bound: delta must be in (0,1)");
    if (n < 1) throw UsageError("hoeffding_bound: n must be >= 1");
    return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

HoeffdingTree::HoeffdingTree(const StreamSpec& spec, const HoeffdingTreeParams& params)
    : ClassifierBase(spec), params_(params) {
    params_.validate();
    gain_range_ = std::log2(static_cast<double>(spec.num_classes));
    new_leaf();  // root
}

int HoeffdingTree::new_leaf() {
    Node node;
    node.stats = std::make_unique<GaussianNaiveBayes>(spec_);
    node.min_seen.assign(static_cast<std::size_t>(spec_.dimensionality),
                         std::numeric_limits<double>::infinity());
    node.max_seen.assign(static_cast<std::size_t>(spec_.dimensionality),
                         -std::numeric_limits<double>::infinity());
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
}

int HoeffdingTree::route_to_leaf(const Instance& x) const {
    int id = 0;
    while (nodes_[static_cast<std::size_t>(id)].split_feature >= 0) {
        const Node& n = nodes_[static_cast<std::size_t>(id)];
        id = x.features[static_cast<std::size_t>(n.split_feature)] <= n.split_value ? n.left
                                                                                    : n.right;
    }
    return id;
}

Label HoeffdingTree::predict(const Instance& instance) const {
    check_dimensionality(instance);
    return nodes_[static_cast<std::size_t>(route_to_leaf(instance))].stats->predict(instance);
}

HoeffdingTree::SplitCandidate HoeffdingTree::best_split(int node_id) const {
    const Node& leaf = nodes_[static_cast<std::size_t>(node_id)];
    const GaussianNaiveBayes& stats = *leaf.stats;
    SplitCandidate result;
    if (stats.classes_seen() < 2) return result;

    const int K = spec_.num_classes;
    const double n_total = static_cast<double>(stats.total_count());
    std::vector<double> parent_mass(static_cast<std::size_t>(K));
    for (int c = 0; c < K; ++c) parent_mass[static_cast<std::size_t>(c)] = stats.prior_count(c);
    const double parent_entropy = entropy(parent_mass);

    double best_gain = -1.0, second_gain = -1.0;
    std::vector<double> left_mass(static_cast<std::size_t>(K));
    std::vector<double> right_mass(static_cast<std::size_t>(K));

    for (int f = 0; f < spec_.dimensionality; ++f) {
        const double lo = leaf.min_seen[static_cast<std::size_t>(f)];
        const double hi = leaf.max_seen[static_cast<std::size_t>(f)];
        if (!(hi > lo)) continue;
        double feature_gain = -1.0;
        double feature_threshold = 0.0;
        for (int i = 1; i <= kThresholdsPerFeature; ++i) {
            const double t = lo + (hi - lo) * i / (kThresholdsPerFeature + 1);
            double n_left = 0.0, n_right = 0.0;
            for (int c = 0; c < K; ++c) {
                const double n_c = static_cast<double>(stats.prior_count(c));
                if (n_c <= 0.0) {
                    left_mass[static_cast<std::size_t>(c)] = 0.0;
                    right_mass[static_cast<std::size_t>(c)] = 0.0;
                    continue;
                }
                const GaussianEstimator& est = stats.estimator(c, f);
                const double sd =
                    std::sqrt(std::max(est.variance(), GaussianNaiveBayes::kVarianceFloor));
                const double mass_left = n_c * phi((t - est.mean) / sd);
                left_mass[static_cast<std::size_t>(c)] = mass_left;
                right_mass[static_cast<std::size_t>(c)] = n_c - mass_left;
                n_left += mass_left;
                n_right += n_c - mass_left;
            }
            const double gain =
                std::max(0.0, parent_entropy - (n_left * entropy(left_mass) +
                                                n_right * entropy(right_mass)) /
                                                   n_total);
            if (gain > feature_gain) {
                feature_gain = gain;
                feature_threshold = t;
            }
        }
        if (feature_gain > best_gain) {
            second_gain = best_gain;
            best_gain = feature_gain;
            result.feature = f;
            result.threshold = feature_threshold;
        } else if (feature_gain > second_gain) {
            second_gain = feature_gain;
        }
    }

    if (result.feature < 0) return result;
    result.valid = true;
    result.best_gain = best_gain;
    // with a single candidate feature the runner-up is the null split (gain 0)
    result.gap = best_gain - std::max(second_gain, 0.0);
    return result;
}

void HoeffdingTree::split_leaf(int node_id, int feature, double threshold) {
    const int left = new_leaf();
    const int right = new_leaf();
    Node& node = nodes_[static_cast<std::size_t>(node_id)];  // revalidate after push_back
    node.split_feature = feature;
    node.split_value = threshold;
    node.left = left;
    node.right = right;
    ++internal_count_;
}

void HoeffdingTree::train(const Instance& instance) {
    check_dimensionality(instance);
    require_label(instance);
    const int id = route_to_leaf(instance);
    Node& leaf = nodes_[static_cast<std::size_t>(id)];
    leaf.stats->train(instance);
    for (int f = 0; f < spec_.dimensionality; ++f) {
        const double v = instance.features[static_cast<std::size_t>(f)];
        leaf.min_seen[static_cast<std::size_t>(f)] = std::min(leaf.min_seen[static_cast<std::size_t>(f)], v);
        leaf.max_seen[static_cast<std::size_t>(f)] = std::max(leaf.max_seen[static_cast<std::size_t>(f)], v);
    }
    if (++leaf.since_attempt < params_.grace_period) return;
    leaf.since_attempt = 0;

    const SplitCandidate cand = best_split(id);
    if (!cand.valid || cand.best_gain <= 0.0) return;
    const double eps = hoeffding_bound(gain_range_, params_.delta, leaf.stats->total_count());
    if (cand.gap > eps || (eps < params_.tie_epsilon && cand.gap >= 0.0))
        split_leaf(id, cand.feature, cand.threshold);
}

int HoeffdingTree::leaf_count() const {
    return static_cast<int>(nodes_.size()) - internal_count_;
}

int HoeffdingTree::depth() const {
    // iterative depth over the explicit node vector
    int max_depth = 0;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [id, d] = stack.back();
        stack.pop_back();
        const Node& n = nodes_[static_cast<std::size_t>(id)];
        max_depth = std::max(max_depth, d);
        if (n.split_feature >= 0) {
            stack.push_back({n.left, d + 1});
            stack.push_back({n.right, d + 1});
        }
    }
    return max_depth;
}

std::size_t HoeffdingTree::leaf_record_bytes(const StreamSpec& spec) {
    const std::size_t observers = static_cast<std::size_t>(spec.num_classes) *
                                  spec.dimensionality * (kCounterBytes + 2 * kRealBytes);
    const std::size_t ranges = 2 * static_cast<std::size_t>(spec.dimensionality) * kRealBytes;
    const std::size_t priors = static_cast<std::size_t>(spec.num_classes) * kCounterBytes;
    return observers + ranges + priors + kCounterBytes;  // + attempt counter
}

std::size_t HoeffdingTree::internal_record_bytes() {
    // split feature + split value + two child ids
    return kCounterBytes + kRealBytes + 2 * kCounterBytes;
}

std::size_t HoeffdingTree::memory_bytes() const {
    return nodes_.size() * leaf_record_bytes(spec_) +
           static_cast<std::size_t>(internal_count_) * internal_record_bytes();
}

}  // namespace streambench

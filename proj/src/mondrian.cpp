#include "streambench/mondrian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace streambench {

std::optional<SplitSample> sample_split(const std::vector<double>& lo,
                                        const std::vector<double>& hi, Rng& rng) {
    double total = 0.0;
    for (std::size_t f = 0; f < lo.size(); ++f) total += std::max(0.0, hi[f] - lo[f]);
    if (total <= 0.0) return std::nullopt;
    const double pick = rng.uniform() * total;
    double cum = 0.0;
    std::size_t feature = 0;
    for (std::size_t f = 0; f < lo.size(); ++f) {
        const double range = std::max(0.0, hi[f] - lo[f]);
        if (range <= 0.0) continue;
        cum += range;
        feature = f;  // last nonzero range wins if pick hits the top boundary
        if (pick < cum) break;
    }
    return SplitSample{static_cast<int>(feature), rng.uniform(lo[feature], hi[feature])};
}

std::size_t mondrian_node_record_bytes(int dimensionality, int num_classes) {
    return 2 * static_cast<std::size_t>(dimensionality) * kRealBytes +
           static_cast<std::size_t>(num_classes) * kCounterBytes + 5 * kCounterBytes;
}

NodeArena::NodeArena(int dimensionality, int num_classes, std::size_t budget_bytes)
    : dim_(dimensionality),
      classes_(num_classes),
      capacity_(budget_bytes / mondrian_node_record_bytes(dimensionality, num_classes)) {
    parent_.resize(capacity_);
    left_.resize(capacity_);
    right_.resize(capacity_);
    split_feature_.resize(capacity_);
    tree_id_.resize(capacity_);
    split_value_.resize(capacity_);
    split_time_.resize(capacity_);
    box_lo_.resize(capacity_ * static_cast<std::size_t>(dim_));
    box_hi_.resize(capacity_ * static_cast<std::size_t>(dim_));
    counts_.resize(capacity_ * static_cast<std::size_t>(classes_));
}

int NodeArena::alloc(int tree_id) {
    if (used_ >= capacity_) return -1;
    const int id = static_cast<int>(used_++);
    parent_[static_cast<std::size_t>(id)] = -1;
    left_[static_cast<std::size_t>(id)] = -1;
    right_[static_cast<std::size_t>(id)] = -1;
    split_feature_[static_cast<std::size_t>(id)] = -1;
    tree_id_[static_cast<std::size_t>(id)] = tree_id;
    split_value_[static_cast<std::size_t>(id)] = 0.0;
    split_time_[static_cast<std::size_t>(id)] = 0.0;
    std::fill_n(counts(id), classes_, 0u);
    return id;
}

MondrianForest::MondrianForest(const StreamSpec& spec, const MondrianParams& params,
                               std::uint64_t seed)
    : ClassifierBase(spec),
      params_(params),
      arena_(spec.dimensionality, spec.num_classes, params.memory_bytes),
      roots_(static_cast<std::size_t>(params.tree_count), -1) {
    params_.validate();
    tree_rngs_.reserve(static_cast<std::size_t>(params.tree_count));
    for (int t = 0; t < params.tree_count; ++t)
        tree_rngs_.emplace_back(mix_seed(seed, static_cast<std::uint64_t>(t)));
}

void MondrianForest::train(const Instance& instance) {
    check_dimensionality(instance);
    const Label y = require_label(instance);
    for (int t = 0; t < params_.tree_count; ++t) extend_tree(t, instance, y);
}

void MondrianForest::extend_tree(int tree, const Instance& x, Label y) {
    Rng& rng = tree_rngs_[static_cast<std::size_t>(tree)];
    const int dim = spec_.dimensionality;
    std::int32_t& root = roots_[static_cast<std::size_t>(tree)];

    if (root < 0) {
        const int id = arena_.alloc(tree);
        if (id < 0) return;  // arena exhausted before this tree got a root
        std::copy(x.features.begin(), x.features.end(), arena_.box_lo(id));
        std::copy(x.features.begin(), x.features.end(), arena_.box_hi(id));
        arena_.split_time(id) = params_.budget;  // leaves live at the lifetime bound
        arena_.counts(id)[y] = 1;
        root = id;
        return;
    }

    int j = root;
    double parent_time = 0.0;
    while (true) {
        double* lo = arena_.box_lo(j);
        double* hi = arena_.box_hi(j);

        // extension gaps: how far x lies outside the node's range box
        double rate = 0.0;
        for (int f = 0; f < dim; ++f) {
            const double v = x.features[static_cast<std::size_t>(f)];
            rate += std::max(0.0, lo[f] - v) + std::max(0.0, v - hi[f]);
        }
        const double split_time = arena_.split_time(j);
        double event = std::numeric_limits<double>::infinity();
        if (rate > 0.0) event = parent_time + rng.exponential(rate);

        if (event < split_time && arena_.free_slots() >= 2) {
            // sample the split from the gap box: one interval per feature
            // where x escapes, so P(feature) is proportional to its gap
            thread_local std::vector<double> gap_lo, gap_hi;
            gap_lo.assign(static_cast<std::size_t>(dim), 0.0);
            gap_hi.assign(static_cast<std::size_t>(dim), 0.0);
            for (int f = 0; f < dim; ++f) {
                const double v = x.features[static_cast<std::size_t>(f)];
                if (v < lo[f]) {
                    gap_lo[static_cast<std::size_t>(f)] = v;
                    gap_hi[static_cast<std::size_t>(f)] = lo[f];
                } else if (v > hi[f]) {
                    gap_lo[static_cast<std::size_t>(f)] = hi[f];
                    gap_hi[static_cast<std::size_t>(f)] = v;
                }
            }
            const auto split = sample_split(gap_lo, gap_hi, rng);
            if (!split) return;  // unreachable: rate > 0 guarantees a nonzero gap

            const int upper = arena_.alloc(tree);
            const int sibling = arena_.alloc(tree);
            // new internal node takes j's place, j and the fresh leaf become children
            std::int32_t grand = arena_.parent(j);
            arena_.parent(upper) = grand;
            arena_.split_feature(upper) = split->feature;
            arena_.split_value(upper) = split->value;
            arena_.split_time(upper) = event;
            double* ulo = arena_.box_lo(upper);
            double* uhi = arena_.box_hi(upper);
            for (int f = 0; f < dim; ++f) {
                const double v = x.features[static_cast<std::size_t>(f)];
                ulo[f] = std::min(lo[f], v);
                uhi[f] = std::max(hi[f], v);
            }
            // every instance that reached j historically also crossed this
            // region, so the new internal node inherits j's counts
            const std::uint32_t* jc = arena_.counts(j);
            std::uint32_t* uc = arena_.counts(upper);
            std::copy_n(jc, spec_.num_classes, uc);
            uc[y] += 1;

            std::copy(x.features.begin(), x.features.end(), arena_.box_lo(sibling));
            std::copy(x.features.begin(), x.features.end(), arena_.box_hi(sibling));
            arena_.split_time(sibling) = params_.budget;
            arena_.counts(sibling)[y] = 1;
            arena_.parent(sibling) = upper;

            if (x.features[static_cast<std::size_t>(split->feature)] <= split->value) {
                arena_.left(upper) = sibling;
                arena_.right(upper) = j;
            } else {
                arena_.left(upper) = j;
                arena_.right(upper) = sibling;
            }
            arena_.parent(j) = upper;
            if (grand < 0) {
                root = upper;
            } else if (arena_.left(grand) == j) {
                arena_.left(grand) = upper;
            } else {
                arena_.right(grand) = upper;
            }
            return;
        }

        // no structural change at this node: absorb x into the box and counts
        for (int f = 0; f < dim; ++f) {
            const double v = x.features[static_cast<std::size_t>(f)];
            lo[f] = std::min(lo[f], v);
            hi[f] = std::max(hi[f], v);
        }
        arena_.counts(j)[y] += 1;
        if (arena_.is_leaf(j)) return;
        parent_time = split_time;
        j = x.features[static_cast<std::size_t>(arena_.split_feature(j))] <= arena_.split_value(j)
                ? arena_.left(j)
                : arena_.right(j);
    }
}

void MondrianForest::tree_posterior(int root, const std::vector<double>& features,
                                    std::vector<double>& out) const {
    const int K = spec_.num_classes;
    const double d = params_.discount_factor;
    const double base = params_.base_count;
    out.assign(static_cast<std::size_t>(K), 1.0 / K);
    int j = root;
    while (j >= 0) {
        const std::uint32_t* counts = arena_.counts(j);
        double n = 0.0;
        for (int k = 0; k < K; ++k) n += counts[k];
        if (n > 0.0) {
            const double denom = n + base * K;
            for (int k = 0; k < K; ++k) {
                const double emp = (counts[k] + base) / denom;
                out[static_cast<std::size_t>(k)] = d * out[static_cast<std::size_t>(k)] + (1.0 - d) * emp;
            }
        }
        if (arena_.is_leaf(j)) break;
        j = features[static_cast<std::size_t>(arena_.split_feature(j))] <= arena_.split_value(j)
                ? arena_.left(j)
                : arena_.right(j);
    }
}

void MondrianForest::posterior(const Instance& instance, std::vector<double>& out) const {
    const int K = spec_.num_classes;
    out.assign(static_cast<std::size_t>(K), 0.0);
    thread_local std::vector<double> tree_out;
    int contributing = 0;
    for (std::int32_t root : roots_) {
        if (root < 0) continue;
        tree_posterior(root, instance.features, tree_out);
        for (int k = 0; k < K; ++k) out[static_cast<std::size_t>(k)] += tree_out[static_cast<std::size_t>(k)];
        ++contributing;
    }
    if (contributing > 0)
        for (double& p : out) p /= contributing;
}

Label MondrianForest::predict(const Instance& instance) const {
    check_dimensionality(instance);
    thread_local std::vector<double> post;
    posterior(instance, post);
    Label best = 0;
    double best_p = post[0];
    for (int k = 1; k < spec_.num_classes; ++k) {
        if (post[static_cast<std::size_t>(k)] > best_p) {
            best_p = post[static_cast<std::size_t>(k)];
            best = static_cast<Label>(k);
        }
    }
    return best;
}

}  // namespace streambench

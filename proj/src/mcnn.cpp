#include "streambench/mcnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace streambench {

std::size_t mcnn_cluster_record_bytes(int dimensionality) {
    // linear + squared sums, then count/label/error/participation/created
    return 2 * static_cast<std::size_t>(dimensionality) * kRealBytes + 5 * kCounterBytes;
}

McnnClassifier::McnnClassifier(const StreamSpec& spec, const McnnParams& params)
    : ClassifierBase(spec), params_(params) {
    params_.validate(spec.num_classes);
    clusters_.reserve(static_cast<std::size_t>(params.max_clusters));
}

namespace {
double squared_distance(const MicroCluster& c, const std::vector<double>& x) {
    double d2 = 0.0;
    const double* center = c.center.data();
    for (std::size_t f = 0; f < x.size(); ++f) {
        const double d = center[f] - x[f];
        d2 += d * d;
    }
    return d2;
}
}  // namespace

int McnnClassifier::nearest(const Instance& x, bool match_label, Label label) const {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    std::uint32_t best_created = 0;
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
        const MicroCluster& c = clusters_[i];
        if (match_label && c.label != label) continue;
        const double d2 = squared_distance(c, x.features);
        if (d2 < best_d2 || (d2 == best_d2 && best >= 0 && c.created < best_created)) {
            best = static_cast<int>(i);
            best_d2 = d2;
            best_created = c.created;
        }
    }
    return best;
}

Label McnnClassifier::predict(const Instance& instance) const {
    check_dimensionality(instance);
    const int idx = nearest(instance, false, 0);
    return idx < 0 ? 0 : clusters_[static_cast<std::size_t>(idx)].label;
}

void McnnClassifier::apply_participation(int absorbed_index) {
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
        if (static_cast<int>(i) == absorbed_index)
            clusters_[i].participation = std::min(kInitialParticipation, clusters_[i].participation + 1);
        else
            clusters_[i].participation = std::max(0, clusters_[i].participation - 1);
    }
}

std::pair<MicroCluster, MicroCluster> McnnClassifier::split_cluster(const MicroCluster& cluster,
                                                                    std::uint32_t created_a,
                                                                    std::uint32_t created_b) {
    const int dim = static_cast<int>(cluster.linear_sum.size());
    int axis = 0;
    double max_var = -1.0;
    for (int f = 0; f < dim; ++f) {
        const double v = cluster.variance(f);
        if (v > max_var) {
            max_var = v;
            axis = f;
        }
    }
    const double sd = std::sqrt(std::max(0.0, max_var));

    const std::uint32_t n_a = (cluster.count + 1) / 2;
    const std::uint32_t n_b = cluster.count / 2;
    auto make_child = [&](std::uint32_t n, double direction, std::uint32_t created) {
        MicroCluster child;
        child.count = n;
        child.label = cluster.label;
        child.error = 0;
        child.participation = kInitialParticipation;
        child.created = created;
        child.linear_sum.resize(static_cast<std::size_t>(dim));
        child.squared_sum.resize(static_cast<std::size_t>(dim));
        child.center.resize(static_cast<std::size_t>(dim));
        for (int f = 0; f < dim; ++f) {
            double center = cluster.centroid(f);
            if (f == axis) center += direction * sd;
            const double var = cluster.variance(f);
            child.linear_sum[static_cast<std::size_t>(f)] = center * n;
            child.center[static_cast<std::size_t>(f)] = center;
            // children keep the parent's per-axis spread around their new centers
            child.squared_sum[static_cast<std::size_t>(f)] = n * (center * center + std::max(0.0, var));
        }
        return child;
    };
    return {make_child(n_a, -1.0, created_a), make_child(n_b, +1.0, created_b)};
}

void McnnClassifier::try_split(std::uint32_t created_stamp) {
    auto it = std::find_if(clusters_.begin(), clusters_.end(),
                           [&](const MicroCluster& c) { return c.created == created_stamp; });
    if (it == clusters_.end()) return;
    std::size_t idx = static_cast<std::size_t>(it - clusters_.begin());
    if (clusters_[idx].error <= params_.error_threshold) return;
    if (clusters_[idx].count < 2) {
        clusters_[idx].error = 0;
        return;
    }

    if (clusters_.size() >= static_cast<std::size_t>(params_.max_clusters)) {
        if (params_.variant != McnnVariant::orpaillecc) {
            // origin has no space-driven eviction; skip the split
            clusters_[idx].error = 0;
            return;
        }
        // evict the lowest-participation cluster (tie: oldest), never the
        // cluster being split
        int victim = -1;
        for (std::size_t i = 0; i < clusters_.size(); ++i) {
            if (i == idx) continue;
            if (victim < 0 ||
                clusters_[i].participation < clusters_[static_cast<std::size_t>(victim)].participation ||
                (clusters_[i].participation == clusters_[static_cast<std::size_t>(victim)].participation &&
                 clusters_[i].created < clusters_[static_cast<std::size_t>(victim)].created)) {
                victim = static_cast<int>(i);
            }
        }
        if (victim < 0) {
            clusters_[idx].error = 0;
            return;  // max_clusters == 1
        }
        clusters_.erase(clusters_.begin() + victim);
        if (static_cast<std::size_t>(victim) < idx) --idx;
    }

    auto [a, b] = split_cluster(clusters_[idx], next_created_, next_created_ + 1);
    next_created_ += 2;
    clusters_.erase(clusters_.begin() + static_cast<std::ptrdiff_t>(idx));
    clusters_.push_back(std::move(a));
    clusters_.push_back(std::move(b));
}

void McnnClassifier::train(const Instance& instance) {
    check_dimensionality(instance);
    const Label y = require_label(instance);

    // one scan finds both the overall nearest cluster and the nearest one of
    // the instance's class (ties toward the earliest created)
    int overall = -1, correct = -1;
    double overall_d2 = std::numeric_limits<double>::infinity();
    double correct_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < clusters_.size(); ++i) {
        const MicroCluster& c = clusters_[i];
        const double d2 = squared_distance(c, instance.features);
        if (d2 < overall_d2 ||
            (d2 == overall_d2 && overall >= 0 &&
             c.created < clusters_[static_cast<std::size_t>(overall)].created)) {
            overall = static_cast<int>(i);
            overall_d2 = d2;
        }
        if (c.label == y &&
            (d2 < correct_d2 ||
             (d2 == correct_d2 && correct >= 0 &&
              c.created < clusters_[static_cast<std::size_t>(correct)].created))) {
            correct = static_cast<int>(i);
            correct_d2 = d2;
        }
    }

    bool created = false;
    if (correct < 0 && clusters_.size() < static_cast<std::size_t>(params_.max_clusters)) {
        MicroCluster c;
        c.linear_sum = instance.features;
        c.center = instance.features;
        c.squared_sum.resize(instance.features.size());
        for (std::size_t f = 0; f < instance.features.size(); ++f)
            c.squared_sum[f] = instance.features[f] * instance.features[f];
        c.count = 1;
        c.label = y;
        c.participation = kInitialParticipation;
        c.created = next_created_++;
        clusters_.push_back(std::move(c));
        correct = static_cast<int>(clusters_.size()) - 1;
        created = true;
        if (overall < 0 || 0.0 < overall_d2) overall = correct;  // singleton sits at distance 0
    }

    int absorbed = -1;
    std::uint32_t split_candidates[2];
    int candidate_count = 0;
    if (overall >= 0) {
        if (created && overall == correct) {
            absorbed = correct;  // fresh singleton already holds the instance
        } else if (clusters_[static_cast<std::size_t>(overall)].label == y) {
            MicroCluster& c = clusters_[static_cast<std::size_t>(overall)];
            const double inv = 1.0 / (c.count + 1);
            for (std::size_t f = 0; f < instance.features.size(); ++f) {
                c.linear_sum[f] += instance.features[f];
                c.squared_sum[f] += instance.features[f] * instance.features[f];
                c.center[f] = c.linear_sum[f] * inv;
            }
            ++c.count;
            absorbed = overall;
        } else {
            ++clusters_[static_cast<std::size_t>(overall)].error;
            split_candidates[candidate_count++] = clusters_[static_cast<std::size_t>(overall)].created;
            if (correct >= 0 && correct != overall) {
                ++clusters_[static_cast<std::size_t>(correct)].error;
                split_candidates[candidate_count++] = clusters_[static_cast<std::size_t>(correct)].created;
            }
        }
    }

    apply_participation(absorbed);
    for (int i = 0; i < candidate_count; ++i) try_split(split_candidates[i]);

    if (params_.variant == McnnVariant::origin) {
        clusters_.erase(std::remove_if(clusters_.begin(), clusters_.end(),
                                       [&](const MicroCluster& c) {
                                           return c.participation < params_.participation_threshold;
                                       }),
                        clusters_.end());
    }
}

std::size_t McnnClassifier::memory_bytes() const {
    return clusters_.size() * mcnn_cluster_record_bytes(spec_.dimensionality);
}

}  // namespace streambench

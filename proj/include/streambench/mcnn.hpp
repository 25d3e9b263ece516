#pragma once

#include <cstdint>
#include <vector>

#include "streambench/classifier.hpp"

namespace streambench {

enum class McnnVariant { origin, orpaillecc };

struct McnnParams {
    McnnVariant variant = McnnVariant::orpaillecc;
    int error_threshold = 2;
    int participation_threshold = 50;  // origin only
    int max_clusters = 40;

    void validate(int num_classes) const {
        if (error_threshold < 1) throw ConfigError("error_threshold must be >= 1");
        if (max_clusters < num_classes)
            throw ConfigError("max_clusters must be >= num_classes");
        if (participation_threshold < 0)
            throw ConfigError("participation_threshold must be >= 0");
    }
};

// Compressed cluster statistics: centroid = linear_sum / count. The centroid
// is cached so the nearest-cluster scan stays divide-free.
struct MicroCluster {
    std::vector<double> linear_sum;
    std::vector<double> squared_sum;
    std::vector<double> center;  // linear_sum / count, kept in sync
    std::uint32_t count = 0;
    Label label = 0;
    std::int32_t error = 0;
    std::int32_t participation = 0;
    std::uint32_t created = 0;  // creation sequence number, breaks ties

    double centroid(int f) const { return linear_sum[static_cast<std::size_t>(f)] / count; }
    double variance(int f) const {
        const double m = centroid(f);
        return squared_sum[static_cast<std::size_t>(f)] / count - m * m;
    }
};

std::size_t mcnn_cluster_record_bytes(int dimensionality);

// Micro-Cluster Nearest Neighbor. The origin variant removes any cluster
// whose participation falls below the threshold after every train call; the
// orpaillecc variant evicts the lowest-participation cluster only when a
// split needs a slot and the cluster budget is full.
class McnnClassifier final : public ClassifierBase {
public:
    McnnClassifier(const StreamSpec& spec, const McnnParams& params);

    Label predict(const Instance& instance) const override;
    void train(const Instance& instance) override;
    std::size_t memory_bytes() const override;

    const std::vector<MicroCluster>& clusters() const { return clusters_; }
    const McnnParams& params() const { return params_; }

    static constexpr std::int32_t kInitialParticipation = 100;

    // Splits along the maximum-variance attribute: children sit at the
    // centroid plus/minus one standard deviation, counts are halved, error
    // counters reset. Exposed for the split-mechanics tests.
    static std::pair<MicroCluster, MicroCluster> split_cluster(const MicroCluster& cluster,
                                                               std::uint32_t created_a,
                                                               std::uint32_t created_b);

private:
    int nearest(const Instance& x, bool match_label, Label label) const;
    void try_split(std::uint32_t created_stamp);
    void apply_participation(int absorbed_index);

    McnnParams params_;
    std::vector<MicroCluster> clusters_;
    std::uint32_t next_created_ = 0;
};

}  // namespace streambench

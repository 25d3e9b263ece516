#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "streambench/rng.hpp"
#include "streambench/stream.hpp"
#include "streambench/types.hpp"

namespace streambench {

enum class GeneratorKind { hyperplane, randomrbf, randomtree };

// Seeded synthetic stream description. Kind-specific fields are ignored by
// the other kinds; zero dimensionality/num_classes means "kind default"
// (hyperplane and randomrbf: 3 features / 2 classes; randomtree: 6 / 10).
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::hyperplane;
    std::uint64_t seed = 1;
    std::int64_t length = 200000;
    int dimensionality = 0;
    int num_classes = 0;

    // hyperplane: empty weights are sampled from the seed, a NaN threshold
    // defaults to sum(weights)/2 (balanced classes).
    std::vector<double> weights;
    double threshold = std::numeric_limits<double>::quiet_NaN();
    double noise = 0.05;

    // randomrbf
    int centroid_count = 50;
    double class_weight = 0.6;  // target frequency of class 1
    double spread = 0.04;

    // randomtree
    int tree_depth = 5;

    StreamSpec stream_spec() const;
};

class GeneratorSource : public InstanceSource {
public:
    explicit GeneratorSource(const GeneratorSpec& spec);

    std::optional<Instance> next() override;
    void reset() override;
    StreamSpec spec() const override { return stream_spec_; }

protected:
    virtual Instance emit(Rng& rng) = 0;

    GeneratorSpec gen_spec_;
    StreamSpec stream_spec_;

private:
    Rng rng_;
    std::int64_t emitted_ = 0;
};

class HyperplaneGenerator : public GeneratorSource {
public:
    explicit HyperplaneGenerator(const GeneratorSpec& spec);

    const std::vector<double>& weights() const { return weights_; }
    double threshold() const { return threshold_; }

protected:
    Instance emit(Rng& rng) override;

private:
    std::vector<double> weights_;
    double threshold_;
};

class RandomRbfGenerator : public GeneratorSource {
public:
    explicit RandomRbfGenerator(const GeneratorSpec& spec);

    struct Centroid {
        std::vector<double> center;
        Label label;
        double weight;
    };
    const std::vector<Centroid>& centroids() const { return centroids_; }

protected:
    Instance emit(Rng& rng) override;

private:
    std::vector<Centroid> centroids_;
    std::vector<double> cumulative_;
};

class RandomTreeGenerator : public GeneratorSource {
public:
    explicit RandomTreeGenerator(const GeneratorSpec& spec);

    // Exposed so tests can replay labels through an independent tree walk.
    struct Node {
        int attribute = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1, right = -1;
        Label leaf_class = 0;
    };
    const std::vector<Node>& nodes() const { return nodes_; }
    Label classify(const std::vector<double>& features) const;

protected:
    Instance emit(Rng& rng) override;

private:
    int build(Rng& structure_rng, int depth, std::vector<double>& lo, std::vector<double>& hi,
              std::vector<Label>& leaf_classes, std::size_t& next_leaf);

    std::vector<Node> nodes_;
    int root_ = -1;
};

std::unique_ptr<GeneratorSource> make_generator(const GeneratorSpec& spec);

// Materializes spec.length instances.
std::vector<Instance> generate(const GeneratorSpec& spec);

}  // namespace streambench

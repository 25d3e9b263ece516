#pragma once

#include <cstdint>
#include <vector>

#include "streambench/classifier.hpp"
#include "streambench/rng.hpp"

namespace streambench {

struct FnnParams {
    std::vector<int> hidden = {30};
    double learning_rate = 0.01;

    void validate() const {
        if (!(learning_rate >= 0.0)) throw ConfigError("learning_rate must be >= 0");
        for (int h : hidden)
            if (h < 1) throw ConfigError("hidden layer sizes must be >= 1");
    }
};

// Fully connected feedforward network, sigmoid activations on every layer,
// trained online by one squared-error backpropagation step per element.
class FeedforwardNetwork final : public ClassifierBase {
public:
    FeedforwardNetwork(const StreamSpec& spec, const FnnParams& params, std::uint64_t seed);

    Label predict(const Instance& instance) const override;
    void train(const Instance& instance) override;
    std::size_t memory_bytes() const override;

    struct Layer {
        int in = 0, out = 0;
        std::vector<double> weights;  // out x in, row-major
        std::vector<double> bias;
    };

    std::vector<Layer>& layers() { return layers_; }
    const std::vector<Layer>& layers() const { return layers_; }

    // Output activations for one instance.
    std::vector<double> forward(const Instance& instance) const;

    // Half squared error of the output against the one-hot target.
    double loss(const Instance& instance) const;

    // epochs x |sample| backprop steps over a seeded shuffle per epoch.
    void pretrain(const std::vector<Instance>& sample, int epochs, std::uint64_t seed);

private:
    void forward_all(const std::vector<double>& features) const;
    void backprop(const std::vector<double>& features, Label target);

    FnnParams params_;
    std::vector<Layer> layers_;
    mutable std::vector<std::vector<double>> activations_;  // scratch, one per layer
    std::vector<std::vector<double>> deltas_;               // scratch
};

}  // namespace streambench

#include "streambench/fnn.hpp"

#include <algorithm>
#include <cmath>

namespace streambench {

namespace {
double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }
}  // namespace

FeedforwardNetwork::FeedforwardNetwork(const StreamSpec& spec, const FnnParams& params,
                                       std::uint64_t seed)
    : ClassifierBase(spec), params_(params) {
    params_.validate();
    std::vector<int> widths;
    widths.push_back(spec.dimensionality);
    for (int h : params.hidden) widths.push_back(h);
    widths.push_back(spec.num_classes);

    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        Layer layer;
        layer.in = widths[l];
        layer.out = widths[l + 1];
        layer.weights.resize(static_cast<std::size_t>(layer.in) * layer.out);
        layer.bias.resize(static_cast<std::size_t>(layer.out));
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.in));
        for (double& w : layer.weights) w = rng.uniform(-bound, bound);
        for (double& b : layer.bias) b = rng.uniform(-bound, bound);
        layers_.push_back(std::move(layer));
    }
    activations_.resize(layers_.size());
    deltas_.resize(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        activations_[l].resize(static_cast<std::size_t>(layers_[l].out));
        deltas_[l].resize(static_cast<std::size_t>(layers_[l].out));
    }
}

void FeedforwardNetwork::forward_all(const std::vector<double>& features) const {
    const std::vector<double>* input = &features;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer& layer = layers_[l];
        std::vector<double>& out = activations_[l];
        for (int o = 0; o < layer.out; ++o) {
            double z = layer.bias[static_cast<std::size_t>(o)];
            const double* row = &layer.weights[static_cast<std::size_t>(o) * layer.in];
            for (int i = 0; i < layer.in; ++i) z += row[i] * (*input)[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(o)] = sigmoid(z);
        }
        input = &out;
    }
}

std::vector<double> FeedforwardNetwork::forward(const Instance& instance) const {
    check_dimensionality(instance);
    forward_all(instance.features);
    return activations_.back();
}

Label FeedforwardNetwork::predict(const Instance& instance) const {
    check_dimensionality(instance);
    forward_all(instance.features);
    const std::vector<double>& out = activations_.back();
    Label best = 0;
    double best_v = out[0];
    for (std::size_t k = 1; k < out.size(); ++k) {
        if (out[k] > best_v) {
            best_v = out[k];
            best = static_cast<Label>(k);
        }
    }
    return best;
}

double FeedforwardNetwork::loss(const Instance& instance) const {
    check_dimensionality(instance);
    const Label y = *instance.label;
    forward_all(instance.features);
    const std::vector<double>& out = activations_.back();
    double e = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double t = static_cast<Label>(k) == y ? 1.0 : 0.0;
        const double d = out[k] - t;
        e += 0.5 * d * d;
    }
    return e;
}

void FeedforwardNetwork::backprop(const std::vector<double>& features, Label target) {
    forward_all(features);
    const std::size_t L = layers_.size();

    // output deltas: dE/dz = (a - t) * a * (1 - a)
    {
        const std::vector<double>& a = activations_[L - 1];
        std::vector<double>& delta = deltas_[L - 1];
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double t = static_cast<Label>(k) == target ? 1.0 : 0.0;
            delta[k] = (a[k] - t) * a[k] * (1.0 - a[k]);
        }
    }
    for (std::size_t l = L - 1; l-- > 0;) {
        const Layer& upper = layers_[l + 1];
        const std::vector<double>& a = activations_[l];
        std::vector<double>& delta = deltas_[l];
        for (int i = 0; i < upper.in; ++i) {
            double sum = 0.0;
            for (int o = 0; o < upper.out; ++o)
                sum += upper.weights[static_cast<std::size_t>(o) * upper.in + i] *
                       deltas_[l + 1][static_cast<std::size_t>(o)];
            delta[static_cast<std::size_t>(i)] = sum * a[static_cast<std::size_t>(i)] *
                                                 (1.0 - a[static_cast<std::size_t>(i)]);
        }
    }

    const double lr = params_.learning_rate;
    const std::vector<double>* input = &features;
    for (std::size_t l = 0; l < L; ++l) {
        Layer& layer = layers_[l];
        const std::vector<double>& delta = deltas_[l];
        for (int o = 0; o < layer.out; ++o) {
            double* row = &layer.weights[static_cast<std::size_t>(o) * layer.in];
            const double step = lr * delta[static_cast<std::size_t>(o)];
            for (int i = 0; i < layer.in; ++i) row[i] -= step * (*input)[static_cast<std::size_t>(i)];
            layer.bias[static_cast<std::size_t>(o)] -= step;
        }
        input = &activations_[l];
    }
}

void FeedforwardNetwork::train(const Instance& instance) {
    check_dimensionality(instance);
    const Label y = require_label(instance);
    backprop(instance.features, y);
}

void FeedforwardNetwork::pretrain(const std::vector<Instance>& sample, int epochs,
                                  std::uint64_t seed) {
    if (sample.empty()) throw UsageError("pretrain requires a non-empty sample");
    if (epochs < 0) throw UsageError("epochs must be >= 0");
    std::vector<std::size_t> order(sample.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int e = 0; e < epochs; ++e) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(e)));
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.uniform_int(i)]);
        for (std::size_t idx : order) train(sample[idx]);
    }
}

std::size_t FeedforwardNetwork::memory_bytes() const {
    std::size_t total = 0;
    for (const Layer& layer : layers_)
        total += (layer.weights.size() + layer.bias.size()) * kRealBytes;
    return total;
}

}  // namespace streambench

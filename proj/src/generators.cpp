#include "streambench/generators.hpp"

#include <algorithm>
#include <cmath>

namespace streambench {

namespace {

constexpr std::uint64_t kStructureStream = 1;
constexpr std::uint64_t kElementStream = 2;

int default_dim(GeneratorKind kind) { return kind == GeneratorKind::randomtree ? 6 : 3; }
int default_classes(GeneratorKind kind) { return kind == GeneratorKind::randomtree ? 10 : 2; }

}  // namespace

StreamSpec GeneratorSpec::stream_spec() const {
    StreamSpec s;
    s.dimensionality = dimensionality > 0 ? dimensionality : default_dim(kind);
    s.num_classes = num_classes > 0 ? num_classes : default_classes(kind);
    s.length = length;
    s.validate();
    return s;
}

GeneratorSource::GeneratorSource(const GeneratorSpec& spec)
    : gen_spec_(spec), stream_spec_(spec.stream_spec()), rng_(mix_seed(spec.seed, kElementStream)) {
    if (spec.length <= 0) throw ConfigError("generator length must be > 0");
}

std::optional<Instance> GeneratorSource::next() {
    if (emitted_ >= gen_spec_.length) return std::nullopt;
    ++emitted_;
    return emit(rng_);
}

void GeneratorSource::reset() {
    rng_ = Rng(mix_seed(gen_spec_.seed, kElementStream));
    emitted_ = 0;
}

HyperplaneGenerator::HyperplaneGenerator(const GeneratorSpec& spec) : GeneratorSource(spec) {
    if (stream_spec_.num_classes != 2)
        throw ConfigError("hyperplane generator is two-class");
    Rng structure(mix_seed(spec.seed, kStructureStream));
    weights_ = spec.weights;
    if (weights_.empty()) {
        weights_.resize(static_cast<std::size_t>(stream_spec_.dimensionality));
        for (double& w : weights_) w = structure.uniform();
    } else if (static_cast<int>(weights_.size()) != stream_spec_.dimensionality) {
        throw ConfigError("hyperplane weight count must match dimensionality");
    }
    if (std::isnan(spec.threshold)) {
        double sum = 0.0;
        for (double w : weights_) sum += w;
        threshold_ = sum / 2.0;
    } else {
        threshold_ = spec.threshold;
    }
}

Instance HyperplaneGenerator::emit(Rng& rng) {
    Instance x;
    x.features.resize(weights_.size());
    double dot = 0.0;
    for (std::size_t d = 0; d < weights_.size(); ++d) {
        x.features[d] = rng.uniform();
        dot += weights_[d] * x.features[d];
    }
    Label label = dot >= threshold_ ? 1 : 0;
    // noise draw happens unconditionally so the feature sequence does not
    // depend on the noise setting
    const double flip = rng.uniform();
    if (flip < gen_spec_.noise) label = 1 - label;
    x.label = label;
    return x;
}

RandomRbfGenerator::RandomRbfGenerator(const GeneratorSpec& spec) : GeneratorSource(spec) {
    if (spec.centroid_count < stream_spec_.num_classes)
        throw ConfigError("randomrbf needs at least one centroid per class");
    Rng structure(mix_seed(spec.seed, kStructureStream));
    const int dim = stream_spec_.dimensionality;
    const int classes = stream_spec_.num_classes;

    std::vector<double> weights(static_cast<std::size_t>(spec.centroid_count));
    double total = 0.0;
    for (double& w : weights) {
        w = structure.uniform(0.1, 1.1);
        total += w;
    }
    for (double& w : weights) w /= total;

    // Class targets: class 1 carries the imbalance weight, the rest share the
    // remainder evenly. Centroids are assigned greedily to whichever class is
    // furthest below its target, so the realized frequencies track the
    // targets within one centroid weight for any seed.
    std::vector<double> target(static_cast<std::size_t>(classes),
                               (1.0 - spec.class_weight) / std::max(1, classes - 1));
    target[1] = spec.class_weight;
    std::vector<double> assigned(static_cast<std::size_t>(classes), 0.0);

    centroids_.resize(weights.size());
    cumulative_.resize(weights.size());
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        Centroid& c = centroids_[i];
        c.center.resize(static_cast<std::size_t>(dim));
        for (double& v : c.center) v = structure.uniform();
        c.weight = weights[i];
        int best = 0;
        double best_gap = target[0] - assigned[0];
        for (int k = 1; k < classes; ++k) {
            const double gap = target[static_cast<std::size_t>(k)] - assigned[static_cast<std::size_t>(k)];
            if (gap > best_gap) {
                best_gap = gap;
                best = k;
            }
        }
        c.label = static_cast<Label>(best);
        assigned[static_cast<std::size_t>(best)] += weights[i];
        cum += weights[i];
        cumulative_[i] = cum;
    }
    cumulative_.back() = 1.0;
}

Instance RandomRbfGenerator::emit(Rng& rng) {
    const double u = rng.uniform();
    const std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
    const Centroid& c = centroids_[std::min(idx, centroids_.size() - 1)];

    Instance x;
    x.features.resize(c.center.size());
    const double clamp = 6.0 * gen_spec_.spread;
    for (std::size_t d = 0; d < c.center.size(); ++d) {
        const double offset = gen_spec_.spread > 0.0
                                  ? std::clamp(rng.gaussian() * gen_spec_.spread, -clamp, clamp)
                                  : 0.0;
        x.features[d] = c.center[d] + offset;
    }
    x.label = c.label;
    return x;
}

RandomTreeGenerator::RandomTreeGenerator(const GeneratorSpec& spec) : GeneratorSource(spec) {
    if (spec.tree_depth < 1) throw ConfigError("randomtree depth must be >= 1");
    Rng structure(mix_seed(spec.seed, kStructureStream));

    // Leaf classes come from a shuffled list that contains every class at
    // least once, so all classes are reachable regardless of the seed.
    const std::size_t leaf_count = std::size_t{1} << spec.tree_depth;
    const int classes = stream_spec_.num_classes;
    if (leaf_count < static_cast<std::size_t>(classes))
        throw ConfigError("randomtree depth too small for the class count");
    std::vector<Label> leaf_classes(leaf_count);
    for (std::size_t i = 0; i < leaf_count; ++i)
        leaf_classes[i] = static_cast<Label>(i % static_cast<std::size_t>(classes));
    for (std::size_t i = leaf_count; i > 1; --i)
        std::swap(leaf_classes[i - 1], leaf_classes[structure.uniform_int(i)]);

    std::vector<double> lo(static_cast<std::size_t>(stream_spec_.dimensionality), 0.0);
    std::vector<double> hi(static_cast<std::size_t>(stream_spec_.dimensionality), 1.0);
    std::size_t next_leaf = 0;
    root_ = build(structure, spec.tree_depth, lo, hi, leaf_classes, next_leaf);
}

int RandomTreeGenerator::build(Rng& structure_rng, int depth, std::vector<double>& lo,
                               std::vector<double>& hi, std::vector<Label>& leaf_classes,
                               std::size_t& next_leaf) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    if (depth == 0) {
        nodes_[static_cast<std::size_t>(id)].leaf_class = leaf_classes[next_leaf++];
        return id;
    }
    const int attr = static_cast<int>(structure_rng.uniform_int(lo.size()));
    // threshold drawn inside the cell's remaining range so no region is empty
    const double threshold = structure_rng.uniform(lo[static_cast<std::size_t>(attr)],
                                                   hi[static_cast<std::size_t>(attr)]);
    nodes_[static_cast<std::size_t>(id)].attribute = attr;
    nodes_[static_cast<std::size_t>(id)].threshold = threshold;

    const double saved_hi = hi[static_cast<std::size_t>(attr)];
    hi[static_cast<std::size_t>(attr)] = threshold;
    const int left = build(structure_rng, depth - 1, lo, hi, leaf_classes, next_leaf);
    hi[static_cast<std::size_t>(attr)] = saved_hi;

    const double saved_lo = lo[static_cast<std::size_t>(attr)];
    lo[static_cast<std::size_t>(attr)] = threshold;
    const int right = build(structure_rng, depth - 1, lo, hi, leaf_classes, next_leaf);
    lo[static_cast<std::size_t>(attr)] = saved_lo;

    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
}

Label RandomTreeGenerator::classify(const std::vector<double>& features) const {
    int node = root_;
    while (nodes_[static_cast<std::size_t>(node)].attribute >= 0) {
        const Node& n = nodes_[static_cast<std::size_t>(node)];
        node = features[static_cast<std::size_t>(n.attribute)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[static_cast<std::size_t>(node)].leaf_class;
}

Instance RandomTreeGenerator::emit(Rng& rng) {
    Instance x;
    x.features.resize(static_cast<std::size_t>(stream_spec_.dimensionality));
    for (double& f : x.features) f = rng.uniform();
    x.label = classify(x.features);
    return x;
}

std::unique_ptr<GeneratorSource> make_generator(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::hyperplane: return std::make_unique<HyperplaneGenerator>(spec);
        case GeneratorKind::randomrbf: return std::make_unique<RandomRbfGenerator>(spec);
        case GeneratorKind::randomtree: return std::make_unique<RandomTreeGenerator>(spec);
    }
    throw ConfigError("unknown generator kind");
}

std::vector<Instance> generate(const GeneratorSpec& spec) {
    auto gen = make_generator(spec);
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(spec.length));
    while (auto x = gen->next()) out.push_back(std::move(*x));
    return out;
}

}  // namespace streambench

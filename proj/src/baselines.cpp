#include "streambench/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "streambench/eval.hpp"

namespace streambench {

Label knn_predict(const KnnModel& model, const Instance& instance) {
    if (model.training.empty()) throw UsageError("knn_predict on an unfitted model");
    if (static_cast<int>(instance.features.size()) != model.spec.dimensionality)
        throw ConfigError("knn query dimensionality mismatch");

    thread_local std::vector<std::pair<double, Label>> neighbors;
    neighbors.clear();
    neighbors.reserve(model.training.size());
    for (const Instance& t : model.training) {
        double d2 = 0.0;
        for (std::size_t f = 0; f < instance.features.size(); ++f) {
            const double d = t.features[f] - instance.features[f];
            d2 += d * d;
        }
        neighbors.emplace_back(d2, *t.label);
    }
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(model.k), neighbors.size());
    std::partial_sort(neighbors.begin(), neighbors.begin() + static_cast<std::ptrdiff_t>(k),
                      neighbors.end());

    thread_local std::vector<int> votes;
    votes.assign(static_cast<std::size_t>(model.spec.num_classes), 0);
    for (std::size_t i = 0; i < k; ++i) ++votes[static_cast<std::size_t>(neighbors[i].second)];
    Label best = 0;
    for (int c = 1; c < model.spec.num_classes; ++c)
        if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)])
            best = static_cast<Label>(c);
    return best;
}

KnnModel knn_fit_gridsearch(std::vector<Instance> training,
                            const std::vector<Instance>& validation, const StreamSpec& spec,
                            int k_min, int k_max) {
    if (training.empty() || validation.empty())
        throw UsageError("knn grid search requires non-empty splits");
    if (static_cast<int>(training.size()) < k_min)
        throw UsageError("training split smaller than the minimum k");
    for (const Instance& t : training)
        if (!t.label) throw UsageError("knn training instances must be labeled");

    KnnModel model{std::move(training), k_min, spec};
    double best_f1 = -1.0;
    int best_k = k_min;
    const int k_hi = std::min<int>(k_max, static_cast<int>(model.training.size()));
    for (int k = k_min; k <= k_hi; ++k) {
        model.k = k;
        ConfusionState confusion(spec.num_classes);
        for (const Instance& v : validation)
            confusion.record(knn_predict(model, v), *v.label);
        const double f1 = confusion.macro_f1().value_or(0.0);
        if (f1 > best_f1) {
            best_f1 = f1;
            best_k = k;
        }
    }
    model.k = best_k;
    return model;
}

}  // namespace streambench

#pragma once

#include <vector>

#include "streambench/classifier.hpp"

namespace streambench {

// No-op learner predicting class 0; the zero point for runtime and memory
// measurements.
class EmptyClassifier final : public ClassifierBase {
public:
    explicit EmptyClassifier(const StreamSpec& spec) : ClassifierBase(spec) {}

    Label predict(const Instance& instance) const override {
        check_dimensionality(instance);
        return 0;
    }
    void train(const Instance& instance) override {
        check_dimensionality(instance);
        require_label(instance);
    }
    std::size_t memory_bytes() const override { return 0; }
};

struct KnnModel {
    std::vector<Instance> training;
    int k = 1;
    StreamSpec spec;

    std::size_t memory_bytes() const {
        return training.size() * (static_cast<std::size_t>(spec.dimensionality) * kRealBytes +
                                  kCounterBytes) +
               kCounterBytes;
    }
};

// Majority label among the k nearest stored instances (Euclidean); neighbor
// order is fixed by sorting (distance, label) pairs, vote ties break toward
// the lowest class id.
Label knn_predict(const KnnModel& model, const Instance& instance);

// Selects k in [k_min, k_max] maximizing macro-F1 on the validation split
// (ties toward the smallest k). The returned model stores the training split.
KnnModel knn_fit_gridsearch(std::vector<Instance> training,
                            const std::vector<Instance>& validation, const StreamSpec& spec,
                            int k_min = 2, int k_max = 20);

}  // namespace streambench

#pragma once

#include <cstddef>
#include <memory>

#include "streambench/types.hpp"

namespace streambench {

// Uniform online-classifier contract. predict must be pure (no state
// mutation) and must return a valid class even before any training; train
// consumes exactly one labeled element; memory_bytes is the self-accounted
// footprint under the fixed record sizes (kRealBytes / kCounterBytes).
class Classifier {
public:
    virtual ~Classifier() = default;

    virtual Label predict(const Instance& instance) const = 0;
    virtual void train(const Instance& instance) = 0;
    virtual std::size_t memory_bytes() const = 0;

    virtual const StreamSpec& spec() const = 0;
};

// Shared precondition checks.
class ClassifierBase : public Classifier {
public:
    explicit ClassifierBase(const StreamSpec& spec) : spec_(spec) { spec_.validate(); }

    const StreamSpec& spec() const override { return spec_; }

protected:
    void check_dimensionality(const Instance& x) const {
        if (static_cast<int>(x.features.size()) != spec_.dimensionality)
            throw ConfigError("instance has " + std::to_string(x.features.size()) +
                              " features, classifier expects " +
                              std::to_string(spec_.dimensionality));
    }

    Label require_label(const Instance& x) const {
        if (!x.label)
            throw UsageError("train requires a labeled instance");
        if (*x.label < 0 || *x.label >= spec_.num_classes)
            throw DataError("label " + std::to_string(*x.label) + " outside [0, " +
                            std::to_string(spec_.num_classes) + ")");
        return *x.label;
    }

    StreamSpec spec_;
};

}  // namespace streambench

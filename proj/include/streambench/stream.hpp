#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "streambench/types.hpp"

namespace streambench {

// Pull-based instance stream. reset() rewinds to the first element and
// restores any internal generator state, so one source can drive several
// repetitions.
class InstanceSource {
public:
    virtual ~InstanceSource() = default;

    virtual std::optional<Instance> next() = 0;
    virtual void reset() = 0;
    virtual StreamSpec spec() const = 0;
};

class VectorSource : public InstanceSource {
public:
    VectorSource(std::vector<Instance> data, StreamSpec spec)
        : data_(std::move(data)), spec_(spec) {
        spec_.length = static_cast<std::int64_t>(data_.size());
    }

    std::optional<Instance> next() override {
        if (pos_ >= data_.size()) return std::nullopt;
        return data_[pos_++];
    }

    void reset() override { pos_ = 0; }
    StreamSpec spec() const override { return spec_; }

    const std::vector<Instance>& data() const { return data_; }

private:
    std::vector<Instance> data_;
    StreamSpec spec_;
    std::size_t pos_ = 0;
};

// Drains a source into a vector (used by shuffling and the offline baseline).
std::vector<Instance> materialize(InstanceSource& source);

}  // namespace streambench

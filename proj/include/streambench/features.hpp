#pragma once

#include <cstdint>
#include <vector>

#include "streambench/types.hpp"

namespace streambench {

// One fixed-length slice of a raw multi-axis sample stream.
// samples is row-major: samples[i * axes + a] is sample i, axis a.
struct SampleWindow {
    std::vector<double> samples;
    std::vector<Label> labels;
    int axes = 0;

    int size() const { return axes > 0 ? static_cast<int>(labels.size()) : 0; }
};

struct DriftConfig {
    std::int64_t position = 0;  // first element index affected
    int shift = 1;              // label offset, applied mod num_classes
};

// Consecutive non-overlapping windows; a trailing partial window is dropped.
std::vector<SampleWindow> window_stream(const std::vector<double>& samples,
                                        const std::vector<Label>& labels, int axes,
                                        int window_size);

// [mean(axis 0), std(axis 0), mean(axis 1), std(axis 1), ...]
// std is the population standard deviation (divide by n).
Instance meanstd_features(const SampleWindow& window);

// Per axis: normalized counts over `bins` equal-width bins spanning
// [range_lo[a], range_hi[a]]; out-of-range samples clamp to the edge bins.
// Axes are concatenated, giving bins * axes features.
Instance histogram_features(const SampleWindow& window, int bins,
                            const std::vector<double>& range_lo,
                            const std::vector<double>& range_hi);

// Modal label of the window; ties break toward the lowest label id.
Label majority_label(const SampleWindow& window);

// Shifts labels of elements at index >= cfg.position by cfg.shift mod
// num_classes. Features are untouched. shift % num_classes == 0 is an error
// (the drift would be a no-op).
std::vector<Instance> inject_drift(std::vector<Instance> stream, const DriftConfig& cfg,
                                   int num_classes);

// Label transform used by inject_drift, exposed so streaming wrappers apply
// the identical rule.
Label drift_label(Label label, int shift, int num_classes);

// Uniform seeded Fisher-Yates permutation.
std::vector<Instance> shuffle_stream(std::vector<Instance> stream, std::uint64_t seed);

}  // namespace streambench

#include "streambench/features.hpp"

#include <algorithm>
#include <cmath>

#include "streambench/rng.hpp"

namespace streambench {

std::vector<SampleWindow> window_stream(const std::vector<double>& samples,
                                        const std::vector<Label>& labels, int axes,
                                        int window_size) {
    if (window_size < 1) throw UsageError("window_size must be >= 1");
    if (axes < 1) throw UsageError("axes must be >= 1");
    if (samples.size() != labels.size() * static_cast<std::size_t>(axes))
        throw DataError("sample/label count mismatch");

    const std::size_t n = labels.size();
    const std::size_t full = n / static_cast<std::size_t>(window_size);
    std::vector<SampleWindow> out;
    out.reserve(full);
    for (std::size_t w = 0; w < full; ++w) {
        SampleWindow win;
        win.axes = axes;
        const std::size_t begin = w * static_cast<std::size_t>(window_size);
        win.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(begin * axes),
                           samples.begin() +
                               static_cast<std::ptrdiff_t>((begin + window_size) * axes));
        win.labels.assign(labels.begin() + static_cast<std::ptrdiff_t>(begin),
                          labels.begin() + static_cast<std::ptrdiff_t>(begin + window_size));
        out.push_back(std::move(win));
    }
    return out;
}

Instance meanstd_features(const SampleWindow& window) {
    const int n = window.size();
    if (n == 0) throw UsageError("meanstd_features on empty window");
    Instance out;
    out.features.reserve(static_cast<std::size_t>(2 * window.axes));
    for (int a = 0; a < window.axes; ++a) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += window.samples[static_cast<std::size_t>(i) * window.axes + a];
        const double mean = sum / n;
        double sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = window.samples[static_cast<std::size_t>(i) * window.axes + a] - mean;
            sq += d * d;
        }
        out.features.push_back(mean);
        out.features.push_back(std::sqrt(sq / n));
    }
    return out;
}

Instance histogram_features(const SampleWindow& window, int bins,
                            const std::vector<double>& range_lo,
                            const std::vector<double>& range_hi) {
    const int n = window.size();
    if (n == 0) throw UsageError("histogram_features on empty window");
    if (bins < 1) throw UsageError("bins must be >= 1");
    if (static_cast<int>(range_lo.size()) != window.axes ||
        static_cast<int>(range_hi.size()) != window.axes)
        throw UsageError("range arrays must have one entry per axis");

    Instance out;
    out.features.assign(static_cast<std::size_t>(bins) * window.axes, 0.0);
    for (int a = 0; a < window.axes; ++a) {
        const double lo = range_lo[a];
        const double hi = range_hi[a];
        if (!(lo < hi)) throw UsageError("histogram range must satisfy lo < hi");
        const double width = (hi - lo) / bins;
        for (int i = 0; i < n; ++i) {
            const double v = window.samples[static_cast<std::size_t>(i) * window.axes + a];
            int b = static_cast<int>(std::floor((v - lo) / width));
            b = std::clamp(b, 0, bins - 1);
            out.features[static_cast<std::size_t>(a) * bins + b] += 1.0;
        }
    }
    for (double& f : out.features) f /= n;
    return out;
}

Label majority_label(const SampleWindow& window) {
    if (window.size() == 0) throw UsageError("majority_label on empty window");
    Label best = window.labels[0];
    int best_count = 0;
    // counting per distinct label; windows are small so the quadratic scan is fine
    for (Label candidate : window.labels) {
        int count = 0;
        for (Label l : window.labels)
            if (l == candidate) ++count;
        if (count > best_count || (count == best_count && candidate < best)) {
            best = candidate;
            best_count = count;
        }
    }
    return best;
}

Label drift_label(Label label, int shift, int num_classes) {
    return static_cast<Label>((label + shift) % num_classes);
}

std::vector<Instance> inject_drift(std::vector<Instance> stream, const DriftConfig& cfg,
                                   int num_classes) {
    if (num_classes < 1) throw UsageError("num_classes must be >= 1");
    if (cfg.shift % num_classes == 0)
        throw UsageError("drift shift is a multiple of num_classes (no-op drift)");
    if (cfg.position <= 0 || cfg.position >= static_cast<std::int64_t>(stream.size()))
        throw UsageError("drift position must lie strictly inside the stream");
    for (std::size_t i = static_cast<std::size_t>(cfg.position); i < stream.size(); ++i) {
        if (stream[i].label)
            stream[i].label = drift_label(*stream[i].label, cfg.shift, num_classes);
    }
    return stream;
}

std::vector<Instance> shuffle_stream(std::vector<Instance> stream, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t i = stream.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.uniform_int(i));
        std::swap(stream[i - 1], stream[j]);
    }
    return stream;
}

}  // namespace streambench

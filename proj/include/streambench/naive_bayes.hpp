#pragma once

#include <cstdint>
#include <vector>

#include "streambench/classifier.hpp"

namespace streambench {

// One-pass mean/variance tracker (Welford update).
struct GaussianEstimator {
    std::uint32_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    // Population variance (divide by n).
    double variance() const { return count > 0 ? m2 / count : 0.0; }
};

// Gaussian Naive Bayes over a fixed table of num_classes x dimensionality
// estimators. Space is constant: nothing grows with the stream.
class GaussianNaiveBayes final : public ClassifierBase {
public:
    explicit GaussianNaiveBayes(const StreamSpec& spec);

    Label predict(const Instance& instance) const override;
    void train(const Instance& instance) override;
    std::size_t memory_bytes() const override;

    // Per-class log posterior (up to the shared evidence term); -inf for
    // classes never seen. Exposed for the oracle tests and the Hoeffding
    // tree's split evaluation.
    void log_scores(const Instance& instance, std::vector<double>& out) const;

    const GaussianEstimator& estimator(int cls, int feature) const {
        return table_[static_cast<std::size_t>(cls) * spec_.dimensionality + feature];
    }
    std::uint32_t prior_count(int cls) const { return priors_[static_cast<std::size_t>(cls)]; }
    std::uint64_t total_count() const { return total_; }
    int classes_seen() const { return classes_seen_; }

    static constexpr double kVarianceFloor = 1e-6;

private:
    std::vector<GaussianEstimator> table_;  // classes x features
    std::vector<std::uint32_t> priors_;
    std::uint64_t total_ = 0;
    int classes_seen_ = 0;
};

}  // namespace streambench

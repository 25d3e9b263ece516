#include "streambench/naive_bayes.hpp"

#include <cmath>
#include <limits>

namespace streambench {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

double gaussian_log_density(double x, double mean, double variance) {
    const double d = x - mean;
    return -0.5 * (kLog2Pi + std::log(variance) + d * d / variance);
}
}  // namespace

GaussianNaiveBayes::GaussianNaiveBayes(const StreamSpec& spec)
    : ClassifierBase(spec),
      table_(static_cast<std::size_t>(spec.num_classes) * spec.dimensionality),
      priors_(static_cast<std::size_t>(spec.num_classes), 0) {}

void GaussianNaiveBayes::train(const Instance& instance) {
    check_dimensionality(instance);
    const Label y = require_label(instance);
    if (priors_[static_cast<std::size_t>(y)] == 0) ++classes_seen_;
    ++priors_[static_cast<std::size_t>(y)];
    ++total_;
    GaussianEstimator* row = &table_[static_cast<std::size_t>(y) * spec_.dimensionality];
    for (int f = 0; f < spec_.dimensionality; ++f) row[f].add(instance.features[static_cast<std::size_t>(f)]);
}

void GaussianNaiveBayes::log_scores(const Instance& instance, std::vector<double>& out) const {
    check_dimensionality(instance);
    out.assign(static_cast<std::size_t>(spec_.num_classes),
               -std::numeric_limits<double>::infinity());
    if (total_ == 0) return;
    const double log_total = std::log(static_cast<double>(total_));
    for (int c = 0; c < spec_.num_classes; ++c) {
        const std::uint32_t prior = priors_[static_cast<std::size_t>(c)];
        if (prior == 0) continue;  // never-trained classes stay at -inf
        double score = std::log(static_cast<double>(prior)) - log_total;
        const GaussianEstimator* row = &table_[static_cast<std::size_t>(c) * spec_.dimensionality];
        for (int f = 0; f < spec_.dimensionality; ++f) {
            const double variance = std::max(row[f].variance(), kVarianceFloor);
            score += gaussian_log_density(instance.features[static_cast<std::size_t>(f)],
                                          row[f].mean, variance);
        }
        out[static_cast<std::size_t>(c)] = score;
    }
}

Label GaussianNaiveBayes::predict(const Instance& instance) const {
    thread_local std::vector<double> scores;
    log_scores(instance, scores);
    Label best = 0;
    double best_score = scores[0];
    for (int c = 1; c < spec_.num_classes; ++c) {
        if (scores[static_cast<std::size_t>(c)] > best_score) {
            best_score = scores[static_cast<std::size_t>(c)];
            best = static_cast<Label>(c);
        }
    }
    return best;
}

std::size_t GaussianNaiveBayes::memory_bytes() const {
    // per (class, feature): count + mean + squared-deviation sum; per class: prior
    const std::size_t cell = kCounterBytes + 2 * kRealBytes;
    return table_.size() * cell + priors_.size() * kCounterBytes;
}

}  // namespace streambench

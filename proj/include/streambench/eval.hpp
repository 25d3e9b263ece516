#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streambench/classifier.hpp"
#include "streambench/stream.hpp"

namespace streambench {

struct ClassCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0;
    bool encountered = false;
};

// Mean per-class one-versus-all F1 over encountered classes; empty when no
// class was encountered. Zero-denominator F1 terms count as 0.
std::optional<double> macro_f1(const std::vector<ClassCounts>& counts);

// Cumulative one-versus-all counters. A class joins the macro average once
// it has appeared as a true label; predictions of never-labeled classes
// count as false positives but do not add the class to the mean.
class ConfusionState {
public:
    explicit ConfusionState(int num_classes);

    void record(Label predicted, Label truth);

    std::optional<double> macro_f1() const { return streambench::macro_f1(counts_); }

    std::uint64_t elements() const { return elements_; }
    std::uint64_t tp(int c) const { return counts_[static_cast<std::size_t>(c)].tp; }
    std::uint64_t fp(int c) const { return counts_[static_cast<std::size_t>(c)].fp; }
    std::uint64_t fn(int c) const { return counts_[static_cast<std::size_t>(c)].fn; }
    bool encountered(int c) const { return counts_[static_cast<std::size_t>(c)].encountered; }
    int num_classes() const { return static_cast<int>(counts_.size()); }

private:
    std::vector<ClassCounts> counts_;
    std::uint64_t elements_ = 0;
};

struct TimelinePoint {
    std::int64_t elements = 0;
    double macro_f1 = 0.0;
    std::size_t memory_bytes = 0;
};

// Outcome of one classifier x dataset x seed run.
struct RunReport {
    std::string classifier;
    std::string dataset;
    std::uint64_t seed = 0;
    std::vector<TimelinePoint> timeline;
    double final_macro_f1 = 0.0;
    double runtime_seconds = 0.0;
    double net_runtime_seconds = 0.0;  // filled by the harness after baselining
    std::size_t peak_memory_bytes = 0;
    std::int64_t elements = 0;
};

struct PredictionLog {
    std::vector<Label> predicted;
    std::vector<Label> truth;
};

// Test-then-train over the whole stream; a timeline point is appended every
// report_every elements. No fading factor is applied. Unlabeled elements
// abort with a data error.
RunReport prequential_run(Classifier& classifier, InstanceSource& stream, int report_every = 50,
                          PredictionLog* log = nullptr);

// Mean wall-clock runtime of the empty classifier over reps runs; the zero
// point subtracted from other classifiers' runtimes.
double runtime_baseline(InstanceSource& stream, int reps);

}  // namespace streambench

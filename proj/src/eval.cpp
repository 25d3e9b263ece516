#include "streambench/eval.hpp"

#include <chrono>

#include "streambench/baselines.hpp"

namespace streambench {

std::optional<double> macro_f1(const std::vector<ClassCounts>& counts) {
    double sum = 0.0;
    int encountered_classes = 0;
    for (const ClassCounts& c : counts) {
        if (!c.encountered) continue;
        ++encountered_classes;
        const double tp = static_cast<double>(c.tp);
        const double predicted = tp + static_cast<double>(c.fp);
        const double actual = tp + static_cast<double>(c.fn);
        if (predicted == 0.0 || actual == 0.0) continue;  // F1 term is 0
        const double precision = tp / predicted;
        const double recall = tp / actual;
        if (precision + recall == 0.0) continue;
        sum += 2.0 * precision * recall / (precision + recall);
    }
    if (encountered_classes == 0) return std::nullopt;
    return sum / encountered_classes;
}

ConfusionState::ConfusionState(int num_classes)
    : counts_(static_cast<std::size_t>(num_classes)) {
    if (num_classes < 1) throw ConfigError("ConfusionState needs >= 1 class");
}

void ConfusionState::record(Label predicted, Label truth) {
    const int K = num_classes();
    if (predicted < 0 || predicted >= K || truth < 0 || truth >= K)
        throw DataError("class id outside [0, num_classes)");
    if (predicted == truth) {
        ++counts_[static_cast<std::size_t>(truth)].tp;
    } else {
        ++counts_[static_cast<std::size_t>(predicted)].fp;
        ++counts_[static_cast<std::size_t>(truth)].fn;
    }
    counts_[static_cast<std::size_t>(truth)].encountered = true;
    ++elements_;
}

RunReport prequential_run(Classifier& classifier, InstanceSource& stream, int report_every,
                          PredictionLog* log) {
    if (report_every < 1) throw UsageError("report_every must be >= 1");
    const StreamSpec spec = stream.spec();
    ConfusionState confusion(spec.num_classes);
    RunReport report;

    const auto start = std::chrono::steady_clock::now();
    std::int64_t n = 0;
    while (auto x = stream.next()) {
        if (!x->label) throw DataError("prequential stream element " + std::to_string(n) + " is unlabeled");
        const Label predicted = classifier.predict(*x);
        confusion.record(predicted, *x->label);
        classifier.train(*x);
        if (log) {
            log->predicted.push_back(predicted);
            log->truth.push_back(*x->label);
        }
        ++n;
        if (n % report_every == 0) {
            const std::size_t mem = classifier.memory_bytes();
            report.timeline.push_back({n, confusion.macro_f1().value_or(0.0), mem});
            if (mem > report.peak_memory_bytes) report.peak_memory_bytes = mem;
        }
    }
    const auto end = std::chrono::steady_clock::now();

    report.runtime_seconds = std::chrono::duration<double>(end - start).count();
    report.final_macro_f1 = confusion.macro_f1().value_or(0.0);
    report.elements = n;
    const std::size_t final_mem = classifier.memory_bytes();
    if (final_mem > report.peak_memory_bytes) report.peak_memory_bytes = final_mem;
    return report;
}

double runtime_baseline(InstanceSource& stream, int reps) {
    if (reps < 1) throw UsageError("runtime_baseline needs reps >= 1");
    double total = 0.0;
    for (int r = 0; r < reps; ++r) {
        stream.reset();
        EmptyClassifier empty(stream.spec());
        total += prequential_run(empty, stream).runtime_seconds;
    }
    return total / reps;
}

}  // namespace streambench

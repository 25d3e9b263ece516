#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "streambench/classifier.hpp"
#include "streambench/csv.hpp"
#include "streambench/eval.hpp"
#include "streambench/features.hpp"
#include "streambench/generators.hpp"
#include "streambench/stream.hpp"

namespace streambench {

// Dataset reference: either `synth:<kind>[,key=value...]` or a CSV path.
struct DatasetSpec {
    bool synthetic = false;
    GeneratorSpec generator;
    std::string path;
    std::string id;  // canonical identifier written to the CSV outputs
};

DatasetSpec parse_dataset_spec(const std::string& text);

struct ClassifierSpec {
    std::string name;
    std::map<std::string, std::string> params;
};

// `trees=10,mem_kb=600` style parameter list.
std::map<std::string, std::string> parse_params(const std::string& text);

// Builds a classifier from its CLI identifier. Unknown names or parameters
// raise a usage error.
std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec,
                                            const StreamSpec& stream_spec, std::uint64_t seed);

const std::vector<std::string>& classifier_names();

// Applies the label-shift drift lazily while streaming.
class DriftSource : public InstanceSource {
public:
    DriftSource(std::unique_ptr<InstanceSource> inner, DriftConfig cfg);

    std::optional<Instance> next() override;
    void reset() override;
    StreamSpec spec() const override { return inner_->spec(); }

private:
    std::unique_ptr<InstanceSource> inner_;
    DriftConfig cfg_;
    std::int64_t index_ = 0;
};

struct BenchConfig {
    DatasetSpec dataset;
    ClassifierSpec classifier;
    int repetitions = 1;
    std::uint64_t base_seed = 42;
    std::optional<DriftConfig> drift;  // position -1 resolves to the midpoint
    FeaturePipeline pipeline = FeaturePipeline::none;
    int window_size = 50;
    int bins = 20;
    bool shuffle = false;
    int report_every = 50;
    int max_workers = 0;  // 0: STREAMBENCH_THREADS or hardware concurrency
    std::string timeline_path;  // empty: not written
    std::string summary_path;
};

struct SummaryRow {
    std::string classifier;
    std::string dataset;
    int reps = 0;
    double final_f1_mean = 0.0;
    double final_f1_std = 0.0;
    double runtime_s_mean = 0.0;
    double net_runtime_s_mean = 0.0;
    std::size_t peak_memory_bytes = 0;
};

struct BenchResult {
    std::vector<RunReport> reports;
    double baseline_runtime_s = 0.0;
    SummaryRow summary;
};

// Runs `repetitions` seeded prequential repetitions plus the empty-classifier
// baseline, aggregates, and writes the CSV outputs when paths are set.
BenchResult run_bench(const BenchConfig& config);

// Per-repetition stream, with the shuffle and drift wiring applied. Exposed
// for tests and the acceptance suite.
std::unique_ptr<InstanceSource> make_source(const BenchConfig& config, int repetition);

std::uint64_t classifier_seed(std::uint64_t base_seed, int repetition);
std::uint64_t shuffle_seed(std::uint64_t base_seed, int repetition);

void write_timeline_csv(std::ostream& out, const std::vector<RunReport>& reports);
void write_summary_csv(std::ostream& out, const SummaryRow& row);

struct GridAxis {
    std::string name;
    std::vector<std::string> values;
};

// `budget=0.5:1:2,discount=0.2:0.6` — values are colon-separated.
std::vector<GridAxis> parse_grid(const std::string& text);

struct TuneResult {
    ClassifierSpec best;
    double best_f1 = 0.0;
    std::vector<std::pair<std::string, double>> evaluated;  // canonical params -> f1
};

// Exhaustive grid search maximizing final macro-F1 on the config's dataset;
// ties keep the first point in grid order.
TuneResult tune_grid(const BenchConfig& base, const std::vector<GridAxis>& grid,
                     std::ostream* grid_csv = nullptr);

std::string canonical_params(const std::map<std::string, std::string>& params);

}  // namespace streambench

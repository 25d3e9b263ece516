#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "streambench/bench.hpp"

namespace {

using namespace streambench;

FeaturePipeline parse_pipeline(const std::string& text) {
    if (text == "none") return FeaturePipeline::none;
    if (text == "meanstd") return FeaturePipeline::meanstd;
    if (text == "histogram") return FeaturePipeline::histogram;
    throw UsageError("unknown feature pipeline `" + text + "`");
}

std::optional<DriftConfig> parse_drift(const std::string& text) {
    if (text.empty()) return std::nullopt;
    DriftConfig cfg;
    cfg.position = -1;  // midpoint
    cfg.shift = 1;
    for (const auto& params = parse_params(text); const auto& [key, value] : params) {
        if (key == "position") {
            cfg.position = value == "mid" ? -1 : std::stoll(value);
        } else if (key == "shift") {
            cfg.shift = static_cast<int>(std::stoll(value));
        } else {
            throw UsageError("unknown drift parameter `" + key + "`");
        }
    }
    return cfg;
}

int run_command(const std::string& dataset, const std::string& classifier,
                const std::string& params, int reps, std::uint64_t seed,
                const std::string& drift, const std::string& pipeline, int window, int bins,
                bool shuffle, const std::string& timeline_out, const std::string& summary_out,
                int threads) {
    BenchConfig config;
    config.dataset = parse_dataset_spec(dataset);
    config.classifier = {classifier, parse_params(params)};
    config.repetitions = reps;
    config.base_seed = seed;
    config.drift = parse_drift(drift);
    config.pipeline = parse_pipeline(pipeline);
    config.window_size = window;
    config.bins = bins;
    config.shuffle = shuffle;
    config.max_workers = threads;
    config.timeline_path = timeline_out;
    config.summary_path = summary_out;

    const BenchResult result = run_bench(config);
    std::cout << "classifier=" << config.classifier.name << " dataset=" << config.dataset.id
              << " reps=" << reps << " final_f1_mean=" << result.summary.final_f1_mean
              << " runtime_s_mean=" << result.summary.runtime_s_mean << "\n";
    return 0;
}

int tune_command(const std::string& dataset, const std::string& classifier,
                 const std::string& params, const std::string& grid_text, int reps,
                 std::uint64_t seed, const std::string& pipeline, int window, int bins,
                 const std::string& grid_out, int threads) {
    BenchConfig config;
    config.dataset = parse_dataset_spec(dataset);
    config.classifier = {classifier, parse_params(params)};
    config.repetitions = reps;
    config.base_seed = seed;
    config.pipeline = parse_pipeline(pipeline);
    config.window_size = window;
    config.bins = bins;
    config.max_workers = threads;

    const auto grid = parse_grid(grid_text);
    std::ofstream grid_csv;
    if (!grid_out.empty()) {
        grid_csv.open(grid_out);
        if (!grid_csv) throw UsageError("cannot write " + grid_out);
    }
    const TuneResult result = tune_grid(config, grid, grid_csv.is_open() ? &grid_csv : nullptr);
    std::cout << "best " << canonical_params(result.best.params) << " final_f1="
              << result.best_f1 << "\n";
    return 0;
}

int gen_command(const std::string& dataset, const std::string& out_path) {
    const DatasetSpec spec = parse_dataset_spec(dataset);
    if (!spec.synthetic) throw UsageError("gen needs a synth: dataset spec");
    const auto instances = generate(spec.generator);
    std::ofstream out(out_path);
    if (!out) throw UsageError("cannot write " + out_path);
    write_feature_csv(out, instances, spec.generator.stream_spec().dimensionality);
    std::cout << "wrote " << instances.size() << " instances to " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streambench: memory-constrained stream classification benchmark"};
    app.require_subcommand(1);

    std::string dataset, classifier, params, drift, pipeline = "none";
    std::string timeline_out = "timeline.csv", summary_out = "summary.csv";
    std::string grid_text, grid_out = "grid.csv", gen_out;
    int reps = 1, window = 50, bins = 20, threads = 0;
    std::uint64_t seed = 42;
    bool shuffle = false;

    auto add_common = [&](CLI::App* cmd, bool with_classifier) {
        cmd->add_option("--dataset", dataset, "synth:<kind>[,k=v...] or a CSV path")->required();
        if (with_classifier)
            cmd->add_option("--classifier", classifier, "classifier id")->required();
        cmd->add_option("--params", params, "classifier parameters, k=v comma list");
        cmd->add_option("--seed", seed, "base seed");
        cmd->add_option("--features", pipeline, "none | meanstd | histogram");
        cmd->add_option("--window", window, "window size for raw sample files");
        cmd->add_option("--bins", bins, "histogram bins per axis");
        cmd->add_option("--threads", threads, "worker cap (0: STREAMBENCH_THREADS or cores)");
    };

    CLI::App* run = app.add_subcommand("run", "prequential benchmark of one classifier");
    add_common(run, true);
    run->add_option("--reps", reps, "repetition count");
    run->add_option("--drift", drift, "position=<n|mid>,shift=<k>");
    run->add_flag("--shuffle", shuffle, "shuffle the stream per repetition");
    run->add_option("--timeline-out", timeline_out, "timeline CSV path");
    run->add_option("--summary-out", summary_out, "summary CSV path");

    CLI::App* tune = app.add_subcommand("tune", "grid search over classifier parameters");
    add_common(tune, true);
    tune->add_option("--grid", grid_text, "axis=v1:v2,axis2=...")->required();
    tune->add_option("--reps", reps, "repetitions per grid point");
    tune->add_option("--grid-out", grid_out, "grid results CSV path");

    CLI::App* gen = app.add_subcommand("gen", "materialize a synthetic dataset to CSV");
    gen->add_option("--dataset", dataset, "synth:<kind>[,k=v...]")->required();
    gen->add_option("--out", gen_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return run_command(dataset, classifier, params, reps, seed, drift, pipeline, window,
                               bins, shuffle, timeline_out, summary_out, threads);
        if (tune->parsed())
            return tune_command(dataset, classifier, params, grid_text, reps, seed, pipeline,
                                window, bins, grid_out, threads);
        if (gen->parsed()) return gen_command(dataset, gen_out);
    } catch (const streambench::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const streambench::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const streambench::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

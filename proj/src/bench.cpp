#include "streambench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "streambench/baselines.hpp"
#include "streambench/fnn.hpp"
#include "streambench/hoeffding_tree.hpp"
#include "streambench/mcnn.hpp"
#include "streambench/mondrian.hpp"
#include "streambench/naive_bayes.hpp"

namespace streambench {

namespace {

constexpr std::uint64_t kClassifierStream = 0xC1A55;
constexpr std::uint64_t kShuffleStream = 0x5AFF1E;
constexpr std::uint64_t kSplitStream = 0x5713;

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("parameter " + key + ": `" + value + "` is not a number");
    }
}

std::int64_t to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw UsageError("parameter " + key + ": `" + value + "` is not an integer");
    }
}

// Pulls typed values out of a parameter map and rejects unknown keys.
class ParamReader {
public:
    explicit ParamReader(const std::map<std::string, std::string>& params) : params_(params) {}

    double real(const std::string& key, double fallback) {
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        used_.push_back(key);
        return to_double(key, it->second);
    }
    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        used_.push_back(key);
        return to_int(key, it->second);
    }
    std::string text(const std::string& key, const std::string& fallback) {
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        used_.push_back(key);
        return it->second;
    }
    void finish(const std::string& classifier) const {
        for (const auto& [key, value] : params_) {
            (void)value;
            if (std::find(used_.begin(), used_.end(), key) == used_.end())
                throw UsageError("unknown parameter `" + key + "` for classifier " + classifier);
        }
    }

private:
    const std::map<std::string, std::string>& params_;
    std::vector<std::string> used_;
};

int resolve_workers(int requested, int reps) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("STREAMBENCH_THREADS")) n = std::atoi(env);
        if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
    }
    return std::max(1, std::min(n, reps));
}

void format_f1(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out += buf;
}

// Dataset ids may contain commas; quote them per RFC 4180.
std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char ch : value) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::uint64_t classifier_seed(std::uint64_t base_seed, int repetition) {
    return mix_seed(mix_seed(base_seed, kClassifierStream), static_cast<std::uint64_t>(repetition));
}

std::uint64_t shuffle_seed(std::uint64_t base_seed, int repetition) {
    return mix_seed(mix_seed(base_seed, kShuffleStream), static_cast<std::uint64_t>(repetition));
}

std::map<std::string, std::string> parse_params(const std::string& text) {
    std::map<std::string, std::string> out;
    if (text.empty()) return out;
    for (const std::string& pair : split_on(text, ',')) {
        if (pair.empty()) continue;
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("malformed parameter `" + pair + "` (expected key=value)");
        out[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    return out;
}

std::string canonical_params(const std::map<std::string, std::string>& params) {
    std::string out;
    for (const auto& [key, value] : params) {
        if (!out.empty()) out += ';';
        out += key + "=" + value;
    }
    return out;
}

DatasetSpec parse_dataset_spec(const std::string& text) {
    DatasetSpec spec;
    if (text.rfind("synth:", 0) != 0) {
        if (text.empty()) throw UsageError("empty dataset spec");
        spec.synthetic = false;
        spec.path = text;
        spec.id = text;
        return spec;
    }
    spec.synthetic = true;
    const std::string body = text.substr(6);
    const auto parts = split_on(body, ',');
    if (parts.empty() || parts[0].empty()) throw UsageError("missing generator kind in " + text);
    const std::string& kind = parts[0];
    if (kind == "hyperplane") spec.generator.kind = GeneratorKind::hyperplane;
    else if (kind == "randomrbf") spec.generator.kind = GeneratorKind::randomrbf;
    else if (kind == "randomtree") spec.generator.kind = GeneratorKind::randomtree;
    else throw UsageError("unknown synthetic dataset `" + kind + "`");

    for (std::size_t i = 1; i < parts.size(); ++i) {
        const std::size_t eq = parts[i].find('=');
        if (eq == std::string::npos)
            throw UsageError("malformed dataset parameter `" + parts[i] + "`");
        const std::string key = parts[i].substr(0, eq);
        const std::string value = parts[i].substr(eq + 1);
        GeneratorSpec& g = spec.generator;
        if (key == "seed") g.seed = static_cast<std::uint64_t>(to_int(key, value));
        else if (key == "n") g.length = to_int(key, value);
        else if (key == "dim") g.dimensionality = static_cast<int>(to_int(key, value));
        else if (key == "classes") g.num_classes = static_cast<int>(to_int(key, value));
        else if (key == "noise") g.noise = to_double(key, value);
        else if (key == "threshold") g.threshold = to_double(key, value);
        else if (key == "centroids") g.centroid_count = static_cast<int>(to_int(key, value));
        else if (key == "class_weight") g.class_weight = to_double(key, value);
        else if (key == "spread") g.spread = to_double(key, value);
        else if (key == "depth") g.tree_depth = static_cast<int>(to_int(key, value));
        else throw UsageError("unknown dataset parameter `" + key + "`");
    }
    spec.id = text;
    return spec;
}

const std::vector<std::string>& classifier_names() {
    static const std::vector<std::string> names = {
        "empty", "nb", "ht", "mf", "mcnn-origin", "mcnn-orpaillecc", "fnn", "knn-offline"};
    return names;
}

std::unique_ptr<Classifier> make_classifier(const ClassifierSpec& spec,
                                            const StreamSpec& stream_spec, std::uint64_t seed) {
    ParamReader reader(spec.params);
    std::unique_ptr<Classifier> out;
    if (spec.name == "empty") {
        out = std::make_unique<EmptyClassifier>(stream_spec);
    } else if (spec.name == "nb") {
        out = std::make_unique<GaussianNaiveBayes>(stream_spec);
    } else if (spec.name == "ht") {
        HoeffdingTreeParams p;
        p.delta = reader.real("delta", p.delta);
        p.grace_period = static_cast<int>(reader.integer("grace", p.grace_period));
        p.tie_epsilon = reader.real("tie_epsilon", p.tie_epsilon);
        out = std::make_unique<HoeffdingTree>(stream_spec, p);
    } else if (spec.name == "mf") {
        MondrianParams p;
        p.tree_count = static_cast<int>(reader.integer("trees", p.tree_count));
        p.base_count = reader.real("base", p.base_count);
        p.discount_factor = reader.real("discount", p.discount_factor);
        p.budget = reader.real("budget", p.budget);
        p.memory_bytes = static_cast<std::size_t>(
            reader.integer("mem_kb", static_cast<std::int64_t>(p.memory_bytes / 1024)) * 1024);
        const std::int64_t fixed_seed = reader.integer("seed", -1);
        out = std::make_unique<MondrianForest>(
            stream_spec, p, fixed_seed >= 0 ? static_cast<std::uint64_t>(fixed_seed) : seed);
    } else if (spec.name == "mcnn-origin" || spec.name == "mcnn-orpaillecc") {
        McnnParams p;
        p.variant = spec.name == "mcnn-origin" ? McnnVariant::origin : McnnVariant::orpaillecc;
        p.error_threshold = static_cast<int>(reader.integer("error_threshold", p.error_threshold));
        p.participation_threshold =
            static_cast<int>(reader.integer("participation_threshold", p.participation_threshold));
        p.max_clusters = static_cast<int>(reader.integer("max_clusters", p.max_clusters));
        out = std::make_unique<McnnClassifier>(stream_spec, p);
    } else if (spec.name == "fnn") {
        FnnParams p;
        const std::string hidden = reader.text("hidden", "30");
        p.hidden.clear();
        for (const std::string& h : split_on(hidden, ':'))
            p.hidden.push_back(static_cast<int>(to_int("hidden", h)));
        p.learning_rate = reader.real("lr", p.learning_rate);
        reader.text("pretrain", "");  // consumed by the harness
        out = std::make_unique<FeedforwardNetwork>(stream_spec, p, seed);
    } else if (spec.name == "knn-offline") {
        reader.integer("kmin", 2);  // consumed by the harness
        reader.integer("kmax", 20);
        throw UsageError("knn-offline is handled by the harness, not make_classifier");
    } else {
        throw UsageError("unknown classifier `" + spec.name + "`");
    }
    reader.finish(spec.name);
    return out;
}

DriftSource::DriftSource(std::unique_ptr<InstanceSource> inner, DriftConfig cfg)
    : inner_(std::move(inner)), cfg_(cfg) {
    const StreamSpec s = inner_->spec();
    if (cfg_.position < 0) cfg_.position = s.length / 2;  // midpoint default
    if (cfg_.shift % s.num_classes == 0)
        throw UsageError("drift shift is a multiple of num_classes (no-op drift)");
    if (cfg_.position <= 0 || (s.length > 0 && cfg_.position >= s.length))
        throw UsageError("drift position must lie strictly inside the stream");
}

std::optional<Instance> DriftSource::next() {
    auto x = inner_->next();
    if (!x) return x;
    if (index_++ >= cfg_.position && x->label)
        x->label = drift_label(*x->label, cfg_.shift, inner_->spec().num_classes);
    return x;
}

void DriftSource::reset() {
    inner_->reset();
    index_ = 0;
}

namespace {

std::unique_ptr<InstanceSource> make_base_source(const BenchConfig& config,
                                                 const CsvInfo* info) {
    if (config.dataset.synthetic) return make_generator(config.dataset.generator);
    if (config.pipeline == FeaturePipeline::none)
        return std::make_unique<FeatureCsvSource>(config.dataset.path, *info);
    return std::make_unique<WindowedCsvSource>(config.dataset.path, *info, config.pipeline,
                                               config.window_size, config.bins);
}

std::unique_ptr<InstanceSource> make_rep_source(const BenchConfig& config, const CsvInfo* info,
                                                int repetition) {
    std::unique_ptr<InstanceSource> source = make_base_source(config, info);
    if (config.shuffle) {
        const StreamSpec s = source->spec();
        auto data = materialize(*source);
        source = std::make_unique<VectorSource>(
            shuffle_stream(std::move(data), shuffle_seed(config.base_seed, repetition)), s);
    }
    if (config.drift) source = std::make_unique<DriftSource>(std::move(source), *config.drift);
    return source;
}

struct PretrainRequest {
    std::string path;
    int epochs = 0;
    double fraction = 0.1;
};

std::optional<PretrainRequest> pretrain_request(const ClassifierSpec& spec) {
    const auto it = spec.params.find("pretrain");
    if (it == spec.params.end() || it->second.empty()) return std::nullopt;
    const auto parts = split_on(it->second, ':');
    if (parts.size() != 3)
        throw UsageError("pretrain expects <path>:<epochs>:<fraction>");
    PretrainRequest req;
    req.path = parts[0];
    req.epochs = static_cast<int>(to_int("pretrain epochs", parts[1]));
    req.fraction = to_double("pretrain fraction", parts[2]);
    if (req.epochs < 0 || req.fraction <= 0.0 || req.fraction > 1.0)
        throw UsageError("pretrain fraction must be in (0,1] and epochs >= 0");
    return req;
}

RunReport run_knn_offline(const BenchConfig& config, const CsvInfo* info, int repetition) {
    ParamReader reader(config.classifier.params);
    const int k_min = static_cast<int>(reader.integer("kmin", 2));
    const int k_max = static_cast<int>(reader.integer("kmax", 20));
    reader.finish(config.classifier.name);

    auto source = make_rep_source(config, info, repetition);
    const StreamSpec spec = source->spec();
    const auto t0 = std::chrono::steady_clock::now();
    auto all = materialize(*source);
    if (all.size() < 20) throw UsageError("knn-offline needs at least 20 elements");

    // uniform random 10% train / 90% evaluation split per repetition seed
    auto permuted = shuffle_stream(std::move(all),
                                   mix_seed(shuffle_seed(config.base_seed, repetition), kSplitStream));
    const std::size_t n_train = std::max<std::size_t>(
        static_cast<std::size_t>(k_min) + 1, permuted.size() / 10);
    std::vector<Instance> train(permuted.begin(), permuted.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<Instance> eval(permuted.begin() + static_cast<std::ptrdiff_t>(n_train), permuted.end());

    // grid-search validation split: last 20% of the training split
    const std::size_t n_fit = std::max<std::size_t>(1, train.size() - train.size() / 5);
    std::vector<Instance> fit(train.begin(), train.begin() + static_cast<std::ptrdiff_t>(n_fit));
    std::vector<Instance> val(train.begin() + static_cast<std::ptrdiff_t>(n_fit), train.end());
    KnnModel searched = knn_fit_gridsearch(std::move(fit), val, spec, k_min, k_max);

    // final model keeps the whole training split with the selected k
    KnnModel model{std::move(train), searched.k, spec};

    ConfusionState confusion(spec.num_classes);
    RunReport report;
    std::int64_t n = 0;
    for (const Instance& x : eval) {
        confusion.record(knn_predict(model, x), *x.label);
        ++n;
        if (n % config.report_every == 0)
            report.timeline.push_back({n, confusion.macro_f1().value_or(0.0), model.memory_bytes()});
    }
    const auto t1 = std::chrono::steady_clock::now();
    report.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
    report.final_macro_f1 = confusion.macro_f1().value_or(0.0);
    report.elements = n;
    report.peak_memory_bytes = model.memory_bytes();
    return report;
}

}  // namespace

std::unique_ptr<InstanceSource> make_source(const BenchConfig& config, int repetition) {
    if (config.dataset.synthetic) return make_rep_source(config, nullptr, repetition);
    const CsvInfo info = prescan_csv(config.dataset.path);
    return make_rep_source(config, &info, repetition);
}

BenchResult run_bench(const BenchConfig& config) {
    if (config.repetitions < 1) throw UsageError("repetitions must be >= 1");
    if (std::find(classifier_names().begin(), classifier_names().end(), config.classifier.name) ==
        classifier_names().end())
        throw UsageError("unknown classifier `" + config.classifier.name + "`");

    std::optional<CsvInfo> info;
    if (!config.dataset.synthetic) info = prescan_csv(config.dataset.path);
    const CsvInfo* info_ptr = info ? &*info : nullptr;

    // validate construction (classifier id, params, stream shape) before
    // spawning workers so usage errors surface immediately
    {
        const StreamSpec s = make_rep_source(config, info_ptr, 0)->spec();
        if (config.classifier.name != "knn-offline")
            (void)make_classifier(config.classifier, s, classifier_seed(config.base_seed, 0));
    }

    std::optional<PretrainRequest> pretrain;
    std::vector<Instance> pretrain_pool;
    if (config.classifier.name == "fnn") {
        pretrain = pretrain_request(config.classifier);
        if (pretrain) {
            const CsvInfo pre_info = prescan_csv(pretrain->path);
            FeatureCsvSource pre_source(pretrain->path, pre_info);
            pretrain_pool = materialize(pre_source);
        }
    }

    const int reps = config.repetitions;
    std::vector<RunReport> reports(static_cast<std::size_t>(reps));
    std::vector<double> baseline_times(static_cast<std::size_t>(reps));
    const int workers = resolve_workers(config.max_workers, reps);

    std::atomic<int> next_rep{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker_fn = [&]() {
        while (true) {
            const int r = next_rep.fetch_add(1);
            if (r >= reps || failed.load()) break;
            try {
                auto source = make_rep_source(config, info_ptr, r);
                const StreamSpec spec = source->spec();
                RunReport report;
                if (config.classifier.name == "knn-offline") {
                    report = run_knn_offline(config, info_ptr, r);
                } else {
                    auto clf = make_classifier(config.classifier, spec,
                                               classifier_seed(config.base_seed, r));
                    if (pretrain) {
                        auto* fnn = dynamic_cast<FeedforwardNetwork*>(clf.get());
                        const std::uint64_t pre_seed =
                            mix_seed(classifier_seed(config.base_seed, r), 0xF17);
                        auto sample = shuffle_stream(pretrain_pool, pre_seed);
                        sample.resize(std::max<std::size_t>(
                            1, static_cast<std::size_t>(static_cast<double>(sample.size()) *
                                                        pretrain->fraction)));
                        fnn->pretrain(sample, pretrain->epochs, mix_seed(pre_seed, 1));
                    }
                    report = prequential_run(*clf, *source, config.report_every);
                }
                report.classifier = config.classifier.name;
                report.dataset = config.dataset.id;
                report.seed = config.base_seed + static_cast<std::uint64_t>(r);
                reports[static_cast<std::size_t>(r)] = std::move(report);

                // empty-classifier baseline over the same stream
                auto baseline_source = make_rep_source(config, info_ptr, r);
                EmptyClassifier empty(baseline_source->spec());
                baseline_times[static_cast<std::size_t>(r)] =
                    prequential_run(empty, *baseline_source, config.report_every).runtime_seconds;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                if (failure.empty()) failure = e.what();
            }
        }
    };

    if (workers == 1) {
        worker_fn();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
        for (std::thread& t : pool) t.join();
    }
    if (failed.load()) throw DataError(failure);

    BenchResult result;
    result.reports = std::move(reports);
    double baseline_sum = 0.0;
    for (double b : baseline_times) baseline_sum += b;
    result.baseline_runtime_s = baseline_sum / reps;

    SummaryRow& row = result.summary;
    row.classifier = config.classifier.name;
    row.dataset = config.dataset.id;
    row.reps = reps;
    double f1_sum = 0.0, runtime_sum = 0.0;
    for (RunReport& r : result.reports) {
        r.net_runtime_seconds = r.runtime_seconds - result.baseline_runtime_s;
        f1_sum += r.final_macro_f1;
        runtime_sum += r.runtime_seconds;
        row.peak_memory_bytes = std::max(row.peak_memory_bytes, r.peak_memory_bytes);
    }
    row.final_f1_mean = f1_sum / reps;
    double var = 0.0;
    for (const RunReport& r : result.reports) {
        const double d = r.final_macro_f1 - row.final_f1_mean;
        var += d * d;
    }
    row.final_f1_std = std::sqrt(var / reps);
    row.runtime_s_mean = runtime_sum / reps;
    row.net_runtime_s_mean = row.runtime_s_mean - result.baseline_runtime_s;

    if (!config.timeline_path.empty()) {
        std::ofstream out(config.timeline_path);
        if (!out) throw UsageError("cannot write " + config.timeline_path);
        write_timeline_csv(out, result.reports);
    }
    if (!config.summary_path.empty()) {
        std::ofstream out(config.summary_path);
        if (!out) throw UsageError("cannot write " + config.summary_path);
        write_summary_csv(out, row);
    }
    return result;
}

void write_timeline_csv(std::ostream& out, const std::vector<RunReport>& reports) {
    out << "classifier,dataset,seed,elements,macro_f1,memory_bytes\n";
    std::string line;
    for (const RunReport& r : reports) {
        const std::string dataset = csv_field(r.dataset);
        for (const TimelinePoint& p : r.timeline) {
            line.clear();
            line += r.classifier;
            line += ',';
            line += dataset;
            line += ',';
            line += std::to_string(r.seed);
            line += ',';
            line += std::to_string(p.elements);
            line += ',';
            format_f1(line, p.macro_f1);
            line += ',';
            line += std::to_string(p.memory_bytes);
            line += '\n';
            out << line;
        }
    }
}

void write_summary_csv(std::ostream& out, const SummaryRow& row) {
    out << "classifier,dataset,reps,final_f1_mean,final_f1_std,runtime_s_mean,"
           "net_runtime_s_mean,peak_memory_bytes\n";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f", row.final_f1_mean, row.final_f1_std,
                  row.runtime_s_mean, row.net_runtime_s_mean);
    out << row.classifier << ',' << csv_field(row.dataset) << ',' << row.reps << ',' << buf
        << ',' << row.peak_memory_bytes << '\n';
}

std::vector<GridAxis> parse_grid(const std::string& text) {
    std::vector<GridAxis> grid;
    for (const std::string& part : split_on(text, ',')) {
        if (part.empty()) continue;
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("malformed grid axis `" + part + "`");
        GridAxis axis;
        axis.name = part.substr(0, eq);
        axis.values = split_on(part.substr(eq + 1), ':');
        if (axis.values.empty() || axis.values[0].empty())
            throw UsageError("grid axis `" + axis.name + "` has no values");
        grid.push_back(std::move(axis));
    }
    if (grid.empty()) throw UsageError("empty parameter grid");
    return grid;
}

TuneResult tune_grid(const BenchConfig& base, const std::vector<GridAxis>& grid,
                     std::ostream* grid_csv) {
    if (grid.empty()) throw UsageError("empty parameter grid");
    std::size_t points = 1;
    for (const GridAxis& axis : grid) points *= axis.values.size();

    TuneResult result;
    result.best_f1 = -1.0;
    if (grid_csv) *grid_csv << "classifier,dataset,params,final_macro_f1\n";

    std::vector<std::size_t> index(grid.size(), 0);
    for (std::size_t p = 0; p < points; ++p) {
        BenchConfig config = base;
        config.timeline_path.clear();
        config.summary_path.clear();
        for (std::size_t a = 0; a < grid.size(); ++a)
            config.classifier.params[grid[a].name] = grid[a].values[index[a]];

        const BenchResult bench = run_bench(config);
        const double f1 = bench.summary.final_f1_mean;
        const std::string params = canonical_params(config.classifier.params);
        result.evaluated.emplace_back(params, f1);
        if (grid_csv) {
            std::string line = config.classifier.name + "," + config.dataset.id + "," + params + ",";
            format_f1(line, f1);
            *grid_csv << line << '\n';
        }
        if (f1 > result.best_f1) {
            result.best_f1 = f1;
            result.best = config.classifier;
        }

        // advance the mixed-radix counter; the last axis varies fastest so
        // the first declared axis is the slowest
        for (std::size_t a = grid.size(); a-- > 0;) {
            if (++index[a] < grid[a].values.size()) break;
            index[a] = 0;
        }
    }
    return result;
}

}  // namespace streambench

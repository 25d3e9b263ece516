#include "streambench/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>

namespace streambench {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
}

// Returns the column count and whether the header uses the raw `a*` style.
std::pair<int, bool> parse_header(const std::string& line, const std::string& path) {
    const auto fields = split(line, ',');
    if (fields.size() < 2 || fields.back() != "label")
        throw DataError(path + ":1: header must be `f0,...,label` or `a0,...,label`");
    const char prefix = fields[0].empty() ? '\0' : fields[0][0];
    if (prefix != 'f' && prefix != 'a')
        throw DataError(path + ":1: unknown column prefix `" + fields[0] + "`");
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
        const std::string expected = std::string(1, prefix) + std::to_string(i);
        if (fields[i] != expected)
            throw DataError(path + ":1: expected column `" + expected + "`, found `" +
                            fields[i] + "`");
    }
    return {static_cast<int>(fields.size()) - 1, prefix == 'a'};
}

}  // namespace

Label LabelMap::to_dense(Label raw) const {
    const auto it = std::lower_bound(dense_to_raw.begin(), dense_to_raw.end(), raw);
    if (it == dense_to_raw.end() || *it != raw)
        throw DataError("label " + std::to_string(raw) + " not present in the prescan");
    return static_cast<Label>(it - dense_to_raw.begin());
}

bool LabelMap::identity() const {
    for (std::size_t i = 0; i < dense_to_raw.size(); ++i)
        if (dense_to_raw[i] != static_cast<Label>(i)) return false;
    return true;
}

void parse_csv_row(const std::string& line, const std::string& path, std::int64_t line_no,
                   int columns, std::vector<double>& values, Label& label) {
    values.clear();
    const char* p = line.c_str();
    for (int c = 0; c < columns; ++c) {
        char* end = nullptr;
        const double v = std::strtod(p, &end);
        if (end == p || *end != ',')
            throw DataError(path + ":" + std::to_string(line_no) + ": malformed value in column " +
                            std::to_string(c));
        values.push_back(v);
        p = end + 1;
    }
    char* end = nullptr;
    const long l = std::strtol(p, &end, 10);
    if (end == p || *end != '\0')
        throw DataError(path + ":" + std::to_string(line_no) + ": malformed label");
    label = static_cast<Label>(l);
}

CsvInfo prescan_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open dataset file " + path);
    CsvInfo info;
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ":1: empty file");
    strip_cr(line);
    const auto [columns, raw] = parse_header(line, path);
    info.columns = columns;
    info.raw = raw;

    // pass 1: count rows, collect labels
    std::set<Label> labels;
    std::vector<double> values;
    Label label = 0;
    std::int64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        parse_csv_row(line, path, line_no, columns, values, label);
        labels.insert(label);
        ++info.rows;
    }
    if (info.rows == 0) throw DataError(path + ": no data rows");
    info.labels.dense_to_raw.assign(labels.begin(), labels.end());

    if (info.raw) {
        // pass 2: per-axis min/max over the first 10% of the rows
        const std::int64_t head = std::max<std::int64_t>(1, info.rows / 10);
        info.head_lo.assign(static_cast<std::size_t>(columns),
                            std::numeric_limits<double>::infinity());
        info.head_hi.assign(static_cast<std::size_t>(columns),
                            -std::numeric_limits<double>::infinity());
        std::ifstream again(path);
        std::getline(again, line);
        std::int64_t seen = 0;
        line_no = 1;
        while (seen < head && std::getline(again, line)) {
            ++line_no;
            strip_cr(line);
            if (line.empty()) continue;
            parse_csv_row(line, path, line_no, columns, values, label);
            for (int a = 0; a < columns; ++a) {
                info.head_lo[static_cast<std::size_t>(a)] =
                    std::min(info.head_lo[static_cast<std::size_t>(a)], values[static_cast<std::size_t>(a)]);
                info.head_hi[static_cast<std::size_t>(a)] =
                    std::max(info.head_hi[static_cast<std::size_t>(a)], values[static_cast<std::size_t>(a)]);
            }
            ++seen;
        }
        for (int a = 0; a < columns; ++a) {
            // degenerate constant axis: widen so lo < hi holds
            if (!(info.head_lo[static_cast<std::size_t>(a)] < info.head_hi[static_cast<std::size_t>(a)]))
                info.head_hi[static_cast<std::size_t>(a)] = info.head_lo[static_cast<std::size_t>(a)] + 1.0;
        }
    }
    return info;
}

FeatureCsvSource::FeatureCsvSource(std::string path, const CsvInfo& info)
    : path_(std::move(path)), info_(info) {
    if (info_.raw)
        throw UsageError(path_ + " has raw sample columns; select a feature pipeline");
    reset();
}

void FeatureCsvSource::reset() {
    in_ = std::ifstream(path_);
    if (!in_) throw UsageError("cannot open dataset file " + path_);
    std::getline(in_, line_);
    line_no_ = 1;
}

std::optional<Instance> FeatureCsvSource::next() {
    while (std::getline(in_, line_)) {
        ++line_no_;
        strip_cr(line_);
        if (line_.empty()) continue;
        Instance x;
        Label raw = 0;
        parse_csv_row(line_, path_, line_no_, info_.columns, x.features, raw);
        x.label = info_.labels.to_dense(raw);
        return x;
    }
    return std::nullopt;
}

StreamSpec FeatureCsvSource::spec() const {
    StreamSpec s;
    s.dimensionality = info_.columns;
    s.num_classes = info_.labels.num_classes();
    s.length = info_.rows;
    return s;
}

std::size_t FeatureCsvSource::overhead_bytes() const {
    return line_.capacity() + static_cast<std::size_t>(info_.columns) * kRealBytes;
}

WindowedCsvSource::WindowedCsvSource(std::string path, const CsvInfo& info,
                                     FeaturePipeline pipeline, int window_size, int bins)
    : path_(std::move(path)), info_(info), pipeline_(pipeline), window_size_(window_size), bins_(bins) {
    if (!info_.raw)
        throw UsageError(path_ + " has feature columns; drop the feature pipeline");
    if (pipeline == FeaturePipeline::none)
        throw UsageError("raw sample files need a feature pipeline (meanstd or histogram)");
    if (window_size_ < 1) throw UsageError("window size must be >= 1");
    window_.axes = info_.columns;
    reset();
}

void WindowedCsvSource::reset() {
    in_ = std::ifstream(path_);
    if (!in_) throw UsageError("cannot open dataset file " + path_);
    std::getline(in_, line_);
    line_no_ = 1;
}

std::optional<Instance> WindowedCsvSource::next() {
    window_.samples.clear();
    window_.labels.clear();
    std::vector<double> values;
    Label raw = 0;
    while (static_cast<int>(window_.labels.size()) < window_size_) {
        if (!std::getline(in_, line_)) return std::nullopt;  // trailing partial window dropped
        ++line_no_;
        strip_cr(line_);
        if (line_.empty()) continue;
        parse_csv_row(line_, path_, line_no_, info_.columns, values, raw);
        window_.samples.insert(window_.samples.end(), values.begin(), values.end());
        window_.labels.push_back(info_.labels.to_dense(raw));
    }
    Instance x = pipeline_ == FeaturePipeline::meanstd
                     ? meanstd_features(window_)
                     : histogram_features(window_, bins_, info_.head_lo, info_.head_hi);
    x.label = majority_label(window_);
    return x;
}

StreamSpec WindowedCsvSource::spec() const {
    StreamSpec s;
    s.dimensionality = pipeline_ == FeaturePipeline::meanstd ? 2 * info_.columns
                                                             : bins_ * info_.columns;
    s.num_classes = info_.labels.num_classes();
    s.length = info_.rows / window_size_;
    return s;
}

std::size_t WindowedCsvSource::overhead_bytes() const {
    return line_.capacity() +
           static_cast<std::size_t>(window_size_) * info_.columns * kRealBytes +
           static_cast<std::size_t>(window_size_) * kCounterBytes;
}

void write_feature_csv(std::ostream& out, const std::vector<Instance>& instances,
                       int dimensionality) {
    for (int f = 0; f < dimensionality; ++f) out << 'f' << f << ',';
    out << "label\n";
    char buf[64];
    for (const Instance& x : instances) {
        if (static_cast<int>(x.features.size()) != dimensionality)
            throw UsageError("instance dimensionality mismatch while writing CSV");
        if (!x.label) throw UsageError("cannot write an unlabeled instance");
        for (double v : x.features) {
            std::snprintf(buf, sizeof buf, "%.17g,", v);
            out << buf;
        }
        out << *x.label << '\n';
    }
}

}  // namespace streambench

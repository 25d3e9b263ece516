#pragma once

#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "streambench/features.hpp"
#include "streambench/stream.hpp"
#include "streambench/types.hpp"

namespace streambench {

// Dense remapping of the (possibly sparse) raw labels found in a file.
struct LabelMap {
    std::vector<Label> dense_to_raw;  // sorted ascending

    int num_classes() const { return static_cast<int>(dense_to_raw.size()); }
    Label to_dense(Label raw) const;
    bool identity() const;
};

enum class FeaturePipeline { none, meanstd, histogram };

// Feature CSV: header `f0,...,f{D-1},label`, one instance per row.
// Raw sample CSV: header `a0,...,a{A-1},label`, one sensor sample per row.
struct CsvInfo {
    int columns = 0;  // feature or axis count
    std::int64_t rows = 0;
    bool raw = false;  // axis-style header
    LabelMap labels;
    // per-axis min/max over the first 10% of the rows (raw files only),
    // used as frozen histogram ranges
    std::vector<double> head_lo, head_hi;
};

CsvInfo prescan_csv(const std::string& path);

// Streams a feature CSV row by row; memory stays O(1) in the file length.
class FeatureCsvSource : public InstanceSource {
public:
    FeatureCsvSource(std::string path, const CsvInfo& info);

    std::optional<Instance> next() override;
    void reset() override;
    StreamSpec spec() const override;

    // Self-accounted loader overhead (row + line buffers).
    std::size_t overhead_bytes() const;

private:
    std::string path_;
    CsvInfo info_;
    std::ifstream in_;
    std::string line_;
    std::int64_t line_no_ = 0;
};

// Streams a raw sample CSV through the windowing + feature + majority-label
// pipeline. Holds one window of samples; a trailing partial window is
// dropped.
class WindowedCsvSource : public InstanceSource {
public:
    WindowedCsvSource(std::string path, const CsvInfo& info, FeaturePipeline pipeline,
                      int window_size, int bins);

    std::optional<Instance> next() override;
    void reset() override;
    StreamSpec spec() const override;

    std::size_t overhead_bytes() const;

private:
    std::string path_;
    CsvInfo info_;
    FeaturePipeline pipeline_;
    int window_size_;
    int bins_;
    std::ifstream in_;
    std::string line_;
    std::int64_t line_no_ = 0;
    SampleWindow window_;
};

// Parses one data row (shared by the sources; line_no is 1-based and the
// header is line 1).
void parse_csv_row(const std::string& line, const std::string& path, std::int64_t line_no,
                   int columns, std::vector<double>& values, Label& label);

void write_feature_csv(std::ostream& out, const std::vector<Instance>& instances,
                       int dimensionality);

}  // namespace streambench

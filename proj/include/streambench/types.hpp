#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace streambench {

using Label = std::int32_t;

// Raised when a component is wired up inconsistently (wrong dimensionality,
// invalid hyperparameter, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when an operation is called against its contract (unlabeled train
// instance, unknown classifier id, empty grid, ...).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised on malformed input data (bad CSV row, unlabeled stream element).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// One stream element: a feature vector plus an optional class label.
struct Instance {
    std::vector<double> features;
    std::optional<Label> label;

    Instance() = default;
    Instance(std::vector<double> f, std::optional<Label> l = std::nullopt)
        : features(std::move(f)), label(l) {}
};

struct StreamSpec {
    int dimensionality = 0;
    int num_classes = 0;
    std::int64_t length = 0;

    void validate() const {
        if (dimensionality < 1)
            throw ConfigError("stream dimensionality must be >= 1");
        if (num_classes < 2)
            throw ConfigError("stream must have >= 2 classes");
    }
};

// Self-accounting sizes used by every memory_bytes() implementation.
inline constexpr std::size_t kRealBytes = 8;
inline constexpr std::size_t kCounterBytes = 4;

}  // namespace streambench

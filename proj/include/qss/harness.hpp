#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qss/protocol/config.hpp"
#include "qss/protocol/report.hpp"

namespace qss {

inline constexpr std::string_view kToolName = "qss-sim";
inline constexpr std::string_view kToolVersion = "0.1.0";

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { JsonLines, Table };

struct BatchSpec {
    ScenarioConfig scenario;
    std::size_t trials = 1;
    std::uint64_t seed_base = 0;
    std::string out_path;  // empty: standard output
    OutputFormat format = OutputFormat::JsonLines;
    unsigned threads = 1;
};

/// Flat "key = value" settings; section headers are allowed but keys must be
/// unique across sections.
using Settings = std::map<std::string, std::string>;

/// Every accepted key, in the order the CLI lists its flags.
const std::vector<std::string>& setting_keys();

Settings read_settings_file(const std::string& path);
ScenarioConfig scenario_from(const Settings& settings);
BatchSpec batch_spec_from(const Settings& settings);

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    bool detected = false;
    std::vector<CheckReport> checks;
    std::size_t message_length = 0;
    std::map<std::string, bool> recovered_exact;
    std::optional<bool> eavesdropper_exact;
    /// counts[dealer symbol][eavesdropper symbol] over message positions.
    std::array<std::array<std::size_t, 4>, 4> symbol_counts{};
};

TrialRecord summarize_trial(std::size_t trial, const RunReport& report);

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

/// 95% normal-approximation interval with continuity correction, clipped to [0, 1].
Interval binomial_interval(std::size_t successes, std::size_t n);

/// Plug-in mutual information (bits) of a joint count table.
double mutual_information(const std::array<std::array<std::size_t, 4>, 4>& counts);

struct CheckAggregate {
    std::string check_id;
    std::size_t trials = 0;
    std::size_t aborts = 0;
    std::size_t samples = 0;
    std::size_t mismatches = 0;
    double error_rate = 0.0;  // pooled mismatches / samples
    Interval interval;
};

struct AggregateStats {
    std::size_t trials = 0;
    std::vector<CheckAggregate> checks;  // first-appearance order
    double detection_frequency = 0.0;
    Interval detection_interval;
    std::map<std::string, double> recovery_frequency;
    double eavesdropper_exact_frequency = 0.0;
    std::optional<double> mutual_information_bits;
    double wall_seconds = 0.0;
};

AggregateStats aggregate(const std::vector<TrialRecord>& trials, const std::string& receiver);

struct BatchResult {
    BatchSpec spec;
    std::vector<TrialRecord> trials;
    AggregateStats stats;
};

/// Runs spec.trials independent trials (trial t uses master seed
/// seed_base + t), on spec.threads workers. The result does not depend on
/// the thread count. Throws ConfigError before any trial runs if the scenario
/// is infeasible.
BatchResult run_batch(const BatchSpec& spec);

void emit_report(const BatchResult& result, OutputFormat format, std::ostream& out);

/// Writes to spec.out_path (or standard output). Throws IoError.
void write_report(const BatchResult& result);

}  // namespace qss

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsdbench/baselines.hpp"
#include "gsdbench/core.hpp"
#include "gsdbench/gsd.hpp"
#include "gsdbench/permtest.hpp"
#include "gsdbench/robust.hpp"
#include "gsdbench/synth.hpp"

namespace gsdbench {

inline constexpr const char* kToolVersion = "gsdbench 0.1.0";

using ordered_json = nlohmann::ordered_json;

enum class Transform { None, Decile, MinMax };

struct MetricConfig {
  std::string name;
  Scale scale = Scale::Ordinal;
  bool lower_is_better = false;
  Transform transform = Transform::None;
  int bins = 10;  // decile transform only
};

struct AnalysisConfig {
  int version = 1;
  std::vector<MetricConfig> metrics;
  double alpha = 0.05;
  int n_resamples = 1000;
  double delta = 0.0;
  std::optional<double> epsilon;  // unset: 1 / s^(1/4)
  std::uint64_t seed = 0;
  int k_max = -1;                 // unset: ceil(s/4)
  int rounding_decimals = 6;
  bool per_dataset_bins = false;  // decile ranks within each dataset instead
                                  // of pooled across the whole column
};

AnalysisConfig parse_config(const std::string& json_text);
AnalysisConfig load_config(const std::string& path);
std::string config_to_json(const AnalysisConfig& config);

// Long-format input: one row per (dataset, classifier), metric columns as
// declared in the header. Order of first appearance is preserved.
struct RawTable {
  std::vector<std::string> metric_columns;
  std::vector<std::string> datasets;
  std::vector<std::string> classifiers;
  struct Row {
    std::size_t dataset = 0;
    std::size_t classifier = 0;
    std::vector<double> values;
  };
  std::vector<Row> rows;
};

RawTable read_csv(std::istream& in);
RawTable read_csv_text(const std::string& text);

struct IngestResult {
  PerformanceTable table;
  std::vector<std::string> warnings;
  std::vector<std::string> violations;  // nonempty means the table is unusable
};

// Orientation flip, per-metric transform, rounding, then validation. Collects
// violations instead of throwing so dry runs can list them.
IngestResult ingest(const RawTable& raw, const AnalysisConfig& config);

// Same, but a nonempty violation list becomes a DataError.
PerformanceTable ingest_or_throw(const RawTable& raw,
                                 const AnalysisConfig& config);

// Normalized long CSV (dataset, classifier, metric columns); parsing it back
// with identity transforms reproduces the table.
std::string write_table_csv(const PerformanceTable& table);

struct FetchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFoundError : FetchError {
  using FetchError::FetchError;
};
struct HttpStatusError : FetchError {
  HttpStatusError(const std::string& what, int status_code)
      : FetchError(what), status(status_code) {}
  int status = 0;
};
struct TimeoutError : FetchError {
  using FetchError::FetchError;
};
struct CapExceededError : FetchError {
  using FetchError::FetchError;
};

struct FetchOptions {
  std::size_t max_bytes = 64ull << 20;
  int timeout_seconds = 30;
  int retries = 0;  // extra attempts after the first
};

std::string fetch_csv(const std::string& url, const FetchOptions& options = {});

// Population model files for the simulate command.
PopulationModel parse_model(const std::string& json_text);
PopulationModel load_model(const std::string& path);
std::string model_to_json(const PopulationModel& model);

// JSON fragments for reports. The CLI composes these under a root object
// carrying tool_version, command, and seed.
ordered_json table_summary_json(const PerformanceTable& table);
ordered_json matrix_json(const DominanceMatrix& matrix);
ordered_json front_json(const FrontResult& front,
                        const std::vector<std::string>& names);
ordered_json pairwise_test_json(const PairwiseTestResult& result,
                                const std::vector<std::string>& names);
ordered_json static_test_json(const MultiTestResult& result,
                              const std::vector<std::string>& names);
ordered_json dynamic_test_json(const SelectionTestResult& result,
                               const std::vector<std::string>& names);
ordered_json robustness_json(const RobustnessReport& report,
                             const std::vector<std::string>& names);
ordered_json marginal_front_json(const MarginalFrontResult& result,
                                 const PerformanceTable& table);
ordered_json experiment_json(const ExperimentReport& report);

std::string render_json(const ordered_json& j);

// Plot-ready long table: s, run, recovered, superset.
std::string experiment_rows_csv(const ExperimentReport& report);

// Throws DataError when the path cannot be written.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace gsdbench

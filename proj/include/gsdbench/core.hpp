#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsdbench {

// One evaluation of a classifier on a dataset: a point in [0,1]^n with one
// coordinate per quality metric, all metrics oriented higher-is-better.
using EvaluationPoint = std::vector<double>;

enum class Scale { Cardinal, Ordinal };

struct MetricSpec {
  std::string name;
  Scale scale = Scale::Cardinal;
};

// Metric layout shared by all points of a table. Cardinal metrics come first,
// so coordinates [0, cardinal_count) are cardinal and the rest ordinal.
struct ScaleSpec {
  std::vector<MetricSpec> metrics;

  std::size_t size() const { return metrics.size(); }
  std::size_t cardinal_count() const;
  bool cardinal_first() const;
};

ScaleSpec all_ordinal(const ScaleSpec& scale);

struct PerformanceTable {
  std::vector<std::string> classifiers;
  std::vector<std::string> datasets;
  ScaleSpec scale;
  // classifier-major: values[c * datasets.size() + d]. A missing cell is an
  // empty vector; validate_table reports it.
  std::vector<EvaluationPoint> values;

  const EvaluationPoint& at(std::size_t classifier, std::size_t dataset) const;
  EvaluationPoint& at(std::size_t classifier, std::size_t dataset);
  // Throws DataError for unknown names.
  std::size_t classifier_index(std::string_view name) const;
  std::vector<EvaluationPoint> classifier_points(std::size_t classifier) const;
};

// Everything wrong with the table, one human-readable line per defect.
// Empty result means the table is fit for analysis.
std::vector<std::string> validate_table(const PerformanceTable& table);

// Bad or inconsistent input data (CSV, config, table contents).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric routine could not certify its result (solver breakdown,
// constraint budget exceeded). Never used for plain infeasibility.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gsdbench

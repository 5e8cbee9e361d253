#include "gsdbench/core.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace gsdbench {

std::size_t ScaleSpec::cardinal_count() const {
  std::size_t k = 0;
  for (const auto& m : metrics)
    if (m.scale == Scale::Cardinal) ++k;
  return k;
}

bool ScaleSpec::cardinal_first() const {
  const std::size_t z = cardinal_count();
  for (std::size_t j = 0; j < metrics.size(); ++j) {
    const bool cardinal = metrics[j].scale == Scale::Cardinal;
    if (cardinal != (j < z)) return false;
  }
  return true;
}

ScaleSpec all_ordinal(const ScaleSpec& scale) {
  ScaleSpec out = scale;
  for (auto& m : out.metrics) m.scale = Scale::Ordinal;
  return out;
}

const EvaluationPoint& PerformanceTable::at(std::size_t classifier,
                                            std::size_t dataset) const {
  return values.at(classifier * datasets.size() + dataset);
}

EvaluationPoint& PerformanceTable::at(std::size_t classifier,
                                      std::size_t dataset) {
  return values.at(classifier * datasets.size() + dataset);
}

std::size_t PerformanceTable::classifier_index(std::string_view name) const {
  for (std::size_t i = 0; i < classifiers.size(); ++i)
    if (classifiers[i] == name) return i;
  throw DataError("unknown classifier: " + std::string(name));
}

std::vector<EvaluationPoint> PerformanceTable::classifier_points(
    std::size_t classifier) const {
  std::vector<EvaluationPoint> out;
  out.reserve(datasets.size());
  for (std::size_t d = 0; d < datasets.size(); ++d)
    out.push_back(at(classifier, d));
  return out;
}

namespace {

std::string format_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_unique(const std::vector<std::string>& names, const char* what,
                  std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const auto& name : names) {
    if (name.empty()) out.push_back(std::string("empty ") + what + " id");
    if (!seen.insert(name).second)
      out.push_back(std::string("duplicate ") + what + " id: " + name);
  }
}

}  // namespace

std::vector<std::string> validate_table(const PerformanceTable& table) {
  std::vector<std::string> out;
  const std::size_t n_classifiers = table.classifiers.size();
  const std::size_t n_datasets = table.datasets.size();
  const std::size_t n = table.scale.size();

  if (n_classifiers < 2)
    out.push_back("table needs at least 2 classifiers, found " +
                  std::to_string(n_classifiers));
  if (n_datasets < 1) out.push_back("table needs at least 1 dataset");
  if (n < 1) out.push_back("table needs at least 1 metric");

  check_unique(table.classifiers, "classifier", out);
  check_unique(table.datasets, "dataset", out);
  {
    std::vector<std::string> metric_names;
    for (const auto& m : table.scale.metrics) metric_names.push_back(m.name);
    check_unique(metric_names, "metric", out);
  }
  if (!table.scale.cardinal_first())
    out.push_back("metrics must list all cardinal metrics before ordinal ones");

  if (table.values.size() != n_classifiers * n_datasets) {
    out.push_back("value storage holds " + std::to_string(table.values.size()) +
                  " cells, expected " +
                  std::to_string(n_classifiers * n_datasets));
    return out;
  }

  for (std::size_t c = 0; c < n_classifiers; ++c) {
    for (std::size_t d = 0; d < n_datasets; ++d) {
      const EvaluationPoint& p = table.at(c, d);
      if (p.empty()) {
        out.push_back("missing evaluation (" + table.classifiers[c] + ", " +
                      table.datasets[d] + ")");
        continue;
      }
      if (p.size() != n) {
        out.push_back("evaluation (" + table.classifiers[c] + ", " +
                      table.datasets[d] + ") has " + std::to_string(p.size()) +
                      " coordinates, expected " + std::to_string(n));
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(p[j]) || p[j] < 0.0 || p[j] > 1.0)
          out.push_back("value out of [0,1] at (" + table.classifiers[c] +
                        ", " + table.datasets[d] + ", metric " +
                        table.scale.metrics[j].name + "): " +
                        format_value(p[j]));
      }
    }
  }
  return out;
}

}  // namespace gsdbench

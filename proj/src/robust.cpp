#include "gsdbench/robust.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsdbench {

double contamination_pvalue(const std::vector<double>& resampled,
                            double observed, int k, std::size_t sample_size) {
  if (resampled.empty())
    throw std::invalid_argument("contamination_pvalue needs resampled values");
  if (k < 0 || static_cast<std::size_t>(k) >= sample_size)
    throw std::invalid_argument("contamination count must satisfy 0 <= k < s");
  const double threshold =
      2.0 * k / (static_cast<double>(sample_size) - static_cast<double>(k));
  std::size_t cleared = 0;
  for (double v : resampled)
    if (v - observed > threshold) ++cleared;  // strict, ties do not clear
  return static_cast<double>(resampled.size() - cleared) /
         static_cast<double>(resampled.size());
}

RobustnessReport contamination_report(const PerformanceTable& table,
                                      std::size_t target,
                                      const ResamplingPlan& plan, double delta,
                                      int k_max) {
  const std::size_t s = table.datasets.size();
  if (k_max < 0)
    k_max = static_cast<int>((s + 3) / 4);  // ceil(s/4)
  if (static_cast<std::size_t>(k_max) >= s)
    k_max = static_cast<int>(s) - 1;

  RobustnessReport report;
  report.target = target;
  report.k_max = k_max;
  report.sample_size = s;
  report.aggregate.assign(k_max + 1, 0.0);

  const auto target_points = table.classifier_points(target);
  for (std::size_t c = 0; c < table.classifiers.size(); ++c) {
    if (c == target) continue;
    const ResampleSet rs = resample_statistics(
        target_points, table.classifier_points(c), table.scale, plan, delta);
    ContaminationCurve curve;
    curve.candidate = c;
    curve.observed = rs.observed;
    curve.p_by_k.reserve(k_max + 1);
    for (int k = 0; k <= k_max; ++k)
      curve.p_by_k.push_back(
          contamination_pvalue(rs.sorted, rs.observed, k, s));
    for (int k = 0; k <= k_max; ++k)
      report.aggregate[k] = std::max(report.aggregate[k], curve.p_by_k[k]);
    report.pairwise.push_back(std::move(curve));
  }
  if (report.pairwise.empty())
    throw DataError("contamination report needs at least one candidate");
  return report;
}

bool robustified_static_reject(const RobustnessReport& report, double alpha,
                               int k) {
  if (k < 0 || k > report.k_max)
    throw std::invalid_argument("k outside the computed curve range");
  return report.aggregate[k] <= alpha;
}

std::vector<std::size_t> robustified_dynamic_rejects(
    const RobustnessReport& report, double alpha, int k) {
  if (k < 0 || k > report.k_max)
    throw std::invalid_argument("k outside the computed curve range");
  const double level = alpha / static_cast<double>(report.pairwise.size());
  std::vector<std::size_t> out;
  for (const auto& curve : report.pairwise)
    if (curve.p_by_k[k] <= level) out.push_back(curve.candidate);
  return out;
}

std::optional<int> breakdown_point(const std::vector<double>& curve,
                                   double level, int k_max) {
  std::optional<int> best;
  const int limit = std::min<int>(k_max, static_cast<int>(curve.size()) - 1);
  for (int k = 0; k <= limit; ++k)
    if (curve[k] <= level) best = k;
  return best;
}

}  // namespace gsdbench

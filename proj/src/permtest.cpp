#include "gsdbench/permtest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gsdbench {

namespace {

// Rejection sampling keeps the draw distribution identical on every platform
// (std::uniform_int_distribution is implementation-defined).
std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
  const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t x;
  do {
    x = eng();
  } while (x > limit);
  return x % n;
}

std::vector<int> draw_subset(std::mt19937_64& eng, int universe, int size) {
  std::vector<int> idx(universe);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < size; ++i) {
    const int j = i + static_cast<int>(uniform_below(eng, universe - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::vector<std::vector<int>> enumerate_index_sets(std::size_t group_size,
                                                   std::uint64_t max_sets) {
  const int s = static_cast<int>(group_size);
  const int n = 2 * s;
  // C(2s, s) with overflow-free stepwise arithmetic against the cap.
  double count = 1.0;
  for (int i = 1; i <= s; ++i) count *= static_cast<double>(n - s + i) / i;
  if (count > static_cast<double>(max_sets))
    throw DataError("exhaustive resampling needs about " +
                    std::to_string(static_cast<std::uint64_t>(count)) +
                    " splits at group size " + std::to_string(s) +
                    "; use sampled mode");

  std::vector<std::vector<int>> sets;
  std::vector<int> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    sets.push_back(idx);
    int i = s - 1;
    while (i >= 0 && idx[i] == n - s + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return sets;
}

std::vector<double> statistics_for_index_sets(
    const std::vector<EvaluationPoint>& pooled, std::size_t group_size,
    const std::vector<std::vector<int>>& index_sets, const ScaleSpec& scale,
    double delta) {
  const std::size_t s = group_size;
  if (pooled.size() != 2 * s)
    throw std::invalid_argument("pooled sample must hold two groups");
  const PooledSystem sys = build_pooled_system(pooled, {}, scale);

  std::vector<int> var_of(pooled.size());
  for (std::size_t i = 0; i < pooled.size(); ++i)
    var_of[i] = sys.constraints.index_of(pooled[i]);

  const double w = 1.0 / static_cast<double>(s);
  std::vector<double> values;
  values.reserve(index_sets.size());
  std::vector<double> masses(sys.constraints.points.size());
  for (const auto& set : index_sets) {
    std::fill(masses.begin(), masses.end(), 0.0);
    for (std::size_t i = 0; i < pooled.size(); ++i) masses[var_of[i]] += w;
    for (int i : set) {
      if (i < 0 || i >= static_cast<int>(pooled.size()))
        throw std::invalid_argument("index set out of range");
      masses[var_of[i]] -= 2.0 * w;
    }
    values.push_back(minimize_over_representations(sys, masses, delta).value);
  }
  return values;
}

ResampleSet resample_statistics(const std::vector<EvaluationPoint>& target_sample,
                                const std::vector<EvaluationPoint>& candidate_sample,
                                const ScaleSpec& scale,
                                const ResamplingPlan& plan, double delta) {
  const std::size_t s = target_sample.size();
  if (candidate_sample.size() != s)
    throw DataError("resampling needs equally sized samples");
  if (s < 2) throw DataError("resampling needs at least 2 datasets per group");

  std::vector<EvaluationPoint> pooled;
  pooled.reserve(2 * s);
  pooled.insert(pooled.end(), target_sample.begin(), target_sample.end());
  pooled.insert(pooled.end(), candidate_sample.begin(), candidate_sample.end());

  std::vector<std::vector<int>> sets;
  ResampleSet out;
  if (plan.mode == ResamplingPlan::Mode::Exhaustive) {
    sets = enumerate_index_sets(s);
    out.exhaustive = true;
  } else {
    sets.reserve(plan.n_resamples + 1);
    for (std::uint64_t draw = 0; draw < plan.n_resamples; ++draw) {
      std::mt19937_64 eng(plan.seed + draw);
      sets.push_back(draw_subset(eng, static_cast<int>(2 * s),
                                 static_cast<int>(s)));
    }
    if (plan.include_observed) {
      std::vector<int> identity(s);
      std::iota(identity.begin(), identity.end(), 0);
      sets.push_back(std::move(identity));
    }
  }

  std::vector<int> identity(s);
  std::iota(identity.begin(), identity.end(), 0);
  const auto observed =
      statistics_for_index_sets(pooled, s, {identity}, scale, delta);
  out.observed = observed.front();

  out.sorted = statistics_for_index_sets(pooled, s, sets, scale, delta);
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

PairwiseTestResult pairwise_test(const PerformanceTable& table,
                                 std::size_t candidate, std::size_t target,
                                 double alpha, const ResamplingPlan& plan,
                                 double delta) {
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("alpha must lie in (0,1)");
  if (candidate == target)
    throw std::invalid_argument("candidate and target must differ");

  PairwiseTestResult r;
  r.candidate = candidate;
  r.target = target;
  r.alpha = alpha;

  const ResampleSet rs = resample_statistics(
      table.classifier_points(target), table.classifier_points(candidate),
      table.scale, plan, delta);
  r.observed = rs.observed;
  r.resampled = rs.sorted;

  const std::uint64_t n = r.resampled.size();
  r.rank_cutoff =
      static_cast<std::uint64_t>(std::floor(alpha * static_cast<double>(n) + 1e-9));
  r.level_too_small = r.rank_cutoff == 0;
  if (r.level_too_small) {
    r.critical_value = std::numeric_limits<double>::quiet_NaN();
    r.reject = false;
  } else {
    r.critical_value = r.resampled[r.rank_cutoff - 1];
    r.reject = r.observed < r.critical_value;  // ties never reject
  }
  std::size_t below_or_equal = 0;
  for (double v : r.resampled)
    if (v <= r.observed) ++below_or_equal;
  r.p_value = static_cast<double>(below_or_equal) / static_cast<double>(n);
  return r;
}

MultiTestResult static_gsd_test(const PerformanceTable& table,
                                std::size_t target, double alpha,
                                const ResamplingPlan& plan, double delta) {
  MultiTestResult out;
  out.target = target;
  out.alpha = alpha;
  out.reject = true;
  for (std::size_t c = 0; c < table.classifiers.size(); ++c) {
    if (c == target) continue;
    out.pairwise.push_back(pairwise_test(table, c, target, alpha, plan, delta));
    out.reject = out.reject && out.pairwise.back().reject;
  }
  if (out.pairwise.empty()) out.reject = false;
  return out;
}

SelectionTestResult dynamic_gsd_test(const PerformanceTable& table,
                                     std::size_t target, double alpha,
                                     const ResamplingPlan& plan, double delta) {
  const std::size_t k = table.classifiers.size();
  if (k < 2) throw DataError("dynamic test needs at least 2 classifiers");
  SelectionTestResult out;
  out.target = target;
  out.alpha = alpha;
  out.pairwise_level = alpha / static_cast<double>(k - 1);
  for (std::size_t c = 0; c < k; ++c) {
    if (c == target) continue;
    out.pairwise.push_back(
        pairwise_test(table, c, target, out.pairwise_level, plan, delta));
    if (out.pairwise.back().reject) out.rejected.push_back(c);
  }
  return out;
}

}  // namespace gsdbench

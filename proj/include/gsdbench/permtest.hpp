#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

#include "gsdbench/core.hpp"
#include "gsdbench/gsd.hpp"

namespace gsdbench {

struct ResamplingPlan {
  enum class Mode { Exhaustive, Sampled };
  Mode mode = Mode::Sampled;
  std::uint64_t n_resamples = 1000;  // ignored in Exhaustive mode
  std::uint64_t seed = 0;
  // Sampled mode appends the observed split as one extra resample, which
  // keeps the Monte-Carlo test valid at finite N.
  bool include_observed = true;
};

// Group-swap statistics on the pooled two-sample data. Pooled layout:
// entries [0, s) are the target sample, [s, 2s) the candidate dominator
// sample. Each index set I picks which pooled entries play the target role;
// the complement plays the candidate role, so I = {0..s-1} reproduces the
// observed statistic.
std::vector<double> statistics_for_index_sets(
    const std::vector<EvaluationPoint>& pooled, std::size_t group_size,
    const std::vector<std::vector<int>>& index_sets, const ScaleSpec& scale,
    double delta);

// All size-s subsets of {0,...,2s-1} in lexicographic order. Throws
// DataError when C(2s,s) exceeds max_sets.
std::vector<std::vector<int>> enumerate_index_sets(
    std::size_t group_size, std::uint64_t max_sets = 10000000);

struct ResampleSet {
  double observed = 0.0;
  std::vector<double> sorted;  // ascending
  bool exhaustive = false;
};

ResampleSet resample_statistics(const std::vector<EvaluationPoint>& target_sample,
                                const std::vector<EvaluationPoint>& candidate_sample,
                                const ScaleSpec& scale,
                                const ResamplingPlan& plan, double delta);

struct PairwiseTestResult {
  std::size_t candidate = 0;
  std::size_t target = 0;
  double alpha = 0.0;
  double observed = 0.0;
  std::vector<double> resampled;  // ascending
  double p_value = 0.0;           // #{resampled <= observed} / r
  double critical_value = 0.0;    // NaN when rank_cutoff == 0
  std::uint64_t rank_cutoff = 0;  // floor(alpha * r), 1-based order statistic
  bool reject = false;            // observed strictly below the cutoff value
  bool level_too_small = false;   // rank_cutoff == 0: the test cannot reject
};

// Tests the null "candidate weakly dominates target". Rejection means the
// data are evidence against that dominance.
PairwiseTestResult pairwise_test(const PerformanceTable& table,
                                 std::size_t candidate, std::size_t target,
                                 double alpha, const ResamplingPlan& plan,
                                 double delta = 0.0);

// Joint test of "some competitor weakly dominates the target" at level
// alpha. Rejecting (= every pairwise null rejected) is evidence that the
// target belongs to the front.
struct MultiTestResult {
  std::size_t target = 0;
  double alpha = 0.0;
  std::vector<PairwiseTestResult> pairwise;
  bool reject = false;
};

MultiTestResult static_gsd_test(const PerformanceTable& table,
                                std::size_t target, double alpha,
                                const ResamplingPlan& plan, double delta = 0.0);

// Pairwise tests at the corrected level alpha/(k-1); `rejected` collects the
// candidates whose dominance over the target is refuted, so the target is in
// the front of {target} + rejected at joint level alpha.
struct SelectionTestResult {
  std::size_t target = 0;
  double alpha = 0.0;
  double pairwise_level = 0.0;
  std::vector<PairwiseTestResult> pairwise;
  std::vector<std::size_t> rejected;
};

SelectionTestResult dynamic_gsd_test(const PerformanceTable& table,
                                     std::size_t target, double alpha,
                                     const ResamplingPlan& plan,
                                     double delta = 0.0);

}  // namespace gsdbench

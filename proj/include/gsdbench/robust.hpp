#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gsdbench/core.hpp"
#include "gsdbench/permtest.hpp"

namespace gsdbench {

// p-value of the pairwise dominance null when up to k of the s suite members
// may be adversarially contaminated: resampled values only count as evidence
// when they clear the observed value by more than 2k/(s-k). k = 0 recovers
// the plain ratio p-value. Throws std::invalid_argument unless 0 <= k < s.
double contamination_pvalue(const std::vector<double>& resampled,
                            double observed, int k, std::size_t sample_size);

struct ContaminationCurve {
  std::size_t candidate = 0;     // classifier whose dominance is under test
  double observed = 0.0;
  std::vector<double> p_by_k;    // index k = 0..k_max, nondecreasing
};

struct RobustnessReport {
  std::size_t target = 0;
  int k_max = 0;
  std::size_t sample_size = 0;
  std::vector<ContaminationCurve> pairwise;  // one per candidate
  std::vector<double> aggregate;             // pointwise max of the curves
};

// Builds all pairwise curves for the target with one resampling pass per
// candidate; no LP is re-solved across k. k_max < 0 selects ceil(s/4).
RobustnessReport contamination_report(const PerformanceTable& table,
                                      std::size_t target,
                                      const ResamplingPlan& plan, double delta,
                                      int k_max = -1);

// Front-membership rejection survives k contaminations when the worst
// pairwise curve still clears alpha.
bool robustified_static_reject(const RobustnessReport& report, double alpha,
                               int k);

// Candidates still refuted at level alpha/(#candidates) under k
// contaminations.
std::vector<std::size_t> robustified_dynamic_rejects(
    const RobustnessReport& report, double alpha, int k);

// Largest k <= k_max with curve[k] <= level, by direct scan.
std::optional<int> breakdown_point(const std::vector<double>& curve,
                                   double level, int k_max);

}  // namespace gsdbench

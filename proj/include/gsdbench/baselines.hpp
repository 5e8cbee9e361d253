#pragma once

#include <cstddef>
#include <vector>

#include "gsdbench/core.hpp"
#include "gsdbench/gsd.hpp"

namespace gsdbench {

// First-order stochastic dominance: the same pipeline with every metric
// treated as ordinal, which drops all difference comparisons.
DominanceMatrix fsd_matrix(const PerformanceTable& table, double delta = 0.0);

struct RankTestResult {
  std::size_t metric = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t degrees_of_freedom = 0;
  std::vector<double> mean_ranks;  // per classifier, ascending ranks (1 = worst)
  bool degenerate = false;         // every dataset fully tied
};

// Friedman rank test across datasets as blocks, average ranks on ties,
// tie-adjusted statistic against the chi-square approximation.
RankTestResult friedman_test(const PerformanceTable& table, std::size_t metric);

struct PairwiseRankComparison {
  std::size_t a = 0;
  std::size_t b = 0;
  double rank_difference = 0.0;  // mean_rank(a) - mean_rank(b)
  double q_statistic = 0.0;      // |difference| on the studentized-range scale
  double p_value = 0.0;
  bool significant = false;
};

struct RankComparisonResult {
  std::size_t metric = 0;
  double alpha = 0.0;
  double critical_difference = 0.0;  // on the mean-rank scale
  std::vector<double> mean_ranks;
  std::vector<PairwiseRankComparison> pairs;  // a < b, all unordered pairs
};

// Post-hoc all-pairs comparison of mean ranks against the critical
// difference. alpha must be one of the shipped quantile levels
// {0.01, 0.05, 0.10} and the classifier count at most 20; otherwise
// DataError.
RankComparisonResult rank_comparison(const PerformanceTable& table,
                                     std::size_t metric, double alpha);

struct MarginalFrontResult {
  double alpha = 0.0;
  std::vector<RankTestResult> friedman;        // per metric
  std::vector<RankComparisonResult> pairwise;  // per metric
  std::vector<bool> friedman_rejected;         // per metric
  std::vector<std::size_t> front;
};

// Per-metric Friedman gate plus pairwise rank comparisons; a classifier is
// excluded only when one competitor beats it significantly on every metric.
MarginalFrontResult marginal_front(const PerformanceTable& table, double alpha);

// Upper quantile of the range of k iid standard normals (the infinite
// degrees-of-freedom studentized range). Shipped for alpha in
// {0.01, 0.05, 0.10} and k in [2, 20]; DataError otherwise.
double studentized_range_quantile(double alpha, std::size_t k);

// Exceedance probability of that range at q, by quadrature.
double studentized_range_pvalue(double q, std::size_t k);

double chi_squared_pvalue(double statistic, std::size_t degrees_of_freedom);

}  // namespace gsdbench

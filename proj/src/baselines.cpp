#include "gsdbench/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace gsdbench {

DominanceMatrix fsd_matrix(const PerformanceTable& table, double delta) {
  PerformanceTable ordinal = table;
  ordinal.scale = all_ordinal(table.scale);
  return dominance_matrix(ordinal, delta);
}

namespace {

// Average ranks (1 = smallest value) of one dataset's values across
// classifiers; ties share the mean of their rank run.
std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t k = values.size();
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(k, 0.0);
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i;
    while (j + 1 < k && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

std::vector<double> metric_column(const PerformanceTable& table,
                                  std::size_t dataset, std::size_t metric) {
  std::vector<double> v(table.classifiers.size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = table.at(c, dataset)[metric];
  return v;
}

// Frozen upper quantiles of the range of k iid standard normals,
// k = 2..20, generated offline at double precision and spot-checked against
// the quadrature below.
constexpr double kRangeQuantiles01[] = {
    3.642773, 4.120303, 4.402801, 4.602821, 4.757047, 4.882166, 4.987183,
    5.077506, 5.156635, 5.226963, 5.290196, 5.347592, 5.400105, 5.448476,
    5.493291, 5.535020, 5.574047, 5.610690, 5.645215};
constexpr double kRangeQuantiles05[] = {
    2.771808, 3.314493, 3.633160, 3.857656, 4.030092, 4.169554, 4.286309,
    4.386509, 4.474124, 4.551864, 4.621655, 4.684920, 4.742732, 4.795924,
    4.845154, 4.890951, 4.933745, 4.973892, 5.011689};
constexpr double kRangeQuantiles10[] = {
    2.326174, 2.902380, 3.240446, 3.478281, 3.660721, 3.808098, 3.931349,
    4.037023, 4.129346, 4.211200, 4.284635, 4.351158, 4.411913, 4.467782,
    4.519464, 4.567519, 4.612403, 4.654494, 4.694104};

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

}  // namespace

double studentized_range_quantile(double alpha, std::size_t k) {
  if (k < 2 || k > 20)
    throw DataError("rank comparison supports between 2 and 20 classifiers, "
                    "got " + std::to_string(k));
  const double* table = nullptr;
  if (std::abs(alpha - 0.01) < 1e-12) table = kRangeQuantiles01;
  else if (std::abs(alpha - 0.05) < 1e-12) table = kRangeQuantiles05;
  else if (std::abs(alpha - 0.10) < 1e-12) table = kRangeQuantiles10;
  if (!table)
    throw DataError("rank comparison levels are limited to 0.01, 0.05, 0.10");
  return table[k - 2];
}

double studentized_range_pvalue(double q, std::size_t k) {
  if (k < 2) throw std::invalid_argument("range needs at least 2 variables");
  if (q <= 0.0) return 1.0;
  // P(R <= q) = k * Integral phi(z) * (Phi(z) - Phi(z-q))^(k-1) dz,
  // z the maximum; composite 10-point Gauss-Legendre on [-10, 10].
  static constexpr double nodes[] = {0.1488743389816312, 0.4333953941292472,
                                     0.6794095682990244, 0.8650633666889845,
                                     0.9739065285171717};
  static constexpr double weights[] = {0.2955242247147529, 0.2692667193099963,
                                       0.2190863625159820, 0.1494513491505806,
                                       0.0666713443086881};
  const int panels = 40;
  const double lo = -10.0, hi = 10.0;
  const double h = (hi - lo) / panels;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (int i = 0; i < 5; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double z = mid + sign * half * nodes[i];
        const double inner = normal_cdf(z) - normal_cdf(z - q);
        integral += weights[i] * half * normal_pdf(z) *
                    std::pow(inner, static_cast<double>(k - 1));
      }
    }
  }
  const double cdf = static_cast<double>(k) * integral;
  return std::clamp(1.0 - cdf, 0.0, 1.0);
}

double chi_squared_pvalue(double statistic, std::size_t degrees_of_freedom) {
  if (statistic <= 0.0) return 1.0;
  boost::math::chi_squared dist(static_cast<double>(degrees_of_freedom));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

RankTestResult friedman_test(const PerformanceTable& table,
                             std::size_t metric) {
  const std::size_t k = table.classifiers.size();
  const std::size_t s = table.datasets.size();
  if (k < 2 || s < 2)
    throw DataError("rank test needs at least 2 classifiers and 2 datasets");

  RankTestResult r;
  r.metric = metric;
  r.degrees_of_freedom = k - 1;

  std::vector<double> rank_sums(k, 0.0);
  double tie_term = 0.0;  // sum over blocks of sum (t^3 - t)
  for (std::size_t d = 0; d < s; ++d) {
    const auto values = metric_column(table, d, metric);
    const auto ranks = average_ranks(values);
    for (std::size_t c = 0; c < k; ++c) rank_sums[c] += ranks[c];
    std::size_t i = 0;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    while (i < sorted.size()) {
      std::size_t j = i;
      while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
  }
  r.mean_ranks.resize(k);
  for (std::size_t c = 0; c < k; ++c)
    r.mean_ranks[c] = rank_sums[c] / static_cast<double>(s);

  const double n = static_cast<double>(s);
  const double kk = static_cast<double>(k);
  double numer = -3.0 * n * n * kk * (kk + 1.0) * (kk + 1.0);
  for (std::size_t c = 0; c < k; ++c) numer += 12.0 * rank_sums[c] * rank_sums[c];
  const double denom = n * kk * (kk + 1.0) - tie_term / (kk - 1.0);
  if (denom <= 1e-12) {
    r.degenerate = true;
    r.statistic = 0.0;
    r.p_value = 1.0;
    return r;
  }
  r.statistic = numer / denom;
  if (r.statistic < 0.0) r.statistic = 0.0;
  r.p_value = chi_squared_pvalue(r.statistic, r.degrees_of_freedom);
  return r;
}

RankComparisonResult rank_comparison(const PerformanceTable& table,
                                     std::size_t metric, double alpha) {
  const std::size_t k = table.classifiers.size();
  const std::size_t s = table.datasets.size();
  RankComparisonResult out;
  out.metric = metric;
  out.alpha = alpha;
  out.mean_ranks = friedman_test(table, metric).mean_ranks;

  const double quantile = studentized_range_quantile(alpha, k);
  const double kk = static_cast<double>(k);
  const double spread =
      std::sqrt(kk * (kk + 1.0) / (12.0 * static_cast<double>(s)));
  out.critical_difference = quantile * spread;

  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      PairwiseRankComparison cmp;
      cmp.a = a;
      cmp.b = b;
      cmp.rank_difference = out.mean_ranks[a] - out.mean_ranks[b];
      cmp.q_statistic = std::abs(cmp.rank_difference) / spread;
      cmp.p_value = studentized_range_pvalue(cmp.q_statistic, k);
      cmp.significant = cmp.q_statistic > quantile;
      out.pairs.push_back(cmp);
    }
  }
  return out;
}

MarginalFrontResult marginal_front(const PerformanceTable& table,
                                   double alpha) {
  const std::size_t k = table.classifiers.size();
  const std::size_t n = table.scale.size();
  MarginalFrontResult out;
  out.alpha = alpha;
  for (std::size_t m = 0; m < n; ++m) {
    out.friedman.push_back(friedman_test(table, m));
    out.pairwise.push_back(rank_comparison(table, m, alpha));
    out.friedman_rejected.push_back(out.friedman.back().p_value <= alpha);
  }

  // significantly_worse[m][c*k+o]: on metric m, c is significantly below o.
  std::vector<std::vector<char>> worse(n, std::vector<char>(k * k, 0));
  for (std::size_t m = 0; m < n; ++m) {
    if (!out.friedman_rejected[m]) continue;
    for (const auto& cmp : out.pairwise[m].pairs) {
      if (!cmp.significant) continue;
      const auto& ranks = out.pairwise[m].mean_ranks;
      if (ranks[cmp.a] < ranks[cmp.b])
        worse[m][cmp.a * k + cmp.b] = 1;
      else if (ranks[cmp.b] < ranks[cmp.a])
        worse[m][cmp.b * k + cmp.a] = 1;
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    bool excluded = false;
    for (std::size_t o = 0; o < k && !excluded; ++o) {
      if (o == c) continue;
      bool beaten_on_all = true;
      for (std::size_t m = 0; m < n && beaten_on_all; ++m)
        beaten_on_all = worse[m][c * k + o] != 0;
      excluded = beaten_on_all;
    }
    if (!excluded) out.front.push_back(c);
  }
  return out;
}

}  // namespace gsdbench

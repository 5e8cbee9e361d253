#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gsdbench/core.hpp"
#include "gsdbench/prefsys.hpp"

namespace gsdbench {

// LP noise guard: values this close to a threshold count as clearing it.
constexpr double kZeroBand = 1e-9;

// Does a dominance statistic certify weak dominance at the given slack?
inline bool dominates(double value, double slack = 0.0) {
  return value >= -slack - kZeroBand;
}

// Constraint system pooled from two samples' points plus anchors, with its
// largest feasible strict-constraint margin. Built once per pair; only the
// objective changes across resamples.
struct PooledSystem {
  ConstraintSet constraints;
  double max_margin = 0.0;
};

PooledSystem build_pooled_system(const std::vector<EvaluationPoint>& first,
                                 const std::vector<EvaluationPoint>& second,
                                 const ScaleSpec& scale);

// Objective masses on the pooled variables: +weight per first-sample point,
// -weight per second-sample point (duplicates accumulate). Throws
// std::invalid_argument if a point is not in the pool.
std::vector<double> signed_masses(const ConstraintSet& cs,
                                  const std::vector<EvaluationPoint>& first,
                                  const std::vector<double>& first_weights,
                                  const std::vector<EvaluationPoint>& second,
                                  const std::vector<double>& second_weights);

struct StatisticResult {
  double value = 0.0;       // in [-1, 1]
  double delta = 0.0;
  double margin = 0.0;      // delta * max_margin, the margin the LP ran with
  double max_margin = 0.0;
  std::vector<double> utilities;  // minimizing assignment per pooled point
  int lp_iterations = 0;
};

// Minimum of sum(masses * u) over utility representations with strict
// constraints at margin delta * max_margin. Throws NumericalError when the
// solver cannot certify a result.
StatisticResult minimize_over_representations(const PooledSystem& system,
                                              const std::vector<double>& masses,
                                              double delta);

// value >= 0 (within the band) means `first` weakly dominates `second` in
// the empirical generalized-stochastic-dominance sense.
StatisticResult dominance_statistic(const PerformanceTable& table,
                                    std::size_t first, std::size_t second,
                                    double delta = 0.0);

struct DominanceMatrix {
  std::vector<std::string> classifiers;
  double delta = 0.0;
  std::vector<double> values;  // row-major; values[i*k + j] = d(C_i, C_j)

  double at(std::size_t i, std::size_t j) const {
    return values[i * classifiers.size() + j];
  }
};

DominanceMatrix dominance_matrix(const PerformanceTable& table,
                                 double delta = 0.0);

// Equivalence groups (mutual dominance, condensed so the result is always
// acyclic) plus covering strict edges between groups.
struct DominanceGraph {
  std::vector<std::vector<std::size_t>> groups;  // sorted by first member
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (winner, loser)
};

DominanceGraph dominance_graph(const DominanceMatrix& matrix);

std::string to_dot(const DominanceGraph& graph,
                   const std::vector<std::string>& names);

enum class FrontKind { Empirical, Pareto, Population };

struct FrontResult {
  std::vector<std::size_t> members;  // indices into table.classifiers
  double epsilon = 0.0;
  FrontKind kind = FrontKind::Empirical;
};

// Classifier C is excluded iff some C' has d(C',C) >= -epsilon while
// d(C,C') < 0. At epsilon = 0 the front is never empty.
FrontResult gsd_front(const DominanceMatrix& matrix, double epsilon);

// Classifiers not strictly componentwise-beaten on every dataset at once.
FrontResult pareto_front(const PerformanceTable& table);

// Default slack for a given suite size: scale / s^(1/4).
double epsilon_schedule(std::size_t sample_size, double scale_constant = 1.0);

}  // namespace gsdbench

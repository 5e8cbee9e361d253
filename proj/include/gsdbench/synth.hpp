#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsdbench/core.hpp"
#include "gsdbench/gsd.hpp"

namespace gsdbench {

// Finite-support population: datasets are drawn i.i.d. from a small set of
// outcome profiles. types[t][c] is the point classifier c produces on a
// dataset of type t.
struct PopulationModel {
  std::vector<std::string> classifiers;
  ScaleSpec scale;
  std::vector<double> probabilities;
  std::vector<std::vector<EvaluationPoint>> types;
};

std::vector<std::string> validate_model(const PopulationModel& model);

// Shipped 3-classifier, 4-type, 3-metric model (1 cardinal + 2 ordinal on
// decile midpoints). A and B are incomparable with comfortably negative
// cross statistics, C is dominated by A in every type, so the population
// front is {A, B}.
PopulationModel default_model();

// Pairwise statistics computed against the exact type probabilities instead
// of empirical masses.
DominanceMatrix population_dominance_matrix(const PopulationModel& model,
                                            double delta = 0.0);
FrontResult population_gsd_front(const PopulationModel& model,
                                 double delta = 0.0);

// s i.i.d. type draws assembled into a table. Deterministic in seed.
PerformanceTable sample_table(const PopulationModel& model, std::size_t s,
                              std::uint64_t seed);

struct ExperimentRow {
  std::size_t sample_size = 0;
  std::size_t run = 0;
  bool recovered = false;   // estimated front == population front
  bool superset = false;    // estimated front contains the population front
};

struct SizeSummary {
  std::size_t sample_size = 0;
  double recovery_rate = 0.0;
  double superset_rate = 0.0;
};

struct ExperimentReport {
  std::vector<std::size_t> s_grid;
  std::size_t runs = 0;
  double epsilon_c = 1.0;
  std::uint64_t seed = 0;
  std::vector<ExperimentRow> rows;
  std::vector<SizeSummary> summary;
};

// For each sample size, repeatedly sample a table, compute the empirical
// front with shrinking tolerance epsilon_c / s^(1/4), and compare against the
// population front. Requires the population order to have no mutual
// dominance between distinct classifiers.
ExperimentReport consistency_experiment(const PopulationModel& model,
                                        const std::vector<std::size_t>& s_grid,
                                        std::size_t runs, double epsilon_c,
                                        std::uint64_t seed);

// Brute-force check value for the representation LP: minimizes the same
// objective over utilities restricted to the grid {0, 1/G, ..., 1}. Returns
// +infinity when no grid assignment satisfies the constraints. Limited to 6
// variable points besides the anchors and G <= 20.
double grid_oracle_statistic(const std::vector<double>& first_measure,
                             const std::vector<double>& second_measure,
                             const std::vector<EvaluationPoint>& points,
                             const ScaleSpec& scale, double grid_step);

// True iff the empirical CDF of x lies at or below that of y at every pooled
// support point (classic first-order dominance of x over y).
bool ecdf_dominates(const std::vector<double>& x_values,
                    const std::vector<double>& y_values);

}  // namespace gsdbench

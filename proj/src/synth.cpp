#include "gsdbench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace gsdbench {

std::vector<std::string> validate_model(const PopulationModel& model) {
  std::vector<std::string> issues;
  const std::size_t k = model.classifiers.size();
  const std::size_t n = model.scale.size();
  if (k == 0) issues.push_back("model has no classifiers");
  if (n == 0) issues.push_back("model has no metrics");
  if (!model.scale.cardinal_first())
    issues.push_back("cardinal metrics must precede ordinal ones");
  for (std::size_t a = 0; a < k; ++a) {
    if (model.classifiers[a].empty()) issues.push_back("empty classifier id");
    for (std::size_t b = a + 1; b < k; ++b)
      if (model.classifiers[a] == model.classifiers[b])
        issues.push_back("duplicate classifier id " + model.classifiers[a]);
  }
  if (model.types.empty()) issues.push_back("model has no dataset types");
  if (model.probabilities.size() != model.types.size()) {
    issues.push_back("probability count does not match type count");
    return issues;
  }
  double total = 0.0;
  for (double p : model.probabilities) {
    if (!(p >= 0.0)) issues.push_back("negative type probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    issues.push_back("type probabilities do not sum to 1");
  for (std::size_t t = 0; t < model.types.size(); ++t) {
    if (model.types[t].size() != k) {
      issues.push_back("type " + std::to_string(t) +
                       " does not cover every classifier");
      continue;
    }
    for (std::size_t c = 0; c < k; ++c) {
      const auto& p = model.types[t][c];
      if (p.size() != n) {
        issues.push_back("type " + std::to_string(t) + " classifier " +
                         model.classifiers[c] + ": wrong dimension");
        continue;
      }
      for (double v : p)
        if (!std::isfinite(v) || v < 0.0 || v > 1.0)
          issues.push_back("type " + std::to_string(t) + " classifier " +
                           model.classifiers[c] + ": value out of [0,1]");
    }
  }
  return issues;
}

PopulationModel default_model() {
  PopulationModel m;
  m.classifiers = {"A", "B", "C"};
  m.scale.metrics = {{"accuracy", Scale::Cardinal},
                     {"robustness", Scale::Ordinal},
                     {"calibration", Scale::Ordinal}};
  m.probabilities = {0.3, 0.3, 0.2, 0.2};
  // A: strong cardinal metric, mid ordinals. B: weak cardinal, strong
  // ordinals. C: A shifted down one notch everywhere, so A beats it in every
  // type while staying incomparable to B.
  m.types = {
      {{0.90, 0.55, 0.45}, {0.30, 0.95, 0.85}, {0.70, 0.45, 0.35}},
      {{0.80, 0.45, 0.55}, {0.20, 0.85, 0.85}, {0.60, 0.35, 0.45}},
      {{0.85, 0.35, 0.65}, {0.25, 0.75, 0.85}, {0.65, 0.25, 0.55}},
      {{0.75, 0.65, 0.35}, {0.15, 0.95, 0.85}, {0.55, 0.55, 0.25}},
  };
  return m;
}

namespace {

void require_valid(const PopulationModel& model) {
  auto issues = validate_model(model);
  if (!issues.empty()) throw DataError("invalid model: " + issues.front());
}

std::vector<EvaluationPoint> classifier_profile(const PopulationModel& model,
                                                std::size_t c) {
  std::vector<EvaluationPoint> pts;
  pts.reserve(model.types.size());
  for (const auto& type : model.types) pts.push_back(type[c]);
  return pts;
}

double unit_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1p-53;
}

}  // namespace

DominanceMatrix population_dominance_matrix(const PopulationModel& model,
                                            double delta) {
  require_valid(model);
  const std::size_t k = model.classifiers.size();
  DominanceMatrix matrix;
  matrix.classifiers = model.classifiers;
  matrix.delta = delta;
  matrix.values.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto first = classifier_profile(model, i);
      const auto second = classifier_profile(model, j);
      const auto pooled = build_pooled_system(first, second, model.scale);
      auto masses = signed_masses(pooled.constraints, first,
                                  model.probabilities, second,
                                  model.probabilities);
      matrix.values[i * k + j] =
          minimize_over_representations(pooled, masses, delta).value;
      for (double& mass : masses) mass = -mass;
      matrix.values[j * k + i] =
          minimize_over_representations(pooled, masses, delta).value;
    }
  }
  return matrix;
}

FrontResult population_gsd_front(const PopulationModel& model, double delta) {
  FrontResult front = gsd_front(population_dominance_matrix(model, delta), 0.0);
  front.kind = FrontKind::Population;
  return front;
}

PerformanceTable sample_table(const PopulationModel& model, std::size_t s,
                              std::uint64_t seed) {
  require_valid(model);
  if (s == 0) throw DataError("sample size must be at least 1");
  PerformanceTable table;
  table.classifiers = model.classifiers;
  table.scale = model.scale;
  table.datasets.reserve(s);
  for (std::size_t d = 0; d < s; ++d) {
    char name[16];
    std::snprintf(name, sizeof(name), "d%05zu", d + 1);
    table.datasets.emplace_back(name);
  }
  std::mt19937_64 eng(seed);
  std::vector<std::size_t> drawn(s, 0);
  for (std::size_t d = 0; d < s; ++d) {
    const double r = unit_uniform(eng);
    double cum = 0.0;
    std::size_t type = model.types.size() - 1;
    for (std::size_t t = 0; t < model.types.size(); ++t) {
      cum += model.probabilities[t];
      if (r < cum) {
        type = t;
        break;
      }
    }
    drawn[d] = type;
  }
  table.values.reserve(model.classifiers.size() * s);
  for (std::size_t c = 0; c < model.classifiers.size(); ++c)
    for (std::size_t d = 0; d < s; ++d)
      table.values.push_back(model.types[drawn[d]][c]);
  return table;
}

ExperimentReport consistency_experiment(const PopulationModel& model,
                                        const std::vector<std::size_t>& s_grid,
                                        std::size_t runs, double epsilon_c,
                                        std::uint64_t seed) {
  require_valid(model);
  if (s_grid.empty()) throw DataError("empty sample-size grid");
  for (std::size_t s : s_grid)
    if (s == 0) throw DataError("sample size must be at least 1");
  if (runs == 0) throw DataError("need at least 1 replication");
  if (!(epsilon_c > 0.0)) throw DataError("tolerance scale must be positive");

  const auto population = population_dominance_matrix(model, 0.0);
  const std::size_t k = model.classifiers.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (dominates(population.at(i, j)) && dominates(population.at(j, i)))
        throw DataError("population order is not antisymmetric: " +
                        model.classifiers[i] + " and " + model.classifiers[j] +
                        " dominate each other");
  FrontResult target = gsd_front(population, 0.0);

  ExperimentReport report;
  report.s_grid = s_grid;
  report.runs = runs;
  report.epsilon_c = epsilon_c;
  report.seed = seed;

  const std::size_t total = s_grid.size() * runs;
  report.rows.resize(total);
  std::exception_ptr failure;
  std::mutex failure_lock;

  auto work = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t idx = begin; idx < end; ++idx) {
        const std::size_t s = s_grid[idx / runs];
        const std::size_t run = idx % runs;
        const std::uint64_t rep_seed =
            seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(idx) + 1);
        const auto table = sample_table(model, s, rep_seed);
        const auto matrix = dominance_matrix(table, 0.0);
        const auto front = gsd_front(matrix, epsilon_schedule(s, epsilon_c));
        ExperimentRow row;
        row.sample_size = s;
        row.run = run;
        row.recovered = front.members == target.members;
        row.superset = std::includes(front.members.begin(),
                                     front.members.end(),
                                     target.members.begin(),
                                     target.members.end());
        report.rows[idx] = row;
      }
    } catch (...) {
      std::scoped_lock hold(failure_lock);
      if (!failure) failure = std::current_exception();
    }
  };

  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(
          total, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= total) break;
    pool.emplace_back(work, begin, std::min(total, begin + chunk));
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t si = 0; si < s_grid.size(); ++si) {
    SizeSummary sum;
    sum.sample_size = s_grid[si];
    for (std::size_t run = 0; run < runs; ++run) {
      const auto& row = report.rows[si * runs + run];
      sum.recovery_rate += row.recovered ? 1.0 : 0.0;
      sum.superset_rate += row.superset ? 1.0 : 0.0;
    }
    sum.recovery_rate /= static_cast<double>(runs);
    sum.superset_rate /= static_cast<double>(runs);
    report.summary.push_back(sum);
  }
  return report;
}

namespace {

struct GridConstraint {
  const LinearExpr* expr;
  bool equality;
};

double evaluate_expr(const LinearExpr& expr, const std::vector<double>& u) {
  double v = 0.0;
  for (const auto& term : expr.terms) v += term.coef * u[term.var];
  return v;
}

}  // namespace

double grid_oracle_statistic(const std::vector<double>& first_measure,
                             const std::vector<double>& second_measure,
                             const std::vector<EvaluationPoint>& points,
                             const ScaleSpec& scale, double grid_step) {
  if (points.empty()) throw DataError("grid oracle needs at least one point");
  if (first_measure.size() != points.size() ||
      second_measure.size() != points.size())
    throw DataError("measures must align with the point list");
  if (!(grid_step > 0.0)) throw DataError("grid step must be positive");
  const long long levels = std::llround(1.0 / grid_step);
  if (levels < 1 || levels > 20 ||
      std::abs(1.0 / grid_step - static_cast<double>(levels)) > 1e-9)
    throw DataError("grid step must be 1/G with integer G <= 20");

  ConstraintSet cs = build_constraints(points, scale);
  const std::size_t vars = cs.points.size();
  std::size_t free_vars = vars;
  if (cs.zero_index >= 0) --free_vars;
  if (cs.one_index >= 0) --free_vars;
  if (free_vars > 6)
    throw DataError("grid oracle supports at most 6 points besides anchors");

  std::vector<double> objective(vars, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int idx = cs.index_of(points[i]);
    objective[static_cast<std::size_t>(idx)] +=
        first_measure[i] - second_measure[i];
  }

  // Constraints become checkable once their highest variable is assigned.
  std::vector<std::vector<GridConstraint>> ready(vars);
  auto file = [&](const LinearExpr& expr, bool equality) {
    int top = -1;
    for (const auto& term : expr.terms) top = std::max(top, term.var);
    if (top >= 0)
      ready[static_cast<std::size_t>(top)].push_back({&expr, equality});
  };
  for (const auto& e : cs.equalities) file(e, true);
  for (const auto& m : cs.margined) file(m, false);

  std::vector<double> u(vars, 0.0);
  double best = std::numeric_limits<double>::infinity();

  auto feasible_at = [&](std::size_t v) {
    for (const auto& c : ready[v]) {
      const double val = evaluate_expr(*c.expr, u);
      if (c.equality ? std::abs(val) > 1e-9 : val < -1e-9) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t v, double partial) -> void {
    if (v == vars) {
      best = std::min(best, partial);
      return;
    }
    if (static_cast<int>(v) == cs.zero_index ||
        static_cast<int>(v) == cs.one_index) {
      u[v] = static_cast<int>(v) == cs.one_index ? 1.0 : 0.0;
      if (feasible_at(v)) self(self, v + 1, partial + objective[v] * u[v]);
      return;
    }
    for (long long level = 0; level <= levels; ++level) {
      u[v] = static_cast<double>(level) / static_cast<double>(levels);
      if (feasible_at(v)) self(self, v + 1, partial + objective[v] * u[v]);
    }
  };
  recurse(recurse, 0, 0.0);
  return best;
}

bool ecdf_dominates(const std::vector<double>& x_values,
                    const std::vector<double>& y_values) {
  if (x_values.empty() || y_values.empty())
    throw std::invalid_argument("empty sample");
  std::vector<double> pooled = x_values;
  pooled.insert(pooled.end(), y_values.begin(), y_values.end());
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
  const std::size_t nx = x_values.size(), ny = y_values.size();
  for (double t : pooled) {
    std::size_t below_x = 0, below_y = 0;
    for (double v : x_values) below_x += v <= t ? 1 : 0;
    for (double v : y_values) below_y += v <= t ? 1 : 0;
    // F_x(t) <= F_y(t), compared exactly via cross multiplication.
    if (below_x * ny > below_y * nx) return false;
  }
  return true;
}

}  // namespace gsdbench

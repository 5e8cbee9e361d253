#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "gsdbench/prefsys.hpp"
#include "gsdbench/synth.hpp"

using namespace gsdbench;

namespace {

bool mentions(const std::vector<std::string>& issues, const std::string& text) {
  return std::any_of(issues.begin(), issues.end(), [&](const std::string& s) {
    return s.find(text) != std::string::npos;
  });
}

// Single ordinal metric, three dataset types. The survival functions cross
// for both A-B directions, A beats C in every type, and every pairwise
// statistic is a multiple of 1/20.
PopulationModel crossing_model() {
  PopulationModel m;
  m.classifiers = {"A", "B", "C"};
  m.scale.metrics = {{"score", Scale::Ordinal}};
  m.probabilities = {0.4, 0.3, 0.3};
  m.types = {
      {{0.85}, {0.55}, {0.75}},
      {{0.45}, {0.95}, {0.35}},
      {{0.65}, {0.35}, {0.55}},
  };
  return m;
}

}  // namespace

TEST_CASE("shipped model is valid and population front is {A, B}") {
  const auto m = default_model();
  CHECK(validate_model(m).empty());
  REQUIRE(m.classifiers.size() == 3);
  REQUIRE(m.types.size() == 4);

  // A beats C componentwise in every type, so C can never enter the front.
  for (const auto& type : m.types)
    CHECK(point_order(type[0], type[2], m.scale) ==
          std::partial_ordering::greater);

  const auto pop = population_dominance_matrix(m);
  CHECK(pop.at(0, 2) >= -1e-9);
  CHECK(pop.at(2, 0) <= -0.2 + 1e-9);  // cardinal gap certificate
  // A and B are incomparable with a comfortable margin in both directions.
  CHECK(pop.at(0, 1) < -0.05);
  CHECK(pop.at(1, 0) < -0.05);
  CHECK(pop.at(1, 2) < -0.05);
  CHECK(pop.at(2, 1) < -0.05);

  const auto front = population_gsd_front(m);
  CHECK(front.members == std::vector<std::size_t>{0, 1});
  CHECK(front.kind == FrontKind::Population);
}

TEST_CASE("model validation pinpoints each defect") {
  auto m = default_model();
  m.probabilities.pop_back();
  CHECK(mentions(validate_model(m), "probability count"));

  m = default_model();
  m.probabilities = {0.5, 0.5, 0.2, -0.2};
  CHECK(mentions(validate_model(m), "negative type probability"));

  m = default_model();
  m.probabilities = {0.3, 0.3, 0.3, 0.2};
  CHECK(mentions(validate_model(m), "do not sum to 1"));

  m = default_model();
  m.types[1][2] = {0.5};
  CHECK(mentions(validate_model(m), "wrong dimension"));

  m = default_model();
  m.types[0][0][1] = 1.5;
  CHECK(mentions(validate_model(m), "value out of [0,1]"));

  m = default_model();
  m.classifiers[1] = "A";
  CHECK(mentions(validate_model(m), "duplicate classifier id"));

  m = default_model();
  std::swap(m.scale.metrics[0], m.scale.metrics[1]);
  CHECK(mentions(validate_model(m), "cardinal metrics must precede"));

  CHECK(mentions(validate_model(PopulationModel{}), "no classifiers"));
}

TEST_CASE("population statistics match the survival-function values") {
  const auto pop = population_dominance_matrix(crossing_model());
  CHECK(pop.at(0, 1) == doctest::Approx(-0.3).epsilon(1e-9));
  CHECK(pop.at(1, 0) == doctest::Approx(-0.4).epsilon(1e-9));
  CHECK(std::abs(pop.at(0, 2)) <= 1e-9);
  CHECK(pop.at(2, 0) == doctest::Approx(-0.4).epsilon(1e-9));
  CHECK(pop.at(1, 2) == doctest::Approx(-0.1).epsilon(1e-9));
  CHECK(pop.at(2, 1) == doctest::Approx(-0.3).epsilon(1e-9));
  CHECK(population_gsd_front(crossing_model()).members ==
        std::vector<std::size_t>{0, 1});
}

TEST_CASE("sampling is deterministic and honors the type distribution") {
  const auto m = crossing_model();
  const auto a = sample_table(m, 50, 42);
  const auto b = sample_table(m, 50, 42);
  CHECK(a.values == b.values);
  CHECK(a.datasets.front() == "d00001");
  CHECK(validate_table(a).empty());

  const auto c = sample_table(m, 50, 43);
  CHECK(a.values != c.values);

  CHECK_THROWS_AS(sample_table(m, 0, 1), DataError);

  PopulationModel single = m;
  single.probabilities = {1.0, 0.0, 0.0};
  const auto forced = sample_table(single, 10, 7);
  for (std::size_t d = 0; d < 10; ++d)
    CHECK(forced.at(0, d) == m.types[0][0]);

  // Law of large numbers: type frequencies near their probabilities.
  const auto big = sample_table(m, 10000, 5);
  std::vector<double> freq(3, 0.0);
  for (std::size_t d = 0; d < 10000; ++d) {
    for (std::size_t t = 0; t < 3; ++t)
      if (big.at(0, d) == m.types[t][0]) freq[t] += 1.0 / 10000.0;
  }
  for (std::size_t t = 0; t < 3; ++t) {
    const double sigma =
        std::sqrt(m.probabilities[t] * (1.0 - m.probabilities[t]) / 10000.0);
    CHECK(std::abs(freq[t] - m.probabilities[t]) <= 3.0 * sigma);
  }
}

TEST_CASE("small recovery experiment has coherent rows and summaries") {
  const auto m = crossing_model();
  const std::vector<std::size_t> grid = {30, 120};
  const auto report = consistency_experiment(m, grid, 8, 1.0, 7);
  CHECK(report.s_grid == grid);
  CHECK(report.runs == 8);
  REQUIRE(report.rows.size() == 16);
  REQUIRE(report.summary.size() == 2);

  for (std::size_t si = 0; si < 2; ++si) {
    double rec = 0.0, sup = 0.0;
    for (std::size_t run = 0; run < 8; ++run) {
      const auto& row = report.rows[si * 8 + run];
      CHECK(row.sample_size == grid[si]);
      CHECK(row.run == run);
      if (row.recovered) CHECK(row.superset);
      rec += row.recovered ? 0.125 : 0.0;
      sup += row.superset ? 0.125 : 0.0;
    }
    CHECK(report.summary[si].sample_size == grid[si]);
    CHECK(report.summary[si].recovery_rate == doctest::Approx(rec));
    CHECK(report.summary[si].superset_rate == doctest::Approx(sup));
    CHECK(report.summary[si].superset_rate >= report.summary[si].recovery_rate);
  }

  CHECK_THROWS_AS(consistency_experiment(m, {}, 8, 1.0, 7), DataError);
  CHECK_THROWS_AS(consistency_experiment(m, {30}, 0, 1.0, 7), DataError);
  CHECK_THROWS_AS(consistency_experiment(m, {30}, 8, 0.0, 7), DataError);
  CHECK_THROWS_AS(consistency_experiment(m, {0}, 8, 1.0, 7), DataError);
}

TEST_CASE("clones make the population order non-antisymmetric") {
  auto m = crossing_model();
  for (auto& type : m.types) type[1] = type[0];  // B becomes a copy of A
  CHECK_THROWS_AS(consistency_experiment(m, {20}, 2, 1.0, 1), DataError);
}

TEST_CASE("grid oracle reproduces the population statistics exactly") {
  const auto m = crossing_model();
  const auto pop = population_dominance_matrix(m);

  // Pool both supports, mass vectors aligned with the pooled points.
  auto pooled_case = [&](std::size_t i, std::size_t j) {
    std::vector<EvaluationPoint> points;
    std::vector<double> wi, wj;
    for (std::size_t t = 0; t < m.types.size(); ++t) {
      points.push_back(m.types[t][i]);
      wi.push_back(m.probabilities[t]);
      wj.push_back(0.0);
    }
    for (std::size_t t = 0; t < m.types.size(); ++t) {
      points.push_back(m.types[t][j]);
      wi.push_back(0.0);
      wj.push_back(m.probabilities[t]);
    }
    return grid_oracle_statistic(wi, wj, points, m.scale, 0.05);
  };

  CHECK(pooled_case(0, 1) == doctest::Approx(pop.at(0, 1)).epsilon(1e-9));
  CHECK(pooled_case(1, 0) == doctest::Approx(pop.at(1, 0)).epsilon(1e-9));
  CHECK(pooled_case(1, 2) == doctest::Approx(pop.at(1, 2)).epsilon(1e-9));
}

TEST_CASE("grid oracle respects forced values and reports infeasibility") {
  ScaleSpec cardinal;
  cardinal.metrics = {{"m", Scale::Cardinal}};
  const std::vector<EvaluationPoint> thirds = {{1.0 / 3.0}, {2.0 / 3.0}};
  // Equal spacing forces u = (1/3, 2/3); only grids containing 1/3 fit.
  const double fine = grid_oracle_statistic({1.0, 0.0}, {0.0, 1.0}, thirds,
                                            cardinal, 1.0 / 3.0);
  CHECK(fine == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
  CHECK(grid_oracle_statistic({1.0, 0.0}, {0.0, 1.0}, thirds, cardinal,
                              1.0 / 6.0) == doctest::Approx(-1.0 / 3.0));
  CHECK(grid_oracle_statistic({1.0, 0.0}, {0.0, 1.0}, thirds, cardinal,
                              1.0 / 20.0) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("grid oracle rejects unusable inputs") {
  ScaleSpec ordinal;
  ordinal.metrics = {{"m", Scale::Ordinal}};
  const std::vector<EvaluationPoint> pts = {{0.5}};
  CHECK_THROWS_AS(grid_oracle_statistic({1.0}, {1.0}, pts, ordinal, 0.07),
                  DataError);
  CHECK_THROWS_AS(grid_oracle_statistic({1.0}, {1.0}, pts, ordinal, 1.0 / 21.0),
                  DataError);
  CHECK_THROWS_AS(grid_oracle_statistic({1.0}, {1.0}, pts, ordinal, -0.1),
                  DataError);
  CHECK_THROWS_AS(grid_oracle_statistic({1.0, 0.5}, {1.0}, pts, ordinal, 0.1),
                  DataError);
  CHECK_THROWS_AS(grid_oracle_statistic({}, {}, {}, ordinal, 0.1), DataError);

  std::vector<EvaluationPoint> seven;
  std::vector<double> w;
  for (int i = 1; i <= 7; ++i) {
    seven.push_back({i / 8.0});
    w.push_back(1.0 / 7.0);
  }
  CHECK_THROWS_AS(grid_oracle_statistic(w, w, seven, ordinal, 0.1), DataError);
}

TEST_CASE("solver value never exceeds the grid value on tiny instances") {
  std::mt19937_64 eng(31);
  std::uniform_int_distribution<int> level(1, 19);
  std::uniform_int_distribution<int> npts(3, 4);
  std::uniform_int_distribution<int> mass(0, 4);

  for (int rep = 0; rep < 15; ++rep) {
    const int n_points = npts(eng);
    std::vector<EvaluationPoint> points;
    for (int i = 0; i < n_points; ++i) {
      EvaluationPoint p = {level(eng) / 20.0};
      if (std::find(points.begin(), points.end(), p) != points.end()) continue;
      points.push_back(p);
    }
    std::vector<double> w1(points.size(), 0.0), w2(points.size(), 0.0);
    double t1 = 0.0, t2 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      w1[i] = mass(eng);
      w2[i] = mass(eng);
      t1 += w1[i];
      t2 += w2[i];
    }
    if (t1 == 0.0 || t2 == 0.0) continue;
    for (std::size_t i = 0; i < points.size(); ++i) {
      w1[i] /= t1;
      w2[i] /= t2;
    }

    ScaleSpec ordinal;
    ordinal.metrics = {{"m", Scale::Ordinal}};
    const auto cs = build_constraints(points, ordinal);
    std::vector<double> masses(cs.points.size(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i)
      masses[cs.index_of(points[i])] += w1[i] - w2[i];
    const auto lp_problem = representation_problem(cs, masses, 0.0);
    const auto sol = lp::solve(lp_problem);
    REQUIRE(sol.status == lp::Status::Optimal);

    const double grid =
        grid_oracle_statistic(w1, w2, points, ordinal, 1.0 / 20.0);
    CHECK(sol.value <= grid + 1e-9);
    CHECK(grid <= sol.value + static_cast<double>(points.size()) / 20.0 + 1e-9);
  }
}

TEST_CASE("ecdf comparison matches hand evaluations") {
  CHECK(ecdf_dominates({0.5, 0.7}, {0.4, 0.6}));
  CHECK(!ecdf_dominates({0.4, 0.6}, {0.5, 0.7}));
  CHECK(!ecdf_dominates({0.5, 0.5}, {0.0, 0.9}));
  CHECK(!ecdf_dominates({0.0, 0.9}, {0.5, 0.5}));
  CHECK(ecdf_dominates({0.3, 0.8}, {0.3, 0.8}));
  CHECK(ecdf_dominates({0.3}, {0.3, 0.3}));
  CHECK(ecdf_dominates({0.3, 0.3}, {0.3}));
  CHECK_THROWS_AS(ecdf_dominates({}, {0.3}), std::invalid_argument);
}

TEST_CASE("single-metric ordinal dominance agrees with the ecdf rule") {
  std::mt19937_64 eng(77);
  std::uniform_int_distribution<int> level(0, 10);
  std::uniform_int_distribution<int> size(2, 8);
  for (int rep = 0; rep < 30; ++rep) {
    const int s = size(eng);
    PerformanceTable t;
    t.classifiers = {"A", "B"};
    t.scale.metrics = {{"m", Scale::Ordinal}};
    std::vector<double> a_vals, b_vals;
    for (int d = 0; d < s; ++d) {
      t.datasets.push_back("d" + std::to_string(d));
      a_vals.push_back(level(eng) / 10.0);
      b_vals.push_back(level(eng) / 10.0);
    }
    for (double v : a_vals) t.values.push_back({v});
    for (double v : b_vals) t.values.push_back({v});

    const double d_ab = dominance_statistic(t, 0, 1).value;
    const double d_ba = dominance_statistic(t, 1, 0).value;
    CHECK(dominates(d_ab) == ecdf_dominates(a_vals, b_vals));
    CHECK(dominates(d_ba) == ecdf_dominates(b_vals, a_vals));
  }
}

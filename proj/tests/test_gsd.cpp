#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "gsdbench/gsd.hpp"

using namespace gsdbench;

namespace {

// Single-metric table; scale decides whether differences carry meaning.
PerformanceTable one_metric(const std::vector<std::vector<double>>& rows,
                            Scale scale) {
  PerformanceTable t;
  const std::size_t s = rows.front().size();
  for (std::size_t c = 0; c < rows.size(); ++c)
    t.classifiers.push_back(std::string(1, static_cast<char>('A' + c)));
  for (std::size_t d = 0; d < s; ++d) t.datasets.push_back("D" + std::to_string(d));
  t.scale.metrics = {{"m0", scale}};
  for (const auto& row : rows)
    for (double v : row) t.values.push_back({v});
  return t;
}

PerformanceTable random_table(std::mt19937_64& eng, std::size_t k,
                              std::size_t s) {
  PerformanceTable t;
  for (std::size_t c = 0; c < k; ++c)
    t.classifiers.push_back("c" + std::to_string(c));
  for (std::size_t d = 0; d < s; ++d)
    t.datasets.push_back("d" + std::to_string(d));
  t.scale.metrics = {{"acc", Scale::Cardinal}, {"rob", Scale::Ordinal}};
  std::uniform_int_distribution<int> grid(0, 20);
  for (std::size_t i = 0; i < k * s; ++i)
    t.values.push_back({grid(eng) / 20.0, grid(eng) / 20.0});
  return t;
}

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

bool subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::all_of(a.begin(), a.end(),
                     [&](std::size_t x) { return contains(b, x); });
}

}  // namespace

TEST_CASE("statistic is zero when a classifier is compared with itself") {
  auto t = one_metric({{0.3, 0.7, 0.5}, {0.1, 0.9, 0.2}}, Scale::Cardinal);
  const auto r = dominance_statistic(t, 0, 0);
  CHECK(std::abs(r.value) <= 1e-12);
  CHECK(dominates(r.value));
}

TEST_CASE("identical samples in different order give zero both ways") {
  auto t = one_metric({{0.3, 0.7}, {0.7, 0.3}}, Scale::Cardinal);
  CHECK(std::abs(dominance_statistic(t, 0, 1).value) <= 1e-12);
  CHECK(std::abs(dominance_statistic(t, 1, 0).value) <= 1e-12);
}

TEST_CASE("mass pinned at the anchors yields the extreme values") {
  for (Scale sc : {Scale::Cardinal, Scale::Ordinal}) {
    auto t = one_metric({{1.0, 1.0}, {0.0, 0.0}}, sc);
    CHECK(dominance_statistic(t, 0, 1).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dominance_statistic(t, 1, 0).value == doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("cardinal scale can order samples the ordinal scale cannot") {
  // A concentrates at 0.5; B splits between 0.0 and 0.9. Treated ordinally
  // the survival functions cross, so both directions come out negative. The
  // cardinal difference constraints pin u(0.5) = 0.5 and force
  // u(0.9) >= 0.75, which makes A the weak winner.
  const std::vector<std::vector<double>> rows = {{0.5, 0.5}, {0.0, 0.9}};

  auto card = one_metric(rows, Scale::Cardinal);
  CHECK(std::abs(dominance_statistic(card, 0, 1).value) <= 1e-9);
  CHECK(dominance_statistic(card, 1, 0).value == doctest::Approx(-0.125).epsilon(1e-9));

  auto ord = one_metric(rows, Scale::Ordinal);
  CHECK(dominance_statistic(ord, 0, 1).value == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(dominance_statistic(ord, 1, 0).value == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("ordinal statistic equals the worst survival-function gap") {
  auto t = one_metric({{0.6, 0.8}, {0.2, 0.4}}, Scale::Ordinal);
  CHECK(std::abs(dominance_statistic(t, 0, 1).value) <= 1e-9);
  CHECK(dominance_statistic(t, 1, 0).value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("raising delta never lowers the statistic") {
  auto t = one_metric({{0.5, 0.5}, {0.0, 0.9}}, Scale::Cardinal);
  double prev = -2.0;
  for (double delta : {0.0, 0.25, 0.5, 1.0}) {
    const auto r = dominance_statistic(t, 1, 0, delta);
    CHECK(r.delta == delta);
    CHECK(r.margin == doctest::Approx(delta * r.max_margin));
    CHECK(r.value >= prev - 1e-9);
    prev = r.value;
  }
}

TEST_CASE("delta outside the unit interval is rejected") {
  auto t = one_metric({{0.5}, {0.4}}, Scale::Cardinal);
  const auto a = t.classifier_points(0);
  const auto b = t.classifier_points(1);
  const auto sys = build_pooled_system(a, b, t.scale);
  const auto masses = signed_masses(sys.constraints, a, {1.0}, b, {1.0});
  CHECK_THROWS_AS(minimize_over_representations(sys, masses, -0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(minimize_over_representations(sys, masses, 1.5),
                  std::invalid_argument);
}

TEST_CASE("signed masses accumulate duplicates with opposite signs") {
  std::vector<EvaluationPoint> first = {{0.2}, {0.2}, {0.6}};
  std::vector<EvaluationPoint> second = {{0.2}, {0.9}, {0.9}};
  ScaleSpec scale;
  scale.metrics = {{"m", Scale::Cardinal}};
  const auto sys = build_pooled_system(first, second, scale);
  const std::vector<double> w(3, 1.0 / 3.0);
  const auto masses = signed_masses(sys.constraints, first, w, second, w);
  double total = 0.0;
  for (double m : masses) total += m;
  CHECK(std::abs(total) <= 1e-12);
  CHECK(masses[sys.constraints.index_of({0.2})] == doctest::Approx(1.0 / 3.0));
  CHECK(masses[sys.constraints.index_of({0.6})] == doctest::Approx(1.0 / 3.0));
  CHECK(masses[sys.constraints.index_of({0.9})] == doctest::Approx(-2.0 / 3.0));
  CHECK(masses[sys.constraints.index_of({0.0})] == 0.0);
  CHECK(masses[sys.constraints.index_of({1.0})] == 0.0);

  CHECK_THROWS_AS(signed_masses(sys.constraints, first, {1.0}, second, w),
                  std::invalid_argument);
  std::vector<EvaluationPoint> stranger = {{0.35}};
  CHECK_THROWS_AS(
      signed_masses(sys.constraints, stranger, {1.0}, second, w),
      std::invalid_argument);
}

TEST_CASE("matrix agrees with pairwise statistics and has zero diagonal") {
  std::mt19937_64 eng(7);
  auto t = random_table(eng, 3, 5);
  const auto dm = dominance_matrix(t);
  REQUIRE(dm.classifiers.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(dm.at(i, i) == 0.0);
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(dm.at(i, j) == dominance_statistic(t, i, j).value);
      // inf(f) + inf(-f) <= 0 over any common feasible set.
      CHECK(dm.at(i, j) + dm.at(j, i) <= 1e-9);
    }
  }
}

TEST_CASE("pointwise chain condenses to a two-edge path") {
  auto t = one_metric({{0.9, 0.8}, {0.6, 0.5}, {0.3, 0.2}}, Scale::Cardinal);
  const auto g = dominance_graph(dominance_matrix(t));
  REQUIRE(g.groups.size() == 3);
  for (const auto& grp : g.groups) CHECK(grp.size() == 1);
  REQUIRE(g.edges.size() == 2);  // transitive edge A->C is not a cover edge
  CHECK(g.edges[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(g.edges[1] == std::pair<std::size_t, std::size_t>{1, 2});

  const auto dot = to_dot(g, t.classifiers);
  CHECK(dot.find("digraph dominance {") == 0);
  CHECK(dot.find("\"A\" -> \"B\";") != std::string::npos);
  CHECK(dot.find("\"B\" -> \"C\";") != std::string::npos);
  CHECK(dot.find("\"A\" -> \"C\"") == std::string::npos);
}

TEST_CASE("equivalent classifiers share one graph node") {
  auto t = one_metric({{0.3, 0.7}, {0.7, 0.3}}, Scale::Cardinal);
  const auto g = dominance_graph(dominance_matrix(t));
  REQUIRE(g.groups.size() == 1);
  CHECK(g.groups[0] == std::vector<std::size_t>{0, 1});
  CHECK(g.edges.empty());
  const auto dot = to_dot(g, t.classifiers);
  CHECK(dot.find("\"A = B\";") != std::string::npos);
  CHECK(dot.find("->") == std::string::npos);
}

TEST_CASE("front excludes exactly the beaten classifiers of a chain") {
  auto t = one_metric({{0.9, 0.8}, {0.6, 0.5}, {0.3, 0.2}}, Scale::Cardinal);
  const auto dm = dominance_matrix(t);
  const auto f = gsd_front(dm, 0.0);
  CHECK(f.members == std::vector<std::size_t>{0});
  CHECK(f.epsilon == 0.0);
  CHECK(f.kind == FrontKind::Empirical);
  const auto p = pareto_front(t);
  CHECK(p.members == std::vector<std::size_t>{0});
  CHECK(p.kind == FrontKind::Pareto);
}

TEST_CASE("mutually dominating classifiers both stay in the front") {
  auto t = one_metric({{0.3, 0.7}, {0.7, 0.3}}, Scale::Cardinal);
  const auto f = gsd_front(dominance_matrix(t), 0.5);
  CHECK(f.members == std::vector<std::size_t>{0, 1});
}

TEST_CASE("fronts shrink with epsilon and stay inside the pareto front") {
  std::mt19937_64 eng(2026);
  for (int rep = 0; rep < 20; ++rep) {
    auto t = random_table(eng, 4, 8);
    const auto dm = dominance_matrix(t);
    const auto f0 = gsd_front(dm, 0.0);
    const auto f1 = gsd_front(dm, 0.05);
    const auto f2 = gsd_front(dm, 0.2);
    CHECK(!f0.members.empty());
    CHECK(subset(f2.members, f1.members));
    CHECK(subset(f1.members, f0.members));
    CHECK(subset(f0.members, pareto_front(t).members));
  }
}

TEST_CASE("epsilon schedule decays with the fourth root of the suite size") {
  CHECK(epsilon_schedule(16) == doctest::Approx(0.5));
  CHECK(epsilon_schedule(1) == doctest::Approx(1.0));
  CHECK(epsilon_schedule(16, 2.0) == doctest::Approx(1.0));
  CHECK(epsilon_schedule(10000, 0.5) == doctest::Approx(0.05));
  CHECK_THROWS_AS(epsilon_schedule(0), std::invalid_argument);
}

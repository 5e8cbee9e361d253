#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "gsdbench/lp.hpp"

using namespace gsdbench::lp;

namespace {

Problem make(int vars, Sense sense) {
  Problem p;
  p.num_vars = vars;
  p.sense = sense;
  p.lower.assign(vars, 0.0);
  p.upper.assign(vars, std::numeric_limits<double>::infinity());
  return p;
}

}  // namespace

TEST_CASE("two-variable maximization hits the expected vertex") {
  Problem p = make(2, Sense::Maximize);
  p.objective = {{0, 3.0}, {1, 2.0}};
  p.rows.push_back({{{0, 1.0}, {1, 1.0}}, '<', 4.0});
  p.rows.push_back({{{0, 1.0}}, '<', 2.0});
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(2.0));
}

TEST_CASE("equality row with minimization") {
  Problem p = make(2, Sense::Minimize);
  p.objective = {{0, 1.0}, {1, 1.0}};
  p.rows.push_back({{{0, 1.0}, {1, 1.0}}, '=', 2.0});
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(2.0));
}

TEST_CASE("conflicting bound and row is infeasible") {
  Problem p = make(1, Sense::Maximize);
  p.objective = {{0, 1.0}};
  p.upper[0] = 0.0;
  p.rows.push_back({{{0, 1.0}}, '>', 1.0});
  CHECK(solve(p).status == Status::Infeasible);
}

TEST_CASE("missing upper bound in the objective direction is unbounded") {
  Problem p = make(2, Sense::Maximize);
  p.objective = {{0, 1.0}};
  p.rows.push_back({{{1, 1.0}}, '<', 5.0});
  CHECK(solve(p).status == Status::Unbounded);
}

TEST_CASE("degenerate pivoting terminates on the classic cycling instance") {
  Problem p = make(4, Sense::Minimize);
  p.objective = {{0, -0.75}, {1, 150.0}, {2, -0.02}, {3, 6.0}};
  p.rows.push_back({{{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, '<', 0.0});
  p.rows.push_back({{{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, '<', 0.0});
  p.rows.push_back({{{2, 1.0}}, '<', 1.0});
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("fixed variables are substituted out") {
  Problem p = make(2, Sense::Maximize);
  p.objective = {{0, 1.0}, {1, 1.0}};
  p.lower[0] = 0.3;
  p.upper[0] = 0.3;
  p.rows.push_back({{{0, 1.0}, {1, 2.0}}, '<', 1.3});
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.x[0] == doctest::Approx(0.3));
  CHECK(s.value == doctest::Approx(0.8));
}

TEST_CASE("objective constant is added to the reported value") {
  Problem p = make(1, Sense::Minimize);
  p.objective = {{0, 2.0}};
  p.objective_constant = 1.5;
  p.rows.push_back({{{0, 1.0}}, '>', 1.0});
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(3.5));
}

TEST_CASE("dependent equality rows are tolerated") {
  Problem p = make(2, Sense::Maximize);
  p.objective = {{0, 1.0}};
  p.rows.push_back({{{0, 1.0}, {1, 1.0}}, '=', 2.0});
  p.rows.push_back({{{0, 2.0}, {1, 2.0}}, '=', 4.0});
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(2.0));
}

TEST_CASE("pure bound problems work without rows") {
  Problem p = make(1, Sense::Maximize);
  p.objective = {{0, 1.0}};
  p.upper[0] = 0.7;
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(0.7));
}

TEST_CASE("negative lower bounds are shifted correctly") {
  Problem p = make(1, Sense::Minimize);
  p.objective = {{0, 1.0}};
  p.lower[0] = -5.0;
  p.upper[0] = 3.0;
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == doctest::Approx(-5.0));
  CHECK(s.x[0] == doctest::Approx(-5.0));
}

TEST_CASE("solutions satisfy their constraints within tolerance") {
  Problem p = make(3, Sense::Maximize);
  p.objective = {{0, 1.0}, {1, 2.0}, {2, -1.0}};
  p.rows.push_back({{{0, 1.0}, {1, 1.0}, {2, 1.0}}, '<', 2.0});
  p.rows.push_back({{{0, 1.0}, {1, -1.0}}, '>', -1.0});
  p.rows.push_back({{{1, 1.0}, {2, 1.0}}, '=', 1.0});
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.max_violation <= 1e-6);
  const double row3 = s.x[1] + s.x[2];
  CHECK(row3 == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("solver output is deterministic") {
  Problem p = make(4, Sense::Minimize);
  p.objective = {{0, 1.0}, {1, -1.0}, {2, 0.5}, {3, 0.25}};
  p.rows.push_back({{{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}}, '=', 2.0});
  p.rows.push_back({{{0, 1.0}, {2, -1.0}}, '>', -0.5});
  p.upper.assign(4, 1.0);
  Solution a = solve(p);
  Solution b = solve(p);
  REQUIRE(a.status == Status::Optimal);
  CHECK(a.value == b.value);
  CHECK(a.x == b.x);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("problem text export names sections") {
  Problem p = make(2, Sense::Maximize);
  p.objective = {{0, 1.0}, {1, 1.0}};
  p.rows.push_back({{{0, 1.0}, {1, 1.0}}, '<', 1.0});
  std::ostringstream os;
  write_lp(p, os, {"alpha", "beta"});
  const std::string text = os.str();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("alpha") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

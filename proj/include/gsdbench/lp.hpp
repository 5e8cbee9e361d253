#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace gsdbench::lp {

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

enum class Sense { Minimize, Maximize };

struct Term {
  int var = 0;
  double coef = 0.0;
};

// One linear constraint: sum(terms) op rhs, with op one of '<' (<=),
// '>' (>=), '=' (==).
struct Row {
  std::vector<Term> terms;
  char op = '>';
  double rhs = 0.0;
};

struct Problem {
  int num_vars = 0;
  Sense sense = Sense::Minimize;
  std::vector<Term> objective;
  double objective_constant = 0.0;
  std::vector<Row> rows;
  // Per-variable box bounds; lower == upper pins a variable.
  std::vector<double> lower;
  std::vector<double> upper;
};

struct Solution {
  Status status = Status::NumericalFailure;
  double value = 0.0;           // objective re-evaluated at x
  std::vector<double> x;
  double max_violation = 0.0;   // over all rows and bounds, absolute
  int iterations = 0;
  std::string message;
};

// Feasibility is certified to 1e-7 absolute, objective agreement between the
// tableau and the returned assignment to 1e-9 relative. Identical input bits
// give identical output bits; constraint order does not affect the optimum
// beyond those tolerances.
Solution solve(const Problem& problem);

// Debug dump in CPLEX LP text format, one problem per stream.
void write_lp(const Problem& problem, std::ostream& os,
              const std::vector<std::string>& var_names = {});

}  // namespace gsdbench::lp

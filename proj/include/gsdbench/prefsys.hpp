#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "gsdbench/core.hpp"
#include "gsdbench/lp.hpp"

namespace gsdbench {

// Componentwise order on evaluation points (all metrics higher-is-better).
// greater: x dominates y strictly; equivalent: identical coordinates.
// Throws std::invalid_argument on dimension mismatch.
std::partial_ordering point_order(const EvaluationPoint& x,
                                  const EvaluationPoint& y,
                                  const ScaleSpec& scale);

// Order on improvements: is stepping up from bot1 to top1 at least as big a
// gain as stepping from bot2 to top2? Cardinal coordinates compare by
// difference, ordinal ones by interval nesting. Both (top, bot) pairs must be
// weakly ordered under point_order; otherwise std::invalid_argument.
std::partial_ordering improvement_order(const EvaluationPoint& top1,
                                        const EvaluationPoint& bot1,
                                        const EvaluationPoint& top2,
                                        const EvaluationPoint& bot2,
                                        const ScaleSpec& scale);

// Canonical linear form over utility variables: terms sorted by variable,
// coefficients merged, zeros dropped.
struct LinearExpr {
  std::vector<lp::Term> terms;
};

// The utility-representation constraints induced by a point set: one LP
// variable per distinct point plus the two anchors (all-zeros pinned to 0,
// all-ones pinned to 1), equalities from indifferent improvements, and
// inequalities that must clear a margin xi chosen at solve time.
struct ConstraintSet {
  std::vector<EvaluationPoint> points;  // sorted, distinct
  int zero_index = -1;
  int one_index = -1;
  std::vector<LinearExpr> equalities;   // expr == 0
  std::vector<LinearExpr> margined;     // expr >= xi

  int index_of(const EvaluationPoint& p) const;  // -1 when absent
};

// Builds the constraint system for dedup(points + anchors). Strict
// constraints are pruned to covering relations, which preserves the feasible
// set at every margin (chains accumulate slack). Throws NumericalError when
// the system would exceed max_constraints.
ConstraintSet build_constraints(std::vector<EvaluationPoint> points,
                                const ScaleSpec& scale,
                                std::size_t max_constraints = 250000);

// Largest achievable common margin xi* of the strict constraints.
struct Granularity {
  double max_margin = 0.0;
  double margin_for(double delta) const { return delta * max_margin; }
};

// nullopt when the system is infeasible even at margin 0 (inconsistent).
std::optional<Granularity> granularity(const ConstraintSet& cs);

// A system is consistent when some assignment separates all strict
// constraints by a positive margin.
bool check_consistency(const ConstraintSet& cs);

// LP over the constraint set: minimize sum(masses[i] * u(point_i)) with all
// margined constraints required >= margin. masses must have one entry per
// point in cs.
lp::Problem representation_problem(const ConstraintSet& cs,
                                   const std::vector<double>& masses,
                                   double margin);

}  // namespace gsdbench

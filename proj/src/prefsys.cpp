#include "gsdbench/prefsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gsdbench/digraph.hpp"

namespace gsdbench {

namespace {

// Cardinal differences are compared with a small band: inputs are rounded to
// at most 6 decimals on ingestion, so mathematically distinct differences are
// at least 1e-6 apart while subtraction noise stays near machine epsilon.
// Without the band, 0.6 - 0.4 and 0.9 - 0.7 would compare unequal.
constexpr double kDiffTol = 1e-9;

}  // namespace

std::partial_ordering point_order(const EvaluationPoint& x,
                                  const EvaluationPoint& y,
                                  const ScaleSpec& scale) {
  if (x.size() != scale.size() || y.size() != scale.size())
    throw std::invalid_argument("point dimension does not match scale spec");
  bool ge = true, le = true;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < y[j]) ge = false;
    if (x[j] > y[j]) le = false;
  }
  if (ge && le) return std::partial_ordering::equivalent;
  if (ge) return std::partial_ordering::greater;
  if (le) return std::partial_ordering::less;
  return std::partial_ordering::unordered;
}

std::partial_ordering improvement_order(const EvaluationPoint& top1,
                                        const EvaluationPoint& bot1,
                                        const EvaluationPoint& top2,
                                        const EvaluationPoint& bot2,
                                        const ScaleSpec& scale) {
  const auto o1 = point_order(top1, bot1, scale);
  const auto o2 = point_order(top2, bot2, scale);
  if (o1 == std::partial_ordering::less || o1 == std::partial_ordering::unordered ||
      o2 == std::partial_ordering::less || o2 == std::partial_ordering::unordered)
    throw std::invalid_argument("improvement_order needs weakly ordered pairs");

  const std::size_t z = scale.cardinal_count();
  bool ge = true, le = true;
  for (std::size_t j = 0; j < scale.size(); ++j) {
    if (j < z) {
      const double d1 = top1[j] - bot1[j];
      const double d2 = top2[j] - bot2[j];
      if (d1 < d2 - kDiffTol) ge = false;
      if (d2 < d1 - kDiffTol) le = false;
    } else {
      // Nesting: pair 2's step must lie inside pair 1's step (for ge).
      if (!(top1[j] >= top2[j] && bot2[j] >= bot1[j])) ge = false;
      if (!(top2[j] >= top1[j] && bot1[j] >= bot2[j])) le = false;
    }
  }
  if (ge && le) return std::partial_ordering::equivalent;
  if (ge) return std::partial_ordering::greater;
  if (le) return std::partial_ordering::less;
  return std::partial_ordering::unordered;
}

int ConstraintSet::index_of(const EvaluationPoint& p) const {
  const auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || *it != p) return -1;
  return static_cast<int>(it - points.begin());
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

LinearExpr canonical(std::vector<lp::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const lp::Term& a, const lp::Term& b) { return a.var < b.var; });
  LinearExpr out;
  for (const auto& t : terms) {
    if (!out.terms.empty() && out.terms.back().var == t.var)
      out.terms.back().coef += t.coef;
    else
      out.terms.push_back(t);
  }
  std::erase_if(out.terms, [](const lp::Term& t) { return t.coef == 0.0; });
  return out;
}

using Signature = std::vector<std::pair<int, double>>;

Signature signature(const LinearExpr& e, bool sign_normalize) {
  Signature s;
  s.reserve(e.terms.size());
  double flip = 1.0;
  if (sign_normalize && !e.terms.empty() && e.terms.front().coef < 0.0)
    flip = -1.0;
  for (const auto& t : e.terms) s.emplace_back(t.var, flip * t.coef);
  return s;
}

}  // namespace

ConstraintSet build_constraints(std::vector<EvaluationPoint> points,
                                const ScaleSpec& scale,
                                std::size_t max_constraints) {
  const std::size_t n = scale.size();
  for (const auto& p : points)
    if (p.size() != n)
      throw std::invalid_argument("point dimension does not match scale spec");

  points.emplace_back(n, 0.0);
  points.emplace_back(n, 1.0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  ConstraintSet cs;
  cs.points = std::move(points);
  const int m = static_cast<int>(cs.points.size());
  cs.zero_index = cs.index_of(EvaluationPoint(n, 0.0));
  cs.one_index = cs.index_of(EvaluationPoint(n, 1.0));

  // Strict componentwise order and its covering relation.
  std::vector<std::vector<int>> above(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j &&
          point_order(cs.points[i], cs.points[j], scale) ==
              std::partial_ordering::greater)
        above[i].push_back(j);
  const auto point_cover = transitive_reduction(above);

  std::set<Signature> seen_margined;
  std::set<Signature> seen_equalities;
  auto add_margined = [&](std::vector<lp::Term> terms) {
    LinearExpr e = canonical(std::move(terms));
    if (e.terms.empty()) return;
    if (seen_margined.insert(signature(e, false)).second)
      cs.margined.push_back(std::move(e));
  };
  auto add_equality = [&](std::vector<lp::Term> terms) {
    LinearExpr e = canonical(std::move(terms));
    if (e.terms.empty()) return;
    if (seen_equalities.insert(signature(e, true)).second)
      cs.equalities.push_back(std::move(e));
  };

  for (int i = 0; i < m; ++i)
    for (int j : point_cover[i])
      add_margined({{i, 1.0}, {j, -1.0}});

  // Strictly ordered point pairs, grouped into indifference classes of the
  // improvement order; the strict improvement order then lives on class
  // representatives and is pruned to covering edges as well.
  struct StepPair {
    int top, bot;
  };
  std::vector<StepPair> pairs;
  for (int i = 0; i < m; ++i)
    for (int j : above[i]) pairs.push_back({i, j});
  const int np = static_cast<int>(pairs.size());

  auto pair_cmp = [&](int a, int b) {
    return improvement_order(cs.points[pairs[a].top], cs.points[pairs[a].bot],
                             cs.points[pairs[b].top], cs.points[pairs[b].bot],
                             scale);
  };

  UnionFind uf(static_cast<std::size_t>(np));
  for (int a = 0; a < np; ++a)
    for (int b = a + 1; b < np; ++b)
      if (pair_cmp(a, b) == std::partial_ordering::equivalent) uf.unite(a, b);

  std::vector<int> rep_of_class;            // pair index of each representative
  std::map<int, int> class_id;              // union-find root -> class index
  std::vector<int> cls(np);
  for (int a = 0; a < np; ++a) {
    const int root = uf.find(a);
    auto it = class_id.find(root);
    if (it == class_id.end()) {
      it = class_id.emplace(root, static_cast<int>(rep_of_class.size())).first;
      rep_of_class.push_back(root);
    }
    cls[a] = it->second;
  }
  const int nc = static_cast<int>(rep_of_class.size());

  for (int a = 0; a < np; ++a) {
    const int r = rep_of_class[cls[a]];
    if (a == r) continue;
    add_equality({{pairs[a].top, 1.0},
                  {pairs[a].bot, -1.0},
                  {pairs[r].top, -1.0},
                  {pairs[r].bot, 1.0}});
  }

  std::vector<std::vector<int>> class_above(nc);
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (a != b &&
          pair_cmp(rep_of_class[a], rep_of_class[b]) ==
              std::partial_ordering::greater)
        class_above[a].push_back(b);
  const auto class_cover = transitive_reduction(class_above);

  for (int a = 0; a < nc; ++a) {
    const StepPair& pa = pairs[rep_of_class[a]];
    for (int b : class_cover[a]) {
      const StepPair& pb = pairs[rep_of_class[b]];
      add_margined({{pa.top, 1.0},
                    {pa.bot, -1.0},
                    {pb.top, -1.0},
                    {pb.bot, 1.0}});
    }
  }

  const std::size_t total = cs.equalities.size() + cs.margined.size();
  if (total > max_constraints)
    throw NumericalError("constraint system needs " + std::to_string(total) +
                         " rows, above the configured cap of " +
                         std::to_string(max_constraints));
  return cs;
}

lp::Problem representation_problem(const ConstraintSet& cs,
                                   const std::vector<double>& masses,
                                   double margin) {
  if (masses.size() != cs.points.size())
    throw std::invalid_argument("mass vector does not match point count");
  lp::Problem p;
  p.num_vars = static_cast<int>(cs.points.size());
  p.sense = lp::Sense::Minimize;
  for (int i = 0; i < p.num_vars; ++i)
    if (masses[i] != 0.0) p.objective.push_back({i, masses[i]});
  p.lower.assign(p.num_vars, 0.0);
  p.upper.assign(p.num_vars, 1.0);
  p.lower[cs.one_index] = 1.0;
  p.upper[cs.zero_index] = 0.0;
  for (const auto& e : cs.equalities) p.rows.push_back({e.terms, '=', 0.0});
  for (const auto& e : cs.margined) p.rows.push_back({e.terms, '>', margin});
  return p;
}

std::optional<Granularity> granularity(const ConstraintSet& cs) {
  lp::Problem p;
  const int nu = static_cast<int>(cs.points.size());
  const int xi = nu;
  p.num_vars = nu + 1;
  p.sense = lp::Sense::Maximize;
  p.objective.push_back({xi, 1.0});
  p.lower.assign(p.num_vars, 0.0);
  p.upper.assign(p.num_vars, 1.0);
  p.lower[cs.one_index] = 1.0;
  p.upper[cs.zero_index] = 0.0;
  p.upper[xi] = 4.0;  // never binding: every margined row is bounded by 2
  for (const auto& e : cs.equalities) p.rows.push_back({e.terms, '=', 0.0});
  for (const auto& e : cs.margined) {
    lp::Row row{e.terms, '>', 0.0};
    row.terms.push_back({xi, -1.0});
    p.rows.push_back(std::move(row));
  }
  const lp::Solution s = lp::solve(p);
  if (s.status == lp::Status::Infeasible) return std::nullopt;
  if (s.status != lp::Status::Optimal)
    throw NumericalError("granularity LP failed: " + s.message);
  return Granularity{std::max(0.0, s.value)};
}

bool check_consistency(const ConstraintSet& cs) {
  const auto g = granularity(cs);
  return g.has_value() && g->max_margin > 1e-9;
}

}  // namespace gsdbench

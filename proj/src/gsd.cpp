#include "gsdbench/gsd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gsdbench/digraph.hpp"
#include "gsdbench/lp.hpp"

namespace gsdbench {

PooledSystem build_pooled_system(const std::vector<EvaluationPoint>& first,
                                 const std::vector<EvaluationPoint>& second,
                                 const ScaleSpec& scale) {
  std::vector<EvaluationPoint> pooled;
  pooled.reserve(first.size() + second.size());
  pooled.insert(pooled.end(), first.begin(), first.end());
  pooled.insert(pooled.end(), second.begin(), second.end());
  PooledSystem sys;
  sys.constraints = build_constraints(std::move(pooled), scale);
  const auto g = granularity(sys.constraints);
  if (!g)
    throw NumericalError(
        "pooled representation system is infeasible; this cannot happen for "
        "points inside the unit cube");
  sys.max_margin = g->max_margin;
  return sys;
}

std::vector<double> signed_masses(const ConstraintSet& cs,
                                  const std::vector<EvaluationPoint>& first,
                                  const std::vector<double>& first_weights,
                                  const std::vector<EvaluationPoint>& second,
                                  const std::vector<double>& second_weights) {
  if (first.size() != first_weights.size() ||
      second.size() != second_weights.size())
    throw std::invalid_argument("weights do not match sample sizes");
  std::vector<double> masses(cs.points.size(), 0.0);
  auto add = [&](const EvaluationPoint& p, double w) {
    const int i = cs.index_of(p);
    if (i < 0) throw std::invalid_argument("sample point missing from pool");
    masses[i] += w;
  };
  for (std::size_t i = 0; i < first.size(); ++i) add(first[i], first_weights[i]);
  for (std::size_t i = 0; i < second.size(); ++i)
    add(second[i], -second_weights[i]);
  return masses;
}

StatisticResult minimize_over_representations(const PooledSystem& system,
                                              const std::vector<double>& masses,
                                              double delta) {
  if (delta < 0.0 || delta > 1.0)
    throw std::invalid_argument("delta must lie in [0,1]");
  StatisticResult r;
  r.delta = delta;
  r.max_margin = system.max_margin;
  r.margin = delta * system.max_margin;
  const lp::Problem p =
      representation_problem(system.constraints, masses, r.margin);
  const lp::Solution s = lp::solve(p);
  if (s.status != lp::Status::Optimal)
    throw NumericalError("representation LP did not reach an optimum: " +
                         s.message);
  r.value = s.value;
  r.utilities = s.x;
  r.lp_iterations = s.iterations;
  return r;
}

namespace {

std::vector<double> uniform_weights(std::size_t s) {
  return std::vector<double>(s, 1.0 / static_cast<double>(s));
}

}  // namespace

StatisticResult dominance_statistic(const PerformanceTable& table,
                                    std::size_t first, std::size_t second,
                                    double delta) {
  const auto a = table.classifier_points(first);
  const auto b = table.classifier_points(second);
  const PooledSystem sys = build_pooled_system(a, b, table.scale);
  const auto masses = signed_masses(sys.constraints, a, uniform_weights(a.size()),
                                    b, uniform_weights(b.size()));
  return minimize_over_representations(sys, masses, delta);
}

DominanceMatrix dominance_matrix(const PerformanceTable& table, double delta) {
  const std::size_t k = table.classifiers.size();
  DominanceMatrix dm;
  dm.classifiers = table.classifiers;
  dm.delta = delta;
  dm.values.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto pi = table.classifier_points(i);
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto pj = table.classifier_points(j);
      const PooledSystem sys = build_pooled_system(pi, pj, table.scale);
      auto masses = signed_masses(sys.constraints, pi, uniform_weights(pi.size()),
                                  pj, uniform_weights(pj.size()));
      dm.values[i * k + j] = minimize_over_representations(sys, masses, delta).value;
      for (double& m : masses) m = -m;
      dm.values[j * k + i] = minimize_over_representations(sys, masses, delta).value;
    }
  }
  return dm;
}

DominanceGraph dominance_graph(const DominanceMatrix& matrix) {
  const std::size_t k = matrix.classifiers.size();
  std::vector<char> weak(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      weak[i * k + j] = (i == j) || dominates(matrix.at(i, j));

  // Reachability closure; mutually reachable classifiers collapse into one
  // group, which keeps the group-level graph acyclic by construction.
  std::vector<char> reach = weak;
  for (std::size_t mid = 0; mid < k; ++mid)
    for (std::size_t i = 0; i < k; ++i)
      if (reach[i * k + mid])
        for (std::size_t j = 0; j < k; ++j)
          if (reach[mid * k + j]) reach[i * k + j] = 1;

  DominanceGraph g;
  std::vector<int> group_of(k, -1);
  for (std::size_t i = 0; i < k; ++i) {
    if (group_of[i] >= 0) continue;
    const int gid = static_cast<int>(g.groups.size());
    g.groups.emplace_back();
    for (std::size_t j = i; j < k; ++j) {
      if (group_of[j] < 0 && reach[i * k + j] && reach[j * k + i]) {
        group_of[j] = gid;
        g.groups[gid].push_back(j);
      }
    }
  }

  const std::size_t ng = g.groups.size();
  std::vector<std::vector<int>> succ(ng);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (weak[i * k + j] && group_of[i] != group_of[j])
        succ[group_of[i]].push_back(group_of[j]);
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  const auto cover = transitive_reduction(succ);
  for (std::size_t a = 0; a < ng; ++a)
    for (int b : cover[a]) g.edges.emplace_back(a, static_cast<std::size_t>(b));
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::string to_dot(const DominanceGraph& graph,
                   const std::vector<std::string>& names) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    return out;
  };
  auto label = [&](std::size_t gid) {
    std::string out;
    for (std::size_t i = 0; i < graph.groups[gid].size(); ++i) {
      if (i > 0) out += " = ";
      out += escape(names[graph.groups[gid][i]]);
    }
    return out;
  };
  std::ostringstream os;
  os << "digraph dominance {\n  rankdir=TB;\n  node [shape=box];\n";
  for (std::size_t gid = 0; gid < graph.groups.size(); ++gid)
    os << "  \"" << label(gid) << "\";\n";
  for (const auto& [a, b] : graph.edges)
    os << "  \"" << label(a) << "\" -> \"" << label(b) << "\";\n";
  os << "}\n";
  return os.str();
}

FrontResult gsd_front(const DominanceMatrix& matrix, double epsilon) {
  const std::size_t k = matrix.classifiers.size();
  FrontResult f;
  f.epsilon = epsilon;
  f.kind = FrontKind::Empirical;
  for (std::size_t c = 0; c < k; ++c) {
    bool excluded = false;
    for (std::size_t o = 0; o < k && !excluded; ++o) {
      if (o == c) continue;
      excluded = dominates(matrix.at(o, c), epsilon) && !dominates(matrix.at(c, o));
    }
    if (!excluded) f.members.push_back(c);
  }
  return f;
}

FrontResult pareto_front(const PerformanceTable& table) {
  const std::size_t k = table.classifiers.size();
  const std::size_t s = table.datasets.size();
  FrontResult f;
  f.kind = FrontKind::Pareto;
  for (std::size_t c = 0; c < k; ++c) {
    bool excluded = false;
    for (std::size_t o = 0; o < k && !excluded; ++o) {
      if (o == c) continue;
      bool beats_everywhere = true;
      for (std::size_t d = 0; d < s && beats_everywhere; ++d)
        beats_everywhere = point_order(table.at(o, d), table.at(c, d),
                                       table.scale) ==
                           std::partial_ordering::greater;
      excluded = beats_everywhere;
    }
    if (!excluded) f.members.push_back(c);
  }
  return f;
}

double epsilon_schedule(std::size_t sample_size, double scale_constant) {
  if (sample_size < 1)
    throw std::invalid_argument("sample size must be positive");
  return scale_constant / std::pow(static_cast<double>(sample_size), 0.25);
}

}  // namespace gsdbench

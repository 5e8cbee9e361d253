#include "gsdbench/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

namespace gsdbench::lp {

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kOptTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense two-phase tableau. Columns: structural variables (shifted to start
// at 0), then one slack/surplus per inequality, then artificials. The last
// column is the rhs, the last row the reduced-cost row whose rhs cell holds
// minus the current objective.
struct Tableau {
  int rows = 0;
  int cols = 0;  // without rhs column
  std::vector<double> t;
  std::vector<int> basis;

  double& at(int i, int j) { return t[static_cast<std::size_t>(i) * (cols + 1) + j]; }
  double at(int i, int j) const { return t[static_cast<std::size_t>(i) * (cols + 1) + j]; }
  double& rhs(int i) { return at(i, cols); }

  void pivot(int pr, int pc) {
    const double p = at(pr, pc);
    const double inv = 1.0 / p;
    for (int j = 0; j <= cols; ++j) at(pr, j) *= inv;
    at(pr, pc) = 1.0;
    for (int i = 0; i <= rows; ++i) {
      if (i == pr) continue;
      const double f = at(i, pc);
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) at(i, j) -= f * at(pr, j);
      at(i, pc) = 0.0;
    }
    basis[pr] = pc;
  }
};

struct SimplexOutcome {
  enum { Ok, Unbounded, IterLimit } kind = Ok;
  int iterations = 0;
};

// Runs the pivot loop until the reduced costs are nonnegative. `allowed(j)`
// filters enterable columns (used to bar artificials in phase 2).
template <typename Allowed>
SimplexOutcome run_simplex(Tableau& tab, int max_iters, Allowed allowed) {
  SimplexOutcome out;
  bool bland = false;
  int stalled = 0;
  double last_obj = -tab.rhs(tab.rows);
  for (int iter = 0; iter < max_iters; ++iter) {
    int enter = -1;
    if (!bland) {
      double best = -kOptTol;
      for (int j = 0; j < tab.cols; ++j) {
        if (!allowed(j)) continue;
        const double c = tab.at(tab.rows, j);
        if (c < best) {
          best = c;
          enter = j;
        }
      }
    } else {
      for (int j = 0; j < tab.cols; ++j) {
        if (allowed(j) && tab.at(tab.rows, j) < -kOptTol) {
          enter = j;
          break;
        }
      }
    }
    if (enter < 0) {
      out.iterations = iter;
      return out;
    }

    int leave = -1;
    double best_ratio = kInf;
    for (int i = 0; i < tab.rows; ++i) {
      const double a = tab.at(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = tab.rhs(i) / a;
      if (ratio < best_ratio - kRatioTieTol) {
        best_ratio = ratio;
        leave = i;
      } else if (ratio <= best_ratio + kRatioTieTol && leave >= 0 &&
                 tab.basis[i] < tab.basis[leave]) {
        leave = i;
      }
    }
    if (leave < 0) {
      out.kind = SimplexOutcome::Unbounded;
      out.iterations = iter;
      return out;
    }

    tab.pivot(leave, enter);

    const double obj = -tab.rhs(tab.rows);
    if (last_obj - obj < 1e-13) {
      if (++stalled >= 64) bland = true;
    } else {
      stalled = 0;
    }
    last_obj = obj;
  }
  out.kind = SimplexOutcome::IterLimit;
  out.iterations = max_iters;
  return out;
}

Solution fail(const std::string& message) {
  Solution s;
  s.status = Status::NumericalFailure;
  s.message = message;
  return s;
}

double evaluate(const std::vector<Term>& form, const std::vector<double>& x) {
  double v = 0.0;
  for (const auto& t : form) v += t.coef * x[t.var];
  return v;
}

}  // namespace

Solution solve(const Problem& problem) {
  const int nv = problem.num_vars;
  if (static_cast<int>(problem.lower.size()) != nv ||
      static_cast<int>(problem.upper.size()) != nv)
    return fail("bounds arrays do not match num_vars");
  for (const auto& t : problem.objective)
    if (t.var < 0 || t.var >= nv) return fail("objective references unknown variable");
  for (const auto& row : problem.rows) {
    for (const auto& t : row.terms)
      if (t.var < 0 || t.var >= nv) return fail("row references unknown variable");
    if (row.op != '<' && row.op != '>' && row.op != '=')
      return fail("row has unknown relation");
  }

  Solution sol;
  for (int j = 0; j < nv; ++j) {
    if (!std::isfinite(problem.lower[j]))
      return fail("variables need finite lower bounds");
    if (problem.lower[j] > problem.upper[j] + kFeasTol) {
      sol.status = Status::Infeasible;
      sol.message = "empty variable box";
      return sol;
    }
  }

  // Pin fixed variables, shift the rest to start at zero.
  std::vector<int> column_of(nv, -1);
  std::vector<int> var_of;
  for (int j = 0; j < nv; ++j) {
    if (problem.upper[j] - problem.lower[j] > 0.0) {
      column_of[j] = static_cast<int>(var_of.size());
      var_of.push_back(j);
    }
  }
  const int n_act = static_cast<int>(var_of.size());

  const bool maximize = problem.sense == Sense::Maximize;
  std::vector<double> cost(n_act, 0.0);
  for (const auto& t : problem.objective) {
    if (column_of[t.var] >= 0)
      cost[column_of[t.var]] += maximize ? -t.coef : t.coef;
  }

  struct StdRow {
    std::vector<double> a;
    char op;
    double b;
  };
  std::vector<StdRow> std_rows;
  std_rows.reserve(problem.rows.size() + var_of.size());
  for (const auto& row : problem.rows) {
    StdRow r{std::vector<double>(n_act, 0.0), row.op, row.rhs};
    for (const auto& t : row.terms) {
      const int c = column_of[t.var];
      if (c >= 0) {
        r.a[c] += t.coef;
        r.b -= t.coef * problem.lower[t.var];
      } else {
        r.b -= t.coef * problem.lower[t.var];
      }
    }
    bool all_zero = true;
    for (double a : r.a)
      if (a != 0.0) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      const bool ok = (r.op == '<')   ? r.b >= -kFeasTol
                      : (r.op == '>') ? r.b <= kFeasTol
                                      : std::abs(r.b) <= kFeasTol;
      if (!ok) {
        sol.status = Status::Infeasible;
        sol.message = "constant row violated";
        return sol;
      }
      continue;
    }
    std_rows.push_back(std::move(r));
  }
  for (int c = 0; c < n_act; ++c) {
    const int j = var_of[c];
    if (std::isfinite(problem.upper[j])) {
      StdRow r{std::vector<double>(n_act, 0.0), '<',
               problem.upper[j] - problem.lower[j]};
      r.a[c] = 1.0;
      std_rows.push_back(std::move(r));
    }
  }

  const int m = static_cast<int>(std_rows.size());
  int n_slack = 0, n_art = 0;
  for (auto& r : std_rows) {
    if (r.b < 0.0) {
      for (double& a : r.a) a = -a;
      r.b = -r.b;
      if (r.op == '<')
        r.op = '>';
      else if (r.op == '>')
        r.op = '<';
    }
    // a.x >= 0 is -a.x <= 0, which a slack covers; the artificial (and with
    // it a fully degenerate phase-1 block) is only needed for positive rhs.
    if (r.b == 0.0 && r.op == '>') {
      for (double& a : r.a) a = -a;
      r.op = '<';
    }
    if (r.op != '=') ++n_slack;
    if (r.op != '<') ++n_art;
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = n_act + n_slack + n_art;
  tab.t.assign(static_cast<std::size_t>(m + 1) * (tab.cols + 1), 0.0);
  tab.basis.assign(m, -1);
  const int art_begin = n_act + n_slack;

  int slack_at = n_act, art_at = art_begin;
  for (int i = 0; i < m; ++i) {
    const StdRow& r = std_rows[i];
    for (int c = 0; c < n_act; ++c) tab.at(i, c) = r.a[c];
    tab.rhs(i) = r.b;
    if (r.op == '<') {
      tab.at(i, slack_at) = 1.0;
      tab.basis[i] = slack_at++;
    } else if (r.op == '>') {
      tab.at(i, slack_at) = -1.0;
      ++slack_at;
      tab.at(i, art_at) = 1.0;
      tab.basis[i] = art_at++;
    } else {
      tab.at(i, art_at) = 1.0;
      tab.basis[i] = art_at++;
    }
  }

  const int max_iters = std::max(2000, 50 * (m + tab.cols));
  int used_iters = 0;

  if (n_art > 0) {
    for (int j = art_begin; j < tab.cols; ++j) tab.at(m, j) = 1.0;
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] >= art_begin)
        for (int j = 0; j <= tab.cols; ++j) tab.at(m, j) -= tab.at(i, j);
    }
    auto phase1 = run_simplex(tab, max_iters, [](int) { return true; });
    used_iters += phase1.iterations;
    if (phase1.kind == SimplexOutcome::IterLimit)
      return fail("phase 1 iteration limit");
    if (phase1.kind == SimplexOutcome::Unbounded)
      return fail("phase 1 reported unbounded");
    if (-tab.rhs(m) > kFeasTol) {
      sol.status = Status::Infeasible;
      sol.iterations = used_iters;
      return sol;
    }
    // Pivot leftover artificials out of the basis; rows that cannot release
    // one are linear combinations of the others and are dropped.
    for (int i = m - 1; i >= 0; --i) {
      if (tab.basis[i] < art_begin) continue;
      int pc = -1;
      double best_mag = kPivotTol;
      for (int j = 0; j < art_begin; ++j) {
        const double mag = std::abs(tab.at(i, j));
        if (mag > best_mag) {
          best_mag = mag;
          pc = j;
        }
      }
      if (pc >= 0) {
        tab.pivot(i, pc);
      } else {
        for (int k = i; k + 1 < tab.rows; ++k) {
          for (int j = 0; j <= tab.cols; ++j) tab.at(k, j) = tab.at(k + 1, j);
          tab.basis[k] = tab.basis[k + 1];
        }
        --tab.rows;
        tab.basis.pop_back();
        for (int j = 0; j <= tab.cols; ++j)
          tab.at(tab.rows, j) = tab.at(tab.rows + 1, j);
        tab.t.resize(static_cast<std::size_t>(tab.rows + 1) * (tab.cols + 1));
      }
    }
  }

  // Phase 2: install the real objective and price out the basis.
  for (int j = 0; j <= tab.cols; ++j) tab.at(tab.rows, j) = 0.0;
  for (int c = 0; c < n_act; ++c) tab.at(tab.rows, c) = cost[c];
  for (int i = 0; i < tab.rows; ++i) {
    const int b = tab.basis[i];
    if (b < n_act && cost[b] != 0.0) {
      const double f = cost[b];
      for (int j = 0; j <= tab.cols; ++j)
        tab.at(tab.rows, j) -= f * tab.at(i, j);
      tab.at(tab.rows, b) = 0.0;
    }
  }
  auto phase2 = run_simplex(tab, max_iters, [art_begin](int j) { return j < art_begin; });
  used_iters += phase2.iterations;
  if (phase2.kind == SimplexOutcome::IterLimit)
    return fail("phase 2 iteration limit");
  if (phase2.kind == SimplexOutcome::Unbounded) {
    sol.status = Status::Unbounded;
    sol.iterations = used_iters;
    return sol;
  }

  std::vector<double> shifted(n_act, 0.0);
  for (int i = 0; i < tab.rows; ++i) {
    if (tab.basis[i] < n_act) shifted[tab.basis[i]] = tab.rhs(i);
    else if (tab.basis[i] >= art_begin && tab.rhs(i) > kFeasTol)
      return fail("artificial variable stuck in basis");
  }

  sol.x.assign(nv, 0.0);
  for (int j = 0; j < nv; ++j) {
    sol.x[j] = problem.lower[j];
    if (column_of[j] >= 0) sol.x[j] += shifted[column_of[j]];
  }

  double viol = 0.0;
  for (const auto& row : problem.rows) {
    const double v = evaluate(row.terms, sol.x);
    if (row.op == '<')
      viol = std::max(viol, v - row.rhs);
    else if (row.op == '>')
      viol = std::max(viol, row.rhs - v);
    else
      viol = std::max(viol, std::abs(v - row.rhs));
  }
  for (int j = 0; j < nv; ++j) {
    viol = std::max(viol, problem.lower[j] - sol.x[j]);
    if (std::isfinite(problem.upper[j]))
      viol = std::max(viol, sol.x[j] - problem.upper[j]);
  }
  sol.max_violation = viol;
  sol.iterations = used_iters;

  if (viol > 10.0 * kFeasTol)
    return fail("solution violates constraints beyond tolerance");

  // The tableau's running objective and the extracted assignment must agree
  // on the internal (shifted, minimized) objective; catches extraction bugs.
  const double tableau_obj = -tab.rhs(tab.rows);
  double internal_obj = 0.0;
  for (int c = 0; c < n_act; ++c) internal_obj += cost[c] * shifted[c];
  if (std::abs(tableau_obj - internal_obj) >
      1e-6 * std::max(1.0, std::abs(internal_obj)))
    return fail("tableau and assignment objectives disagree");

  sol.value = evaluate(problem.objective, sol.x) + problem.objective_constant;
  sol.status = Status::Optimal;
  return sol;
}

void write_lp(const Problem& problem, std::ostream& os,
              const std::vector<std::string>& var_names) {
  auto name = [&](int v) {
    if (v < static_cast<int>(var_names.size())) return var_names[v];
    return "x" + std::to_string(v);
  };
  auto form = [&](const std::vector<Term>& terms) {
    std::string s;
    bool first = true;
    for (const auto& t : terms) {
      if (t.coef == 0.0) continue;
      const double mag = std::abs(t.coef);
      s += first ? (t.coef < 0 ? "- " : "") : (t.coef < 0 ? " - " : " + ");
      if (mag != 1.0) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g ", mag);
        s += buf;
      }
      s += name(t.var);
      first = false;
    }
    if (first) s = "0 " + name(0);
    return s;
  };
  os << (problem.sense == Sense::Maximize ? "Maximize" : "Minimize") << "\n";
  os << " obj: " << form(problem.objective) << "\n";
  os << "Subject To\n";
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    const Row& r = problem.rows[i];
    const char* op = r.op == '<' ? "<=" : (r.op == '>' ? ">=" : "=");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", r.rhs);
    os << " c" << i << ": " << form(r.terms) << " " << op << " " << buf << "\n";
  }
  os << "Bounds\n";
  for (int j = 0; j < problem.num_vars; ++j) {
    char lo[64], hi[64];
    std::snprintf(lo, sizeof(lo), "%.17g", problem.lower[j]);
    std::snprintf(hi, sizeof(hi), "%.17g", problem.upper[j]);
    os << " " << lo << " <= " << name(j) << " <= " << hi << "\n";
  }
  os << "End\n";
}

}  // namespace gsdbench::lp

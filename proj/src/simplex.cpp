#include "polycast/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polycast/error.hpp"

namespace polycast {

int LinearProgram::add_var(std::string name, double cost) {
  var_names.push_back(std::move(name));
  objective.push_back(cost);
  return var_count() - 1;
}

int LinearProgram::add_row(Row row) {
  rows.push_back(std::move(row));
  return static_cast<int>(rows.size()) - 1;
}

namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), width_(cols + 1) {
    data_.assign(static_cast<std::size_t>(rows + 1) * width_, 0.0);
  }

  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * width_ + c]; }
  double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * width_ + c]; }
  double& rhs(int r) { return at(r, cols_); }
  double* row(int r) { return &data_[static_cast<std::size_t>(r) * width_]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int cost_row() const { return rows_; }

  void pivot(int pr, int pc) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    nz_.clear();
    for (int c = 0; c <= cols_; ++c) {
      if (prow[c] != 0.0) {
        prow[c] *= inv;
        nz_.push_back(c);
      }
    }
    prow[pc] = 1.0;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* rr = row(r);
      const double f = rr[pc];
      if (f == 0.0) continue;
      for (int c : nz_) {
        rr[c] -= f * prow[c];
        if (std::abs(rr[c]) < 1e-13) rr[c] = 0.0;
      }
      rr[pc] = 0.0;
    }
  }

 private:
  int rows_;
  int cols_;
  int width_;
  std::vector<double> data_;
  std::vector<int> nz_;
};

struct Runner {
  Tableau& t;
  std::vector<int>& basis;
  const std::vector<char>& eligible;
  const SimplexOptions& opt;
  long iterations = 0;

  // Returns Optimal, Unbounded or IterationLimit.
  LpStatus run() {
    int degenerate_streak = 0;
    const int cr = t.cost_row();
    while (true) {
      if (iterations >= opt.max_iterations) return LpStatus::IterationLimit;
      const bool bland = degenerate_streak >= opt.degenerate_switch;
      int enter = -1;
      double best = -opt.cost_tolerance;
      const double* cost = t.row(cr);
      for (int c = 0; c < t.cols(); ++c) {
        if (!eligible[c]) continue;
        if (cost[c] < best) {
          enter = c;
          if (bland) break;
          best = cost[c];
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < t.rows(); ++r) {
        const double a = t.at(r, enter);
        if (a <= opt.pivot_tolerance) continue;
        const double ratio = std::max(0.0, t.rhs(r)) / a;
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          leave = r;
        } else if (ratio <= best_ratio + 1e-12) {
          // Ties: lowest basic index under Bland, otherwise the sturdier pivot.
          const double held = t.at(leave, enter);
          if (bland ? basis[r] < basis[leave]
                    : (a > held + 1e-12 || (a >= held - 1e-12 && basis[r] < basis[leave])))
            leave = r;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      degenerate_streak = best_ratio <= 1e-12 ? degenerate_streak + 1 : 0;
      t.pivot(leave, enter);
      basis[leave] = enter;
      ++iterations;
    }
  }
};

}  // namespace

LpSolution solve_simplex(const LinearProgram& lp, const SimplexOptions& options) {
  const int n = lp.var_count();
  const int m = static_cast<int>(lp.rows.size());

  // Normalize to nonnegative right-hand sides.
  struct NormRow {
    const LinearProgram::Row* row;
    double sign;
    RowSense sense;
  };
  std::vector<NormRow> norm;
  norm.reserve(m);
  int slack_count = 0;
  int artificial_count = 0;
  for (const auto& row : lp.rows) {
    NormRow nr{&row, 1.0, row.sense};
    if (row.rhs < 0) {
      nr.sign = -1.0;
      if (row.sense == RowSense::LessEqual) nr.sense = RowSense::GreaterEqual;
      else if (row.sense == RowSense::GreaterEqual) nr.sense = RowSense::LessEqual;
    }
    if (nr.sense != RowSense::Equal) ++slack_count;
    if (nr.sense != RowSense::LessEqual) ++artificial_count;
    norm.push_back(nr);
  }

  const int slack_base = n;
  const int art_base = n + slack_count;
  const int cols = art_base + artificial_count;
  Tableau t(m, cols);
  std::vector<int> basis(m, -1);
  std::vector<char> is_artificial(cols, 0);

  int next_slack = slack_base;
  int next_art = art_base;
  for (int r = 0; r < m; ++r) {
    const auto& nr = norm[r];
    for (const auto& [var, coef] : nr.row->coeffs) {
      ensure(var >= 0 && var < n, ErrorCode::Internal, "LP row references unknown variable");
      t.at(r, var) += nr.sign * coef;
    }
    t.rhs(r) = nr.sign * nr.row->rhs;
    if (nr.sense == RowSense::LessEqual) {
      t.at(r, next_slack) = 1.0;
      basis[r] = next_slack++;
    } else {
      if (nr.sense == RowSense::GreaterEqual) t.at(r, next_slack++) = -1.0;
      t.at(r, next_art) = 1.0;
      is_artificial[next_art] = 1;
      basis[r] = next_art++;
    }
  }

  LpSolution sol;
  std::vector<char> eligible(cols, 1);
  const int cr = t.cost_row();

  // Phase 1: minimize the sum of artificials.
  if (artificial_count > 0) {
    for (int r = 0; r < m; ++r) {
      if (!is_artificial[basis[r]]) continue;
      const double* row = t.row(r);
      double* cost = t.row(cr);
      for (int c = 0; c <= cols; ++c)
        if (!is_artificial[c] || c == cols) cost[c] -= row[c];
    }
    Runner phase1{t, basis, eligible, options};
    const auto status = phase1.run();
    sol.iterations += phase1.iterations;
    if (status == LpStatus::IterationLimit) {
      sol.status = status;
      return sol;
    }
    if (-t.rhs(cr) > 1e-7) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis.
    for (int r = 0; r < m; ++r) {
      if (!is_artificial[basis[r]]) continue;
      int pc = -1;
      for (int c = 0; c < art_base; ++c) {
        if (std::abs(t.at(r, c)) > 1e-7) {
          pc = c;
          break;
        }
      }
      if (pc >= 0) {
        t.pivot(r, pc);
        basis[r] = pc;
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
    for (int c = art_base; c < cols; ++c) eligible[c] = 0;
  }

  // Phase 2 objective row.
  {
    double* cost = t.row(cr);
    std::fill(cost, cost + cols + 1, 0.0);
    for (int j = 0; j < n; ++j) cost[j] = lp.objective[j];
    for (int r = 0; r < m; ++r) {
      const int b = basis[r];
      const double cb = b < n ? lp.objective[b] : 0.0;
      if (cb == 0.0) continue;
      const double* row = t.row(r);
      for (int c = 0; c <= cols; ++c)
        if (row[c] != 0.0) cost[c] -= cb * row[c];
    }
  }
  Runner phase2{t, basis, eligible, options};
  const auto status = phase2.run();
  sol.iterations += phase2.iterations;
  sol.status = status;
  if (status != LpStatus::Optimal) return sol;

  sol.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) sol.x[basis[r]] = std::max(0.0, t.rhs(r));
  sol.value = 0.0;
  for (int j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];

  // The identity column of each row (slack or artificial) prices its dual.
  sol.duals.assign(m, 0.0);
  next_slack = slack_base;
  next_art = art_base;
  for (int r = 0; r < m; ++r) {
    int unit_col;
    if (norm[r].sense == RowSense::LessEqual) {
      unit_col = next_slack++;
    } else {
      if (norm[r].sense == RowSense::GreaterEqual) ++next_slack;
      unit_col = next_art++;
    }
    sol.duals[r] = -t.at(cr, unit_col) * norm[r].sign;
  }
  return sol;
}

std::string to_lp_format(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(17);
  auto term = [&](double coef, const std::string& name, bool first) {
    if (coef < 0) out << (first ? " -" : " - ");
    else out << (first ? " " : " + ");
    const double a = std::abs(coef);
    if (a != 1.0) out << a << ' ';
    out << name;
  };
  out << "\\ POISE-LP (compact edge-flow form)\nMinimize\n obj:";
  bool first = true;
  for (int j = 0; j < lp.var_count(); ++j) {
    if (lp.objective[j] == 0.0) continue;
    term(lp.objective[j], lp.var_names[j], first);
    first = false;
  }
  out << "\nSubject To\n";
  for (const auto& row : lp.rows) {
    out << ' ' << row.name << ':';
    bool f = true;
    for (const auto& [var, coef] : row.coeffs) {
      term(coef, lp.var_names[var], f);
      f = false;
    }
    switch (row.sense) {
      case RowSense::LessEqual: out << " <= "; break;
      case RowSense::Equal: out << " = "; break;
      case RowSense::GreaterEqual: out << " >= "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (const auto& name : lp.var_names) out << ' ' << name << " >= 0\n";
  out << "End\n";
  return out.str();
}

}  // namespace polycast

#include "polycast/revised_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polycast/error.hpp"

namespace polycast {

namespace {
constexpr double kMaxWeight = 1e12;
}  // namespace

void RevisedSimplex::grow(int rows) {
  if (rows <= m_cap_) return;
  int cap = std::max(rows, 2 * m_cap_ + 16);
  std::vector<double> next(static_cast<std::size_t>(cap) * cap, 0.0);
  for (int r = 0; r < row_count(); ++r)
    for (int c = 0; c < row_count(); ++c) next[static_cast<std::size_t>(r) * cap + c] = binv(r, c);
  binv_ = std::move(next);
  m_cap_ = cap;
}

int RevisedSimplex::add_row(const Entries& entries, double rhs, double slack_sign) {
  const int r = row_count();
  grow(r + 1);
  rhs_.push_back(rhs);
  for (const auto& [col, v] : entries) {
    ensure(col >= 0 && col < column_count(), ErrorCode::Internal, "row entry on unknown column");
    column_[col].emplace_back(r, v);
  }
  const int s = column_count();
  cost_.push_back(0.0);
  column_.push_back({{r, slack_sign}});
  is_basic_.push_back(1);
  slack_row_.push_back(r);
  slack_.push_back(s);

  // New inverse row: (e_r - a_B B^-1) / sign, where a_B are the new row's
  // coefficients on the current basic columns.
  std::vector<double> a_basic(r, 0.0);
  for (const auto& [col, v] : entries)
    if (is_basic_[col])
      for (int i = 0; i < r; ++i)
        if (basis_[i] == col) a_basic[i] += v;
  for (int c = 0; c <= r; ++c) binv(r, c) = 0.0;
  double activity = 0.0;
  for (int i = 0; i < r; ++i) {
    if (a_basic[i] == 0.0) continue;
    activity += a_basic[i] * xb_[i];
    for (int c = 0; c < r; ++c) binv(r, c) -= a_basic[i] * binv(i, c);
  }
  binv(r, r) = 1.0;
  for (int c = 0; c <= r; ++c) binv(r, c) /= slack_sign;
  for (int i = 0; i < r; ++i) binv(i, r) = 0.0;
  basis_.push_back(s);
  xb_.push_back((rhs - activity) / slack_sign);
  pi_.push_back(0.0);
  return r;
}

int RevisedSimplex::add_column(double cost, const Entries& entries) {
  for (const auto& [row, v] : entries)
    ensure(row >= 0 && row < row_count(), ErrorCode::Internal, "column entry on unknown row");
  cost_.push_back(cost);
  column_.push_back(entries);
  is_basic_.push_back(0);
  slack_row_.push_back(-1);
  return column_count() - 1;
}

void RevisedSimplex::set_basis(const std::vector<int>& basic) {
  ensure(static_cast<int>(basic.size()) == row_count(), ErrorCode::Internal, "basis size mismatch");
  std::fill(is_basic_.begin(), is_basic_.end(), 0);
  for (int c : basic) {
    ensure(!is_basic_[c], ErrorCode::Internal, "column repeated in basis");
    is_basic_[c] = 1;
  }
  basis_ = basic;
  refactor();
  for (double v : xb_) ensure(v >= -1e-9, ErrorCode::Internal, "installed basis is infeasible");
}

void RevisedSimplex::refactor() {
  const int m = row_count();
  // With rows S (basic slack) and N, and structural basic columns T:
  // B = [[D, A_ST], [0, A_NT]], B^-1 = [[D^-1, -D^-1 A_ST A_NT^-1], [0, A_NT^-1]].
  std::vector<int> slack_pos(m, -1), structural;
  for (int i = 0; i < m; ++i) {
    const int col = basis_[i];
    if (slack_row_[col] >= 0) slack_pos[slack_row_[col]] = i;
    else structural.push_back(i);
  }
  std::vector<int> nidx(m, -1), nrows;
  for (int r = 0; r < m; ++r)
    if (slack_pos[r] < 0) {
      nidx[r] = static_cast<int>(nrows.size());
      nrows.push_back(r);
    }
  const int t = static_cast<int>(structural.size());
  ensure(t == static_cast<int>(nrows.size()), ErrorCode::Internal, "singular basis");

  std::vector<double> a(static_cast<std::size_t>(t) * t, 0.0), ainv(static_cast<std::size_t>(t) * t, 0.0);
  auto at = [t](std::vector<double>& v, int r, int c) -> double& {
    return v[static_cast<std::size_t>(r) * t + c];
  };
  for (int q = 0; q < t; ++q)
    for (const auto& [row, v] : column_[basis_[structural[q]]])
      if (nidx[row] >= 0) at(a, nidx[row], q) += v;
  for (int r = 0; r < t; ++r) at(ainv, r, r) = 1.0;
  std::vector<int> a_support, inv_support;
  for (int col = 0; col < t; ++col) {
    int p = -1;
    double best = 1e-11;
    for (int r = col; r < t; ++r)
      if (std::abs(at(a, r, col)) > best) {
        best = std::abs(at(a, r, col));
        p = r;
      }
    ensure(p >= 0, ErrorCode::Internal, "singular basis");
    if (p != col)
      for (int c = 0; c < t; ++c) {
        std::swap(at(a, p, c), at(a, col, c));
        std::swap(at(ainv, p, c), at(ainv, col, c));
      }
    const double inv = 1.0 / at(a, col, col);
    a_support.clear();
    inv_support.clear();
    for (int c = col; c < t; ++c)
      if (at(a, col, c) != 0.0) {
        at(a, col, c) *= inv;
        a_support.push_back(c);
      }
    for (int c = 0; c < t; ++c)
      if (at(ainv, col, c) != 0.0) {
        at(ainv, col, c) *= inv;
        inv_support.push_back(c);
      }
    for (int r = 0; r < t; ++r) {
      if (r == col) continue;
      const double f = at(a, r, col);
      if (f == 0.0) continue;
      for (int c : a_support) at(a, r, c) -= f * at(a, col, c);
      for (int c : inv_support) at(ainv, r, c) -= f * at(ainv, col, c);
    }
  }
  // Row q of ainv (A_NT^-1) belongs to structural position q.

  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) binv(r, c) = 0.0;
  for (int q = 0; q < t; ++q)
    for (int n = 0; n < t; ++n) binv(structural[q], nrows[n]) = at(ainv, q, n);
  for (int r = 0; r < m; ++r)
    if (slack_pos[r] >= 0) binv(slack_pos[r], r) = 1.0 / column_[slack_[r]].front().second;
  for (int q = 0; q < t; ++q)
    for (const auto& [row, v] : column_[basis_[structural[q]]]) {
      if (nidx[row] >= 0) continue;
      const int pos = slack_pos[row];
      const double f = v / column_[slack_[row]].front().second;
      for (int n = 0; n < t; ++n) binv(pos, nrows[n]) -= f * at(ainv, q, n);
    }

  xb_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double v = 0.0;
    for (int r = 0; r < m; ++r) v += binv(i, r) * rhs_[r];
    xb_[i] = std::abs(v) < 1e-12 ? 0.0 : v;
  }
  since_refactor_ = 0;
  compute_duals();
}

void RevisedSimplex::compute_duals() {
  const int m = row_count();
  pi_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    for (int c = 0; c < m; ++c) pi_[c] += cb * binv(i, c);
  }
}

LpStatus RevisedSimplex::optimize(const SimplexOptions& opt) {
  const int m = row_count();
  compute_duals();
  std::vector<double> alpha(m);
  std::vector<int> support;
  int degenerate_streak = 0;
  long local = 0;
  for (;;) {
    if (local >= opt.max_iterations) return LpStatus::IterationLimit;
    const bool bland = degenerate_streak >= opt.degenerate_switch;
    // Devex pricing: largest d^2 / w among improving columns.
    weight_.resize(column_count(), 1.0);
    int enter = -1, steepest = -1;
    double best = 0.0, most_negative = 0.0;
    for (int j = 0; j < column_count(); ++j) {
      if (is_basic_[j]) continue;
      double d = cost_[j];
      for (const auto& [row, v] : column_[j]) d -= pi_[row] * v;
      if (d >= -opt.cost_tolerance) continue;
      if (bland) {
        enter = j;
        break;
      }
      if (d < most_negative) {
        most_negative = d;
        steepest = j;
      }
      const double score = d * d / weight_[j];
      if (score > best) {
        enter = j;
        best = score;
      }
    }
    if (enter < 0 && steepest >= 0) {
      std::fill(weight_.begin(), weight_.end(), 1.0);
      enter = steepest;
    }
    if (enter < 0) {
      if (since_refactor_ == 0) return LpStatus::Optimal;
      refactor();  // confirm with fresh duals
      continue;
    }
    double d_enter = cost_[enter];
    for (const auto& [row, v] : column_[enter]) d_enter -= pi_[row] * v;

    for (int r = 0; r < m; ++r) {
      double a = 0.0;
      for (const auto& [row, v] : column_[enter]) a += binv(r, row) * v;
      alpha[r] = a;
    }
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      const double a = alpha[r];
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = std::max(0.0, xb_[r]) / a;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        leave = r;
      } else if (ratio <= best_ratio + 1e-12) {
        const double held = alpha[leave];
        if (bland ? basis_[r] < basis_[leave]
                  : (a > held + 1e-12 || (a >= held - 1e-12 && basis_[r] < basis_[leave])))
          leave = r;
      }
    }
    if (leave < 0) return LpStatus::Unbounded;
    degenerate_streak = best_ratio <= 1e-12 ? degenerate_streak + 1 : 0;

    // Reference weights from the pivot row, before the inverse changes.
    const double wq = weight_[enter];
    const double aq = alpha[leave];
    for (int j = 0; j < column_count(); ++j) {
      if (is_basic_[j] || j == enter) continue;
      double a = 0.0;
      for (const auto& [row, v] : column_[j]) a += binv(leave, row) * v;
      if (a == 0.0) continue;
      const double ratio = a / aq;
      weight_[j] = std::min(kMaxWeight, std::max(weight_[j], ratio * ratio * wq));
    }
    weight_[basis_[leave]] = std::min(kMaxWeight, std::max(wq / (aq * aq), 1.0));

    // Pivot.
    const double theta = best_ratio;
    for (int r = 0; r < m; ++r) xb_[r] -= theta * alpha[r];
    xb_[leave] = theta;
    const double inv = 1.0 / alpha[leave];
    support.clear();
    for (int c = 0; c < m; ++c)
      if (binv(leave, c) != 0.0) {
        binv(leave, c) *= inv;
        support.push_back(c);
      }
    for (int r = 0; r < m; ++r) {
      if (r == leave || alpha[r] == 0.0) continue;
      const double f = alpha[r];
      for (int c : support) binv(r, c) -= f * binv(leave, c);
    }
    for (int c : support) pi_[c] += d_enter * binv(leave, c);
    is_basic_[basis_[leave]] = 0;
    is_basic_[enter] = 1;
    basis_[leave] = enter;
    ++iterations_;
    ++local;
    if (++since_refactor_ >= 1000) refactor();
  }
}

double RevisedSimplex::value() const {
  double v = 0.0;
  for (int i = 0; i < row_count(); ++i) v += cost_[basis_[i]] * xb_[i];
  return v;
}

std::vector<double> RevisedSimplex::primal() const {
  std::vector<double> x(column_count(), 0.0);
  for (int i = 0; i < row_count(); ++i) x[basis_[i]] = std::max(0.0, xb_[i]);
  return x;
}

}  // namespace polycast

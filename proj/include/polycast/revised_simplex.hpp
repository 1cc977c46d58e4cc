#pragma once

#include <utility>
#include <vector>

#include "polycast/simplex.hpp"

namespace polycast {

/// Primal revised simplex with an explicit dense basis inverse, built for
/// column and row generation: columns can be appended at any time, and rows
/// can be appended with their slack entering the basis. Every row is an
/// equality that includes its own slack column.
class RevisedSimplex {
 public:
  using Entries = std::vector<std::pair<int, double>>;

  /// Adds a row sum(entries) + sign * slack = rhs; returns the row index. The
  /// slack column (cost 0) becomes basic. Entries refer to existing columns.
  int add_row(const Entries& entries, double rhs, double slack_sign);
  /// Appends a nonbasic column at zero; entries refer to existing rows.
  int add_column(double cost, const Entries& entries);

  int slack_of(int row) const { return slack_[row]; }
  int row_count() const { return static_cast<int>(rhs_.size()); }
  int column_count() const { return static_cast<int>(cost_.size()); }

  /// Installs a basis (one column per row) and refactors. Throws Internal if
  /// the basis is singular or infeasible.
  void set_basis(const std::vector<int>& basic);

  /// Primal simplex from the current feasible basis.
  LpStatus optimize(const SimplexOptions& options = {});

  double value() const;
  std::vector<double> primal() const;
  const std::vector<double>& duals() const { return pi_; }
  long iterations() const { return iterations_; }

 private:
  void refactor();
  void compute_duals();
  double& binv(int r, int c) { return binv_[static_cast<std::size_t>(r) * m_cap_ + c]; }
  double binv(int r, int c) const { return binv_[static_cast<std::size_t>(r) * m_cap_ + c]; }
  void grow(int rows);

  std::vector<double> cost_;
  std::vector<Entries> column_;  // (row, value)
  std::vector<double> rhs_;
  std::vector<int> slack_;
  std::vector<int> slack_row_;  // per column: its row if it is a slack, else -1
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  std::vector<double> xb_;
  std::vector<double> pi_;
  std::vector<double> binv_;
  std::vector<double> weight_;  // devex reference weights per column
  int m_cap_ = 0;
  long iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace polycast

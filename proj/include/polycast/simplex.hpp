#pragma once

#include <string>
#include <utility>
#include <vector>

namespace polycast {

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// minimize c·x subject to rows, x >= 0.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, double>> coeffs;
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
    std::string name;
  };

  std::vector<std::string> var_names;
  std::vector<double> objective;
  std::vector<Row> rows;

  int add_var(std::string name, double cost = 0.0);
  int add_row(Row row);
  int var_count() const { return static_cast<int>(objective.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  /// Row duals y with reduced costs c - y A >= 0 at optimality.
  std::vector<double> duals;
  long iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-9;
  /// Consecutive degenerate pivots after which pricing switches from the
  /// largest-coefficient rule to Bland's rule until progress resumes.
  int degenerate_switch = 50;
  long max_iterations = 2'000'000;
};

/// Dense two-phase primal simplex. Pricing: most negative reduced cost with
/// lowest index on ties; Bland's rule during degenerate stalls. Ratio test
/// ties go to the larger pivot element, then the lowest basic variable index
/// (lowest index only under Bland). Deterministic.
LpSolution solve_simplex(const LinearProgram& lp, const SimplexOptions& options = {});

/// Writes the program in CPLEX LP text format.
std::string to_lp_format(const LinearProgram& lp);

}  // namespace polycast

#pragma once

#include <cstddef>
#include <vector>

namespace chainlab {

/// Result of a standard-form linear program.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  /// Equality-constraint multipliers y with c - A^T y >= 0 at the optimum.
  std::vector<double> dual;
};

/// Solves min c^T x subject to A x = b, x >= 0 by the two-phase dense
/// simplex method with Bland's anti-cycling rule. `a` is row-major with
/// `rows` rows and c.size() columns.
LpResult solve_standard_lp(const std::vector<double>& a, std::size_t rows, const std::vector<double>& b,
                           const std::vector<double>& c, double tol = 1e-9);

}  // namespace chainlab

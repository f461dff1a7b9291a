#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace coreproj {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearConstraint {
  std::vector<double> row;
  double rhs = 0.0;
};

/// maximize objective . x
/// s.t.     equalities:   row . x == rhs
///          inequalities: row . x <= rhs
///          lower <= x <= upper
/// Empty `lower` means x >= 0; empty `upper` means no upper bounds. Use
/// -kInf / kInf for free directions.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const { return objective.size(); }
  /// Marks every variable free.
  void make_free();
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> solution;
  double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Deterministic for a given input.
/// Throws std::invalid_argument on malformed programs (ragged rows, non-finite
/// coefficients, lower > upper).
LpOutcome solve_lp(const LinearProgram& lp, double pivot_tol = 1e-9);

}  // namespace coreproj

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polynet/linalg.hpp"

namespace polynet {

struct LinearConstraint {
  Vec row;
  double bound = 0.0;
};

/// minimize objective . x  subject to  ineqs: a.x <= b  and  eqs: a.x = b,
/// x free.
struct LinearProgram {
  std::size_t num_vars = 0;
  Vec objective;
  std::vector<LinearConstraint> ineqs;
  std::vector<LinearConstraint> eqs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double value = 0.0;
};

/// Dense two-phase primal simplex with Bland's rule. Deterministic for fixed
/// input. On iteration-cap overruns or failed constraint re-checks the solve
/// is replayed in exact rational arithmetic when the instance is small enough
/// (num_vars <= 30, rows <= 500); otherwise a NumericalError is raised.
LpResult lp_solve(const LinearProgram& lp, double tol = 1e-9);

/// Phase-1 style feasibility: returns the point maximizing the minimum
/// inequality slack (subject to the equalities), a plain feasible point when
/// no interior exists, or nothing when the system is infeasible. An empty
/// constraint system yields the origin.
std::optional<Vec> lp_feasible_point(std::size_t num_vars,
                                     const std::vector<LinearConstraint>& ineqs,
                                     const std::vector<LinearConstraint>& eqs,
                                     double tol = 1e-9);

}  // namespace polynet

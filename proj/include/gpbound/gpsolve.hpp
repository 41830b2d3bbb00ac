#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gpbound/gpmodel.hpp"

namespace gpbound {

struct SolverSettings {
  /// Relative objective tolerance, certified through the barrier duality gap.
  double tolerance = 1e-9;
  /// Newton iterations allowed per centering step.
  int max_iterations = 200;
  /// Barrier parameter growth per outer iteration.
  double barrier_decrease = 10.0;
  /// Phase-1 slack above this means the feasible set is empty.
  double infeasibility_threshold = 1e-7;
  /// JSON-lines iteration trace, one object per outer iteration.
  std::ostream* trace = nullptr;

  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, MaxIterations };

std::string to_string(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::MaxIterations;
  /// Objective in original GP units.
  double value = 0.0;
  /// Positive GP variables v = exp(y), indexed like the program's variables.
  std::vector<double> point;
  /// Certified relative optimality gap of `value`.
  double kkt_residual = 0.0;
  int iterations = 0;
  int outer_iterations = 0;
  /// Objective after each completed centering step.
  std::vector<double> objective_trace;
  /// Amount each inequality was loosened (log units) when phase 1 only found
  /// a boundary point. Zero in the ordinary case.
  double relaxation = 0.0;
};

struct FeasibilityReport {
  bool feasible = false;
  /// Smallest max_r g_r(y) found; at most the threshold when feasible.
  double slack = 0.0;
  /// Log-space point with every inequality at most `slack`.
  std::optional<std::vector<double>> point;
  int iterations = 0;
  SolveStatus status = SolveStatus::Optimal;
};

/// Minimizes the program with a log-barrier damped Newton method after
/// eliminating the affine equalities.
Solution solve(const LogConvexProgram& lcp, const SolverSettings& settings = {});

/// Minimizes a slack s >= g_r(y) for all rows subject to the equalities.
FeasibilityReport phase1_feasibility(const LogConvexProgram& lcp,
                                     const SolverSettings& settings = {});

}  // namespace gpbound

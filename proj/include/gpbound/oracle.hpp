#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpbound/bounds.hpp"
#include "gpbound/polyring.hpp"

namespace gpbound {

struct Violation {
  std::vector<double> point;
  double value = 0.0;
  /// bound - value, positive.
  double margin = 0.0;
};

struct ViolationReport {
  /// Feasible points evaluated.
  int samples = 0;
  double bound = 0.0;
  /// First few violations; `violation_count` has the total.
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  double min_observed = 0.0;
  std::vector<double> argmin;

  bool sound() const { return violation_count == 0; }
};

/// Points stored in ViolationReport::violations before only counting.
inline constexpr std::size_t kMaxStoredViolations = 32;

/// Samples the box [-M^{1/2d}, M^{1/2d}]^n, keeps points with
/// sum x_i^{2d} <= M and compares f against `bound`.
ViolationReport sample_ball_check(const Polynomial& p, double M, double bound,
                                  int samples, std::uint64_t seed);

/// Minimum of f over R^n, or over the ball when M is given, for n <= 2.
/// Returns -infinity when f is unbounded below.
ExtendedReal exact_min_small(const Polynomial& p, std::optional<double> M = std::nullopt);

struct SweepEntry {
  double lambda = 0.0;
  ExtendedReal value = ExtendedReal::neg_inf();
  /// Set when the solver failed to converge; `value` is then -infinity.
  bool failed = false;
};

struct SweepResult {
  double best_lambda = 0.0;
  ExtendedReal best_value = ExtendedReal::neg_inf();
  std::vector<SweepEntry> entries;
};

/// f_gp(f - lambda (M - sum x_i^{2d})) over the grid.
SweepResult lambda_sweep(const Polynomial& p, double M, std::span<const double> grid,
                         const BoundOptions& options = {});

}  // namespace gpbound

#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "gpbound/gpsolve.hpp"
#include "gpbound/polyring.hpp"

namespace gpbound {

/// A real number or -infinity, tagged rather than encoded as a float.
class ExtendedReal {
 public:
  static ExtendedReal neg_inf() { return ExtendedReal(); }
  static ExtendedReal finite(double v);

  bool is_finite() const { return finite_; }
  bool is_neg_inf() const { return !finite_; }
  /// Throws std::logic_error on -infinity.
  double value() const;
  /// -infinity maps to -HUGE_VAL; for arithmetic in tests and sampling.
  double as_double() const;

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;
  friend std::partial_ordering operator<=>(const ExtendedReal& a,
                                           const ExtendedReal& b);

  std::string to_string() const;

 private:
  ExtendedReal() = default;
  bool finite_ = false;
  double value_ = 0.0;
};

enum class BoundKind { Unconstrained, Ball };
enum class Provenance { ClosedForm, GpSolver };

std::string to_string(BoundKind k);
std::string to_string(Provenance p);

struct Bound {
  ExtendedReal value = ExtendedReal::neg_inf();
  BoundKind kind = BoundKind::Unconstrained;
  std::optional<double> M;
  Provenance provenance = Provenance::GpSolver;
  /// u_1* - f_{2d,1} for ball bounds.
  std::optional<double> lambda_star;
  std::optional<Solution> solver;
  /// Closed-form value recorded alongside a solver result, when one exists.
  std::optional<ExtendedReal> closed_form;
  /// Why the value is -infinity, when it is.
  std::string note;
};

struct BoundOptions {
  SolverSettings solver;
  /// Return the closed form directly when it applies, skipping the solver.
  bool fast = false;
  /// Throw when solver and closed form disagree beyond `cross_check_tolerance`.
  bool cross_check = false;
  double cross_check_tolerance = 1e-6;
};

/// Raised when the solver stops at its iteration limit; carries the best
/// iterate's bound.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, Bound best_effort)
      : std::runtime_error(what), best_effort_(std::move(best_effort)) {}
  const Bound& best_effort() const { return best_effort_; }

 private:
  Bound best_effort_;
};

/// f(0) - rho, a lower bound on f over R^n (or -infinity).
Bound f_gp(const Polynomial& p, const BoundOptions& options = {});

/// f(0) + M f_{2d,1} - rho_M, a lower bound on f over sum x_i^{2d} <= M.
Bound f_gp_ball(const Polynomial& p, double M, const BoundOptions& options = {});

/// Explicit answers when Delta(f) is empty, or has a single member and
/// every diagonal coefficient is 1.
std::optional<Bound> closed_form_bound(const Polynomial& p,
                                       std::optional<double> M = std::nullopt);

/// f - lambda (M - sum x_i^{2d}).
Polynomial lagrangian(const Polynomial& p, double lambda, double M);

/// Order that sorts the diagonal coefficients descending (stable); entry i
/// is the new position of variable i.
std::vector<std::size_t> descending_diagonal_order(const Polynomial& p);

}  // namespace gpbound

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gpbound/polyring.hpp"

namespace gpbound {

/// c * prod v_j^{a_j} over positive variables, c > 0.
struct GpMonomial {
  double coefficient = 1.0;
  std::vector<std::pair<std::size_t, double>> exponents;
};

using Posynomial = std::vector<GpMonomial>;

struct GpVariable {
  std::string name;
  /// Starting value handed to the solver.
  double initial = 1.0;
};

/// minimize objective s.t. each inequality posynomial <= 1 and each
/// equality monomial == 1.
struct GeometricProgram {
  std::vector<GpVariable> variables;
  Posynomial objective;
  std::vector<Posynomial> inequalities;
  std::vector<GpMonomial> equalities;
  /// Part of the objective cancelled when the bound is formed; the ball
  /// program sets this to M * f_{2d,1}.
  double reference_offset = 0.0;
  /// Constant term of the polynomial. The bound is
  /// bound_constant + reference_offset - objective, and the stopping
  /// tolerance is relative to its magnitude.
  double bound_constant = 0.0;
  /// Index of u_i for the ball program; empty for the unconstrained one.
  std::vector<std::size_t> u_variables;

  double objective_value(std::span<const double> v) const;
};

double monomial_value(const GpMonomial& m, std::span<const double> v);
double posynomial_value(const Posynomial& p, std::span<const double> v);

/// The unconstrained program has an empty feasible set for sign reasons alone.
struct PreInfeasible {
  std::string reason;
};

/// The lower bound program on R^n. Needs no particular variable order.
std::variant<GeometricProgram, PreInfeasible> build_unconstrained_gp(
    const SupportSets& s);

/// The ball program for {sum x_i^{2d} <= M}. The diagonal must already be
/// sorted in descending order; throws std::invalid_argument otherwise or
/// when M <= 0.
GeometricProgram build_ball_gp(const SupportSets& s, double M);

/// (|f_alpha|/2d)^{2d} * prod alpha_i^{alpha_i}, in log form.
double log_weight(double coeff, const Exponent& alpha, int two_d);

/// c * exp(a . y)
struct ExpTerm {
  double log_coefficient = 0.0;
  std::vector<std::pair<std::size_t, double>> exponents;
};

struct AffineEquality {
  std::vector<std::pair<std::size_t, double>> coefficients;
  double rhs = 0.0;
};

/// A geometric program after v = exp(y). Objective is sum_k exp(term_k)
/// (kept in original units), inequalities are log-sum-exp <= 0, equalities
/// are affine in y.
struct LogConvexProgram {
  std::vector<std::string> variable_names;
  std::vector<double> initial_point;
  std::vector<ExpTerm> objective;
  std::vector<std::vector<ExpTerm>> inequalities;
  std::vector<AffineEquality> equalities;
  double reference_offset = 0.0;
  double bound_constant = 0.0;

  std::size_t dimension() const { return variable_names.size(); }
  double objective_value(std::span<const double> y) const;
  /// log sum_k exp(term_k) for inequality row r.
  double constraint_value(std::size_t r, std::span<const double> y) const;
  double equality_residual(std::size_t e, std::span<const double> y) const;
};

double log_sum_exp(std::span<const double> values);

LogConvexProgram log_transform(const GeometricProgram& gp);

}  // namespace gpbound

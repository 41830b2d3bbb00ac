#include "gpbound/gpmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpbound {

double monomial_value(const GpMonomial& m, std::span<const double> v) {
  double log_value = std::log(m.coefficient);
  for (const auto& [j, a] : m.exponents) log_value += a * std::log(v[j]);
  return std::exp(log_value);
}

double posynomial_value(const Posynomial& p, std::span<const double> v) {
  double sum = 0.0;
  for (const auto& m : p) sum += monomial_value(m, v);
  return sum;
}

double GeometricProgram::objective_value(std::span<const double> v) const {
  return posynomial_value(objective, v);
}

double log_weight(double coeff, const Exponent& alpha, int two_d) {
  double w = two_d * std::log(std::abs(coeff) / two_d);
  for (int a : alpha) {
    if (a > 0) w += a * std::log(static_cast<double>(a));
  }
  return w;
}

namespace {

std::string exponent_label(const Exponent& alpha) {
  std::string s = "(";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(alpha[i]);
  }
  return s + ")";
}

double checked_exp(double log_value, const char* what) {
  const double v = std::exp(log_value);
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::overflow_error(std::string(what) +
                              " coefficient is outside double range");
  return v;
}

/// Shared part of both programs: z variables, the Delta^{<2d} objective
/// monomials and the |alpha| = 2d equalities.
struct ZBlock {
  /// z_index[a][i] is the variable of z_{alpha,i}, or npos when alpha_i = 0.
  std::vector<std::vector<std::size_t>> z_index;
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
};

ZBlock add_z_block(GeometricProgram& gp, const SupportSets& s,
                   std::span<const double> initial_by_row) {
  ZBlock block;
  const int two_d = s.two_d;
  for (const auto& t : s.delta) {
    std::vector<std::size_t> row(s.n, ZBlock::npos);
    for (std::size_t i = 0; i < s.n; ++i) {
      if (t.exponent[i] == 0) continue;
      row[i] = gp.variables.size();
      gp.variables.push_back({"z" + exponent_label(t.exponent) + "_" +
                                  std::to_string(i + 1),
                              initial_by_row[i]});
    }
    block.z_index.push_back(std::move(row));
  }
  for (std::size_t a = 0; a < s.delta.size(); ++a) {
    const auto& t = s.delta[a];
    const int deg = total_degree(t.exponent);
    const double w = log_weight(t.coefficient, t.exponent, two_d);
    if (deg < two_d) {
      const double gap = two_d - deg;
      GpMonomial m;
      m.coefficient = checked_exp(std::log(gap) + w / gap, "objective");
      for (std::size_t i = 0; i < s.n; ++i) {
        if (t.exponent[i] > 0)
          m.exponents.emplace_back(block.z_index[a][i], -t.exponent[i] / gap);
      }
      gp.objective.push_back(std::move(m));
    } else {
      GpMonomial m;
      m.coefficient = checked_exp(-w, "equality");
      for (std::size_t i = 0; i < s.n; ++i) {
        if (t.exponent[i] > 0)
          m.exponents.emplace_back(block.z_index[a][i], t.exponent[i]);
      }
      gp.equalities.push_back(std::move(m));
    }
  }
  return block;
}

}  // namespace

std::variant<GeometricProgram, PreInfeasible> build_unconstrained_gp(
    const SupportSets& s) {
  for (std::size_t i = 0; i < s.n; ++i) {
    const double f = s.diagonal[i];
    if (f < 0)
      return PreInfeasible{"f_{2d," + std::to_string(i + 1) + "} < 0"};
    if (f == 0) {
      for (const auto& t : s.delta) {
        if (t.exponent[i] > 0)
          return PreInfeasible{"f_{2d," + std::to_string(i + 1) +
                               "} = 0 but Delta(f) involves x_" +
                               std::to_string(i + 1)};
      }
    }
  }

  GeometricProgram gp;
  std::vector<double> init(s.n, 1.0);
  for (std::size_t i = 0; i < s.n; ++i)
    if (s.diagonal[i] > 0) init[i] = s.diagonal[i] / (s.delta.size() + 1.0);
  const ZBlock block = add_z_block(gp, s, init);

  for (std::size_t i = 0; i < s.n; ++i) {
    Posynomial row;
    for (const auto& zi : block.z_index) {
      if (zi[i] != ZBlock::npos) row.push_back({1.0 / s.diagonal[i], {{zi[i], 1.0}}});
    }
    if (!row.empty()) gp.inequalities.push_back(std::move(row));
  }
  gp.bound_constant = s.constant;
  return gp;
}

GeometricProgram build_ball_gp(const SupportSets& s, double M) {
  if (!(M > 0) || !std::isfinite(M))
    throw std::invalid_argument("ball radius M must be positive and finite");
  if (!std::is_sorted(s.diagonal.begin(), s.diagonal.end(), std::greater<>()))
    throw std::invalid_argument(
        "ball program needs the diagonal coefficients in descending order");

  const std::size_t n = s.n;
  const double lambda0 = std::max(0.0, -s.diagonal.back());
  std::vector<double> u_init(n);
  for (std::size_t i = 0; i < n; ++i) u_init[i] = s.diagonal[i] + lambda0 + 1.0;
  std::vector<double> z_init(n);
  for (std::size_t i = 0; i < n; ++i) z_init[i] = u_init[i] / (s.delta.size() + 1.0);

  GeometricProgram gp;
  const ZBlock block = add_z_block(gp, s, z_init);
  for (std::size_t i = 0; i < n; ++i) {
    gp.u_variables.push_back(gp.variables.size());
    gp.variables.push_back({"u_" + std::to_string(i + 1), u_init[i]});
  }
  const auto& u = gp.u_variables;

  gp.objective.insert(gp.objective.begin(), GpMonomial{M, {{u[0], 1.0}}});

  for (std::size_t i = 0; i < n; ++i) {
    Posynomial row;
    for (const auto& zi : block.z_index) {
      if (zi[i] != ZBlock::npos) row.push_back({1.0, {{zi[i], 1.0}, {u[i], -1.0}}});
    }
    if (!row.empty()) gp.inequalities.push_back(std::move(row));
  }
  if (s.diagonal[0] > 0) gp.inequalities.push_back({{s.diagonal[0], {{u[0], -1.0}}}});
  for (std::size_t i = 1; i < n; ++i) {
    Posynomial row{{1.0, {{u[i], 1.0}, {u[i - 1], -1.0}}}};
    const double drop = s.diagonal[i - 1] - s.diagonal[i];
    if (drop > 0) row.push_back({drop, {{u[i - 1], -1.0}}});
    gp.inequalities.push_back(std::move(row));
  }
  gp.reference_offset = M * s.diagonal[0];
  gp.bound_constant = s.constant;
  return gp;
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double mx = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(mx)) return mx;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

namespace {

ExpTerm to_exp_term(const GpMonomial& m) {
  return ExpTerm{std::log(m.coefficient), m.exponents};
}

double term_exponent(const ExpTerm& t, std::span<const double> y) {
  double v = t.log_coefficient;
  for (const auto& [j, a] : t.exponents) v += a * y[j];
  return v;
}

}  // namespace

double LogConvexProgram::objective_value(std::span<const double> y) const {
  double sum = 0.0;
  for (const auto& t : objective) sum += std::exp(term_exponent(t, y));
  return sum;
}

double LogConvexProgram::constraint_value(std::size_t r,
                                          std::span<const double> y) const {
  std::vector<double> vals;
  vals.reserve(inequalities[r].size());
  for (const auto& t : inequalities[r]) vals.push_back(term_exponent(t, y));
  return log_sum_exp(vals);
}

double LogConvexProgram::equality_residual(std::size_t e,
                                           std::span<const double> y) const {
  double v = -equalities[e].rhs;
  for (const auto& [j, a] : equalities[e].coefficients) v += a * y[j];
  return v;
}

LogConvexProgram log_transform(const GeometricProgram& gp) {
  LogConvexProgram lcp;
  for (const auto& v : gp.variables) {
    if (!(v.initial > 0)) throw std::invalid_argument("GP variable start must be positive");
    lcp.variable_names.push_back(v.name);
    lcp.initial_point.push_back(std::log(v.initial));
  }
  for (const auto& m : gp.objective) lcp.objective.push_back(to_exp_term(m));
  for (const auto& row : gp.inequalities) {
    std::vector<ExpTerm> terms;
    for (const auto& m : row) terms.push_back(to_exp_term(m));
    lcp.inequalities.push_back(std::move(terms));
  }
  for (const auto& m : gp.equalities) {
    lcp.equalities.push_back({m.exponents, -std::log(m.coefficient)});
  }
  lcp.reference_offset = gp.reference_offset;
  lcp.bound_constant = gp.bound_constant;
  return lcp;
}

}  // namespace gpbound

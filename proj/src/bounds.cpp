#include "gpbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gpbound/gpmodel.hpp"

namespace gpbound {

ExtendedReal ExtendedReal::finite(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("ExtendedReal::finite needs a finite value");
  ExtendedReal r;
  r.finite_ = true;
  r.value_ = v;
  return r;
}

double ExtendedReal::value() const {
  if (!finite_) throw std::logic_error("value of -infinity requested");
  return value_;
}

double ExtendedReal::as_double() const {
  return finite_ ? value_ : -HUGE_VAL;
}

std::partial_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
  if (!a.finite_ || !b.finite_) {
    if (a.finite_ == b.finite_) return std::partial_ordering::equivalent;
    return a.finite_ ? std::partial_ordering::greater : std::partial_ordering::less;
  }
  return a.value_ <=> b.value_;
}

std::string ExtendedReal::to_string() const {
  return finite_ ? std::to_string(value_) : std::string("-inf");
}

std::string to_string(BoundKind k) {
  return k == BoundKind::Unconstrained ? "unconstrained" : "ball";
}

std::string to_string(Provenance p) {
  return p == Provenance::ClosedForm ? "closed_form" : "gp_solver";
}

std::vector<std::size_t> descending_diagonal_order(const Polynomial& p) {
  std::vector<std::size_t> by_rank(p.n());
  std::iota(by_rank.begin(), by_rank.end(), 0);
  std::stable_sort(by_rank.begin(), by_rank.end(), [&](std::size_t a, std::size_t b) {
    return p.diagonal(a) > p.diagonal(b);
  });
  // by_rank[k] is the old variable placed at position k.
  return inverse_permutation(by_rank);
}

Polynomial lagrangian(const Polynomial& p, double lambda, double M) {
  if (!(lambda >= 0)) throw std::invalid_argument("multiplier must be nonnegative");
  if (!(M > 0)) throw std::invalid_argument("ball radius M must be positive");
  std::vector<Term> terms;
  for (const auto& [alpha, c] : p.terms()) terms.push_back({alpha, c});
  terms.push_back({Exponent(p.n(), 0), -lambda * M});
  for (std::size_t i = 0; i < p.n(); ++i) {
    Exponent e(p.n(), 0);
    e[i] = p.two_d();
    terms.push_back({std::move(e), lambda});
  }
  return Polynomial(p.n(), p.two_d(), terms);
}

std::optional<Bound> closed_form_bound(const Polynomial& p, std::optional<double> M) {
  if (M && !(*M > 0)) throw std::invalid_argument("ball radius M must be positive");
  const SupportSets s = support_sets(p);
  const double f0 = s.constant;
  Bound b;
  b.provenance = Provenance::ClosedForm;
  b.kind = M ? BoundKind::Ball : BoundKind::Unconstrained;
  b.M = M;

  if (s.delta.empty()) {
    const double dmin = *std::min_element(s.diagonal.begin(), s.diagonal.end());
    if (dmin >= 0) {
      b.value = ExtendedReal::finite(f0);
    } else if (M) {
      b.value = ExtendedReal::finite(f0 + *M * dmin);
    } else {
      b.value = ExtendedReal::neg_inf();
      b.note = "negative diagonal coefficient";
    }
    return b;
  }

  const bool unit_diagonal = std::all_of(s.diagonal.begin(), s.diagonal.end(),
                                         [](double d) { return d == 1.0; });
  if (s.delta.size() != 1 || !unit_diagonal) return std::nullopt;

  const Term& t = s.delta.front();
  const int two_d = s.two_d;
  const int deg = total_degree(t.exponent);
  const double log_c = log_weight(t.coefficient, t.exponent, two_d);
  if (deg == two_d) {
    if (log_c <= 0) {
      b.value = ExtendedReal::finite(f0);
    } else if (M) {
      b.value = ExtendedReal::finite(f0 - *M * std::expm1(log_c / two_d));
    } else {
      b.value = ExtendedReal::neg_inf();
      b.note = "equality constraint cannot be met inside the unit box";
    }
    return b;
  }

  const double gap = two_d - deg;
  const double g = std::exp(log_c / gap);
  const double global = f0 - gap * g;
  if (!M || *M >= deg * g) {
    b.value = ExtendedReal::finite(global);
    return b;
  }
  double log_inner = deg * std::log(*M / deg);
  for (int a : t.exponent)
    if (a > 0) log_inner += a * std::log(static_cast<double>(a));
  b.value = ExtendedReal::finite(f0 + *M -
                                 std::abs(t.coefficient) * std::exp(log_inner / two_d));
  return b;
}

namespace {

bool agrees(const ExtendedReal& a, const ExtendedReal& b, double tol) {
  if (a.is_neg_inf() || b.is_neg_inf()) return a.is_neg_inf() && b.is_neg_inf();
  return std::abs(a.value() - b.value()) <= tol * std::max(1.0, std::abs(b.value()));
}

void attach_closed_form(Bound& b, const std::optional<Bound>& cf,
                        const BoundOptions& options) {
  if (!cf) return;
  b.closed_form = cf->value;
  if (options.cross_check && !agrees(b.value, cf->value, options.cross_check_tolerance))
    throw std::logic_error("solver bound " + b.value.to_string() +
                           " disagrees with closed form " + cf->value.to_string());
}

}  // namespace

Bound f_gp(const Polynomial& p, const BoundOptions& options) {
  const auto cf = closed_form_bound(p);
  if (options.fast && cf) return *cf;

  Bound b;
  b.kind = BoundKind::Unconstrained;
  b.provenance = Provenance::GpSolver;
  const SupportSets s = support_sets(p);
  auto built = build_unconstrained_gp(s);
  if (auto* pre = std::get_if<PreInfeasible>(&built)) {
    b.value = ExtendedReal::neg_inf();
    b.note = pre->reason;
    attach_closed_form(b, cf, options);
    return b;
  }
  const auto& gp = std::get<GeometricProgram>(built);
  Solution sol = solve(log_transform(gp), options.solver);
  switch (sol.status) {
    case SolveStatus::Infeasible:
      b.value = ExtendedReal::neg_inf();
      b.note = "geometric program is infeasible";
      break;
    case SolveStatus::Optimal:
      b.value = ExtendedReal::finite(s.constant - sol.value);
      break;
    case SolveStatus::MaxIterations: {
      if (std::isfinite(sol.value)) b.value = ExtendedReal::finite(s.constant - sol.value);
      b.solver = std::move(sol);
      throw SolverFailure("solver reached its iteration limit", b);
    }
  }
  b.solver = std::move(sol);
  attach_closed_form(b, cf, options);
  return b;
}

Bound f_gp_ball(const Polynomial& p, double M, const BoundOptions& options) {
  if (!(M > 0) || !std::isfinite(M))
    throw std::invalid_argument("ball radius M must be positive and finite");
  const auto cf = closed_form_bound(p, M);
  if (options.fast && cf) return *cf;

  const auto order = descending_diagonal_order(p);
  const Polynomial sorted = permute_variables(p, order);
  const SupportSets s = support_sets(sorted);
  const GeometricProgram gp = build_ball_gp(s, M);
  Solution sol = solve(log_transform(gp), options.solver);

  Bound b;
  b.kind = BoundKind::Ball;
  b.M = M;
  b.provenance = Provenance::GpSolver;
  auto fill = [&] {
    // rho_M - M f_{2d,1}, formed before adding f(0) to limit cancellation.
    const double excess = sol.value - gp.reference_offset;
    b.value = ExtendedReal::finite(s.constant - excess);
    b.lambda_star =
        std::max(0.0, sol.point.at(gp.u_variables.front()) - s.diagonal.front());
  };
  if (sol.status == SolveStatus::Optimal) {
    fill();
  } else {
    if (!sol.point.empty() && std::isfinite(sol.value)) fill();
    b.solver = std::move(sol);
    throw SolverFailure(b.solver->status == SolveStatus::Infeasible
                            ? "ball program reported infeasible"
                            : "solver reached its iteration limit",
                        b);
  }
  b.solver = std::move(sol);
  attach_closed_form(b, cf, options);
  return b;
}

}  // namespace gpbound

#include "gpbound/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace gpbound {

ViolationReport sample_ball_check(const Polynomial& p, double M, double bound,
                                  int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (!(M > 0) || !std::isfinite(M)) throw std::invalid_argument("ball radius M must be positive");
  const std::size_t n = p.n();
  const int two_d = p.two_d();
  const double r = std::pow(M, 1.0 / two_d);
  const double slack = 1e-9 * (1.0 + std::abs(bound));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-r, r);
  ViolationReport rep;
  rep.bound = bound;
  rep.min_observed = std::numeric_limits<double>::infinity();

  // Rejection in very thin balls could loop for a long time; give up after
  // a fixed budget and report how many points were actually checked.
  const long long budget = 1000LL * samples + 1000;
  std::vector<double> x(n);
  for (long long attempt = 0; attempt < budget && rep.samples < samples; ++attempt) {
    double norm = 0.0;
    for (auto& xi : x) {
      xi = coord(rng);
      norm += std::pow(xi, two_d);
    }
    if (norm > M) continue;
    ++rep.samples;
    const double v = evaluate(p, x);
    if (v < rep.min_observed) {
      rep.min_observed = v;
      rep.argmin = x;
    }
    if (v < bound - slack) {
      ++rep.violation_count;
      if (rep.violations.size() < kMaxStoredViolations)
        rep.violations.push_back({x, v, bound - v});
    }
  }
  return rep;
}

namespace {

double horner(const std::vector<double>& a, double x) {
  double v = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> trimmed(std::vector<double> a) {
  while (a.size() > 1 && a.back() == 0.0) a.pop_back();
  return a;
}

std::vector<double> derivative(const std::vector<double>& a) {
  std::vector<double> d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(k * a[k]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

/// Real parts of the companion-matrix eigenvalues with small imaginary part.
std::vector<double> companion_real_roots(const std::vector<double>& b) {
  const std::size_t deg = b.size() - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  for (std::size_t i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < deg; ++i) C(i, deg - 1) = -b[i] / b[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()[i];
    if (std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(z))) out.push_back(z.real());
  }
  return out;
}

double bisect(const std::vector<double>& b, double lo, double hi) {
  double flo = horner(b, lo);
  while (hi - lo > 1e-10 * std::max(1.0, std::abs(lo))) {
    const double mid = 0.5 * (lo + hi);
    const double fm = horner(b, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Minimum of a univariate polynomial on [lo, hi].
double univariate_min_on(const std::vector<double>& a, double lo, double hi) {
  const auto b = trimmed(derivative(a));
  double best = std::min(horner(a, lo), horner(a, hi));
  auto consider = [&](double x) {
    if (x >= lo && x <= hi) best = std::min(best, horner(a, x));
  };
  constexpr int kCells = 20000;
  const double h = (hi - lo) / kCells;
  double x0 = lo, d0 = horner(b, lo);
  for (int k = 1; k <= kCells; ++k) {
    const double x1 = (k == kCells) ? hi : lo + k * h;
    const double d1 = horner(b, x1);
    consider(x0);
    if (d0 != 0.0 && d1 != 0.0 && (d0 < 0) != (d1 < 0)) consider(bisect(b, x0, x1));
    x0 = x1;
    d0 = d1;
  }
  if (b.size() > 1 && b.back() != 0.0) {
    for (double root : companion_real_roots(b)) {
      double x = root;
      for (int it = 0; it < 8; ++it) {
        const double slope = horner(derivative(b), x);
        if (slope == 0.0) break;
        x -= horner(b, x) / slope;
      }
      consider(x);
      consider(root);
    }
  }
  return best;
}

std::vector<double> univariate_coefficients(const Polynomial& p) {
  std::vector<double> a(p.two_d() + 1, 0.0);
  for (const auto& [alpha, c] : p.terms()) a[alpha[0]] = c;
  return trimmed(a);
}

ExtendedReal univariate_min(const Polynomial& p, std::optional<double> M) {
  const auto a = univariate_coefficients(p);
  if (M) {
    const double r = std::pow(*M, 1.0 / p.two_d());
    return ExtendedReal::finite(univariate_min_on(a, -r, r));
  }
  const std::size_t deg = a.size() - 1;
  if (deg == 0) return ExtendedReal::finite(a[0]);
  if (deg % 2 == 1 || a.back() < 0) return ExtendedReal::neg_inf();
  // Cauchy bound on the critical points.
  const auto b = derivative(a);
  double R = 1.0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k)
    R = std::max(R, 1.0 + std::abs(b[k] / b.back()));
  return ExtendedReal::finite(univariate_min_on(a, -R, R));
}

using Point = std::array<double, 2>;
using Projection = std::function<Point(Point)>;

/// Compass search from `x` with initial step `h`.
Point refine(const Polynomial& p, Point x, double h, const Projection& project,
             double min_step) {
  double fx = evaluate(p, x);
  static constexpr double dirs[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                        {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  while (h > min_step) {
    bool moved = false;
    for (const auto& d : dirs) {
      const Point y = project({x[0] + h * d[0], x[1] + h * d[1]});
      const double fy = evaluate(p, y);
      if (fy < fx) {
        x = y;
        fx = fy;
        moved = true;
        break;
      }
    }
    if (!moved) h *= 0.5;
  }
  return x;
}

struct GridMin {
  double value;
  Point point;
};

/// Grid over [-r, r]^2 restricted by `inside`, then compass refinement of the
/// best grid points.
GridMin grid_min(const Polynomial& p, double r, const std::function<bool(Point)>& inside,
                 const Projection& project) {
  constexpr int kGrid = 201;
  constexpr std::size_t kSeeds = 24;
  std::vector<GridMin> pts;
  const double h = 2 * r / (kGrid - 1);
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Point x{-r + i * h, -r + j * h};
      if (!inside(x)) continue;
      pts.push_back({evaluate(p, x), x});
    }
  }
  const std::size_t k = std::min(kSeeds, pts.size());
  std::partial_sort(pts.begin(), pts.begin() + k, pts.end(),
                    [](const GridMin& a, const GridMin& b) { return a.value < b.value; });
  GridMin best{std::numeric_limits<double>::infinity(), {0, 0}};
  for (std::size_t s = 0; s < k; ++s) {
    const Point x = refine(p, pts[s].point, h, project, 1e-9 * std::max(1.0, r));
    const double v = evaluate(p, x);
    if (v < best.value) best = {v, x};
  }
  return best;
}

Polynomial axis_restriction(const Polynomial& p, std::size_t axis) {
  std::vector<Term> terms;
  for (const auto& [alpha, c] : p.terms()) {
    if (alpha[1 - axis] == 0) terms.push_back({{alpha[axis]}, c});
  }
  return Polynomial(1, p.two_d(), terms);
}

ExtendedReal bivariate_min(const Polynomial& p, std::optional<double> M) {
  const int two_d = p.two_d();
  if (M) {
    const double r = std::pow(*M, 1.0 / two_d);
    auto norm = [two_d](Point x) { return std::pow(x[0], two_d) + std::pow(x[1], two_d); };
    auto inside = [&](Point x) { return norm(x) <= *M; };
    auto project = [&](Point x) -> Point {
      const double s = norm(x);
      if (s <= *M) return x;
      const double scale = std::pow(*M / s, 1.0 / two_d);
      return {x[0] * scale, x[1] * scale};
    };
    return ExtendedReal::finite(grid_min(p, r, inside, project).value);
  }

  for (std::size_t axis = 0; axis < 2; ++axis) {
    if (univariate_min(axis_restriction(p, axis), std::nullopt).is_neg_inf())
      return ExtendedReal::neg_inf();
  }
  // Grow the box until the minimizer sits well inside it twice in a row.
  std::optional<GridMin> previous;
  for (double R = 1.0; R <= 1e6; R *= 2) {
    auto inside = [](Point) { return true; };
    auto project = [R](Point x) -> Point {
      return {std::clamp(x[0], -R, R), std::clamp(x[1], -R, R)};
    };
    const GridMin g = grid_min(p, R, inside, project);
    const bool interior = std::max(std::abs(g.point[0]), std::abs(g.point[1])) < 0.5 * R;
    if (interior && previous &&
        std::abs(previous->value - g.value) <= 1e-9 * std::max(1.0, std::abs(g.value)))
      return ExtendedReal::finite(std::min(g.value, previous->value));
    previous = interior ? std::optional<GridMin>(g) : std::nullopt;
  }
  return ExtendedReal::neg_inf();
}

}  // namespace

ExtendedReal exact_min_small(const Polynomial& p, std::optional<double> M) {
  if (M && (!(*M > 0) || !std::isfinite(*M)))
    throw std::invalid_argument("ball radius M must be positive");
  if (p.n() == 1) return univariate_min(p, M);
  if (p.n() == 2) return bivariate_min(p, M);
  throw std::invalid_argument("exact minimization supports n <= 2 only");
}

SweepResult lambda_sweep(const Polynomial& p, double M, std::span<const double> grid,
                         const BoundOptions& options) {
  if (grid.empty()) throw std::invalid_argument("lambda grid must be nonempty");
  if (!(M > 0) || !std::isfinite(M)) throw std::invalid_argument("ball radius M must be positive");
  double dmin = p.diagonal(0);
  for (std::size_t i = 1; i < p.n(); ++i) dmin = std::min(dmin, p.diagonal(i));
  const double lambda0 = std::max(0.0, -dmin);

  SweepResult out;
  out.best_lambda = grid.front();
  for (double lambda : grid) {
    if (!(lambda >= 0)) throw std::invalid_argument("lambda grid values must be nonnegative");
    SweepEntry e;
    e.lambda = lambda;
    if (lambda >= lambda0) {
      try {
        e.value = f_gp(lagrangian(p, lambda, M), options).value;
      } catch (const SolverFailure&) {
        e.failed = true;
      }
    }
    if (e.value > out.best_value) {
      out.best_value = e.value;
      out.best_lambda = lambda;
    }
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace gpbound

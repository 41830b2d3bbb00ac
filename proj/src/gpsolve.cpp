#include "gpbound/gpsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include <Eigen/Dense>
#include "json.hpp"

namespace gpbound {

void SolverSettings::validate() const {
  if (!(tolerance > 0)) throw std::invalid_argument("solver tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(barrier_decrease > 1))
    throw std::invalid_argument("barrier_decrease must exceed 1");
  if (!(infeasibility_threshold > 0))
    throw std::invalid_argument("infeasibility threshold must be positive");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Newton decrement (squared, halved) at which a centering step is done.
constexpr double kCenteringTolerance = 1e-9;
constexpr int kMaxOuterIterations = 100;
// Phase 1 stops as soon as every row is this far inside.
constexpr double kPhase1Interior = -1e-1;
constexpr double kPhase1Margin = -1e-3;
// Phase 1 never pushes the slack below this.
constexpr double kPhase1Floor = -1.0;
// Longest Newton step in any log-coordinate.
constexpr double kMaxStep = 10.0;
// Phase 1 searches the box |w - w0| <= kPhase1Box (log units) around its
// start; without it the barrier is unbounded below on infeasible programs.
constexpr double kPhase1Box = 50.0;

using SparseRow = std::vector<std::pair<std::size_t, double>>;

/// y = offset + sum coefs_j * y_j over the surviving original variables.
struct AffineExpr {
  double offset = 0.0;
  std::map<std::size_t, double> coefs;
};

/// exp(c0 + a . w)
struct ReducedTerm {
  double c0 = 0.0;
  SparseRow a;
};

struct ReducedRow {
  std::vector<ReducedTerm> terms;
  std::vector<std::size_t> support;
};

/// A coordinate absent from the objective whose row terms all share one
/// exponent sign; it is sent to infinity and those terms vanish.
struct PushedCoordinate {
  std::size_t k = 0;
  double sign = 0.0;
  std::vector<ReducedTerm> terms;
};

// Dropped terms end at most this large (log scale).
constexpr double kPushedLogTerm = -37.0;

struct ReducedProgram {
  std::size_t dim = 0;
  bool inconsistent = false;
  std::vector<ReducedTerm> objective;
  std::vector<ReducedRow> rows;
  /// Original variable v as an affine function of the full w.
  std::vector<double> y_offset;
  std::vector<SparseRow> y_coefs;
  std::vector<std::size_t> free_vars;
  /// Presolve: compact coordinate -> full coordinate.
  std::vector<std::size_t> kept;
  std::vector<PushedCoordinate> pushed;
  Eigen::VectorXd base;

  Eigen::VectorXd restrict(const std::vector<double>& y) const {
    Eigen::VectorXd w(dim);
    for (std::size_t k = 0; k < dim; ++k) w[k] = y[free_vars[kept[k]]];
    return w;
  }
  Eigen::VectorXd lift(const Eigen::VectorXd& w) const {
    Eigen::VectorXd full = base;
    for (std::size_t k = 0; k < dim; ++k) full[kept[k]] = w[k];
    for (auto it = pushed.rbegin(); it != pushed.rend(); ++it) {
      double v = full[it->k];
      for (const auto& t : it->terms) {
        double rest = t.c0, ak = 0.0;
        for (const auto& [j, c] : t.a) {
          if (j == it->k) ak = c;
          else rest += c * full[j];
        }
        const double bound = (kPushedLogTerm - rest) / ak;
        v = it->sign > 0 ? std::min(v, bound) : std::max(v, bound);
      }
      full[it->k] = v;
    }
    return full;
  }
  std::vector<double> expand(const Eigen::VectorXd& w) const {
    const Eigen::VectorXd full = lift(w);
    std::vector<double> y(y_offset.size());
    for (std::size_t v = 0; v < y.size(); ++v) {
      double val = y_offset[v];
      for (const auto& [k, c] : y_coefs[v]) val += c * full[k];
      y[v] = val;
    }
    return y;
  }
};

/// Removes coordinates that only loosen rows as they grow in one direction,
/// then compacts the rest. Without this the barrier has no minimizer.
void presolve(ReducedProgram& rp, const Eigen::VectorXd& w0) {
  const std::size_t full = rp.dim;
  rp.base = w0;
  std::vector<bool> in_objective(full, false), active(full, true);
  for (const auto& t : rp.objective)
    for (const auto& [k, c] : t.a) in_objective[k] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < full; ++k) {
      if (!active[k] || in_objective[k]) continue;
      bool pos = false, neg = false;
      for (const auto& row : rp.rows)
        for (const auto& t : row.terms)
          for (const auto& [j, c] : t.a)
            if (j == k) (c > 0 ? pos : neg) = true;
      if (pos && neg) continue;
      active[k] = false;
      changed = true;
      if (!pos && !neg) continue;
      PushedCoordinate pc{k, pos ? 1.0 : -1.0, {}};
      for (auto& row : rp.rows) {
        std::erase_if(row.terms, [&](const ReducedTerm& t) {
          const bool hit = std::any_of(t.a.begin(), t.a.end(),
                                       [&](const auto& kv) { return kv.first == k; });
          if (hit) pc.terms.push_back(t);
          return hit;
        });
      }
      std::erase_if(rp.rows, [](const ReducedRow& r) { return r.terms.empty(); });
      rp.pushed.push_back(std::move(pc));
    }
  }
  std::vector<std::size_t> index(full, full);
  for (std::size_t k = 0; k < full; ++k) {
    if (!active[k]) continue;
    index[k] = rp.kept.size();
    rp.kept.push_back(k);
  }
  rp.dim = rp.kept.size();
  auto remap = [&](ReducedTerm& t) {
    for (auto& kv : t.a) kv.first = index[kv.first];
  };
  for (auto& t : rp.objective) remap(t);
  for (auto& row : rp.rows) {
    std::map<std::size_t, bool> sup;
    for (auto& t : row.terms) {
      remap(t);
      for (const auto& kv : t.a) sup[kv.first] = true;
    }
    row.support.clear();
    for (const auto& kv : sup) row.support.push_back(kv.first);
  }
}

ReducedProgram reduce(const LogConvexProgram& lcp) {
  const std::size_t nvar = lcp.dimension();
  std::vector<bool> eliminated(nvar, false);
  std::vector<AffineExpr> expr(nvar);
  ReducedProgram rp;

  for (const auto& eq : lcp.equalities) {
    std::map<std::size_t, double> row;
    double rhs = eq.rhs;
    double scale = 0.0;
    for (const auto& [v, a] : eq.coefficients) {
      scale = std::max(scale, std::abs(a));
      if (eliminated[v]) {
        rhs -= a * expr[v].offset;
        for (const auto& [j, c] : expr[v].coefs) row[j] += a * c;
      } else {
        row[v] += a;
      }
    }
    std::erase_if(row, [&](const auto& kv) {
      return std::abs(kv.second) <= 1e-14 * std::max(1.0, scale);
    });
    if (row.empty()) {
      if (std::abs(rhs) > 1e-9 * (1.0 + std::abs(eq.rhs))) rp.inconsistent = true;
      continue;
    }
    // Largest coefficient, smallest index on ties (map iterates in order).
    std::size_t pivot = row.begin()->first;
    double best = std::abs(row.begin()->second);
    for (const auto& [j, c] : row) {
      if (std::abs(c) > best) {
        best = std::abs(c);
        pivot = j;
      }
    }
    const double pc = row.at(pivot);
    AffineExpr pe;
    pe.offset = rhs / pc;
    for (const auto& [j, c] : row)
      if (j != pivot) pe.coefs[j] = -c / pc;
    for (std::size_t v = 0; v < nvar; ++v) {
      if (!eliminated[v]) continue;
      auto it = expr[v].coefs.find(pivot);
      if (it == expr[v].coefs.end()) continue;
      const double k = it->second;
      expr[v].coefs.erase(it);
      expr[v].offset += k * pe.offset;
      for (const auto& [j, c] : pe.coefs) expr[v].coefs[j] += k * c;
    }
    expr[pivot] = std::move(pe);
    eliminated[pivot] = true;
  }

  std::vector<std::size_t> w_index(nvar, nvar);
  for (std::size_t v = 0; v < nvar; ++v) {
    if (!eliminated[v]) {
      w_index[v] = rp.free_vars.size();
      rp.free_vars.push_back(v);
    }
  }
  rp.dim = rp.free_vars.size();
  rp.y_offset.assign(nvar, 0.0);
  rp.y_coefs.assign(nvar, {});
  for (std::size_t v = 0; v < nvar; ++v) {
    if (!eliminated[v]) {
      rp.y_coefs[v] = {{w_index[v], 1.0}};
    } else {
      rp.y_offset[v] = expr[v].offset;
      for (const auto& [j, c] : expr[v].coefs)
        if (c != 0.0) rp.y_coefs[v].emplace_back(w_index[j], c);
    }
  }

  auto reduce_term = [&](const ExpTerm& t) {
    ReducedTerm r;
    r.c0 = t.log_coefficient;
    std::map<std::size_t, double> a;
    for (const auto& [v, e] : t.exponents) {
      r.c0 += e * rp.y_offset[v];
      for (const auto& [k, c] : rp.y_coefs[v]) a[k] += e * c;
    }
    for (const auto& [k, c] : a)
      if (c != 0.0) r.a.emplace_back(k, c);
    return r;
  };
  for (const auto& t : lcp.objective) rp.objective.push_back(reduce_term(t));
  for (const auto& row : lcp.inequalities) {
    ReducedRow rr;
    std::map<std::size_t, bool> sup;
    for (const auto& t : row) {
      rr.terms.push_back(reduce_term(t));
      for (const auto& [k, c] : rr.terms.back().a) sup[k] = true;
    }
    for (const auto& [k, b] : sup) rr.support.push_back(k);
    rp.rows.push_back(std::move(rr));
  }
  Eigen::VectorXd w0(rp.dim);
  for (std::size_t k = 0; k < rp.dim; ++k) w0[k] = lcp.initial_point[rp.free_vars[k]];
  presolve(rp, w0);
  return rp;
}

double term_value(const ReducedTerm& t, const Eigen::VectorXd& w) {
  double v = t.c0;
  for (const auto& [k, c] : t.a) v += c * w[k];
  return v;
}

double row_value(const ReducedRow& row, const Eigen::VectorXd& w) {
  double mx = -kInf;
  for (const auto& t : row.terms) mx = std::max(mx, term_value(t, w));
  if (!std::isfinite(mx)) return mx;
  double sum = 0.0;
  for (const auto& t : row.terms) sum += std::exp(term_value(t, w) - mx);
  return mx + std::log(sum);
}

/// Value and gradient of a row's log-sum-exp; `probs` receives the softmax
/// weights for the Hessian.
double row_derivatives(const ReducedRow& row, const Eigen::VectorXd& w,
                       Eigen::VectorXd& grad, std::vector<double>& probs) {
  probs.resize(row.terms.size());
  double mx = -kInf;
  for (std::size_t k = 0; k < row.terms.size(); ++k) {
    probs[k] = term_value(row.terms[k], w);
    mx = std::max(mx, probs[k]);
  }
  double sum = 0.0;
  for (double& p : probs) {
    p = std::exp(p - mx);
    sum += p;
  }
  for (double& p : probs) p /= sum;
  grad.setZero();
  for (std::size_t k = 0; k < row.terms.size(); ++k)
    for (const auto& [j, c] : row.terms[k].a) grad[j] += probs[k] * c;
  return mx + std::log(sum);
}

void add_row_hessian(const ReducedRow& row, const std::vector<double>& probs,
                     const Eigen::VectorXd& grad, double hw, double gw,
                     Eigen::MatrixXd& hess, std::size_t offset = 0) {
  // hw * (sum p a a^T - g g^T) + gw * g g^T
  for (std::size_t k = 0; k < row.terms.size(); ++k) {
    const auto& a = row.terms[k].a;
    const double p = probs[k] * hw;
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : a) hess(offset + i, offset + j) += p * ci * cj;
  }
  const double outer = gw - hw;
  for (std::size_t i : row.support)
    for (std::size_t j : row.support)
      hess(offset + i, offset + j) += outer * grad[i] * grad[j];
}

struct Eval {
  bool in_domain = false;
  double value = kInf;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

/// t * sum_k exp(term_k) - sum_r log(-g_r), or with log of the sum in
/// place of the sum when `log_objective` is set.
class BarrierObjective {
 public:
  BarrierObjective(const ReducedProgram& rp, double t, bool log_objective = false)
      : rp_(rp), t_(t), log_objective_(log_objective) {
    if (!log_objective_) return;
    objective_row_.terms = rp.objective;
    std::map<std::size_t, bool> sup;
    for (const auto& term : rp.objective)
      for (const auto& [k, c] : term.a) sup[k] = true;
    for (const auto& [k, b] : sup) objective_row_.support.push_back(k);
  }

  Eval operator()(const Eigen::VectorXd& w, bool derivs) const {
    Eval e;
    const std::size_t n = rp_.dim;
    double value = 0.0;
    if (derivs) {
      e.grad = Eigen::VectorXd::Zero(n);
      e.hess = Eigen::MatrixXd::Zero(n, n);
    }
    Eigen::VectorXd g(n);
    std::vector<double> probs;
    if (log_objective_) {
      const double lv = derivs ? row_derivatives(objective_row_, w, g, probs)
                               : row_value(objective_row_, w);
      if (!std::isfinite(lv)) return e;
      value += t_ * lv;
      if (derivs) {
        for (std::size_t i : objective_row_.support) e.grad[i] += t_ * g[i];
        add_row_hessian(objective_row_, probs, g, t_, 0.0, e.hess);
      }
    }
    for (const auto& term : rp_.objective) {
      if (log_objective_) break;
      const double ev = std::exp(term_value(term, w));
      if (!std::isfinite(ev)) return e;
      value += t_ * ev;
      if (derivs) {
        for (const auto& [i, ci] : term.a) {
          e.grad[i] += t_ * ev * ci;
          for (const auto& [j, cj] : term.a) e.hess(i, j) += t_ * ev * ci * cj;
        }
      }
    }
    for (const auto& row : rp_.rows) {
      double gv;
      if (derivs) {
        gv = row_derivatives(row, w, g, probs);
      } else {
        gv = row_value(row, w);
      }
      if (!(gv < 0) || !std::isfinite(gv)) return e;
      value -= std::log(-gv);
      if (derivs) {
        const double inv = 1.0 / (-gv);
        for (std::size_t i : row.support) e.grad[i] += inv * g[i];
        add_row_hessian(row, probs, g, inv, inv * inv, e.hess);
      }
    }
    if (!std::isfinite(value)) return e;
    e.value = value;
    e.in_domain = true;
    return e;
  }

 private:
  const ReducedProgram& rp_;
  double t_;
  bool log_objective_;
  ReducedRow objective_row_;
};

/// t * s - log(s + 1) - sum_r log(s - g_r(w)) - box barrier, over x = (w, s).
class Phase1Objective {
 public:
  Phase1Objective(const ReducedProgram& rp, double t, const Eigen::VectorXd& center)
      : rp_(rp), t_(t), center_(center) {}

  Eval operator()(const Eigen::VectorXd& x, bool derivs) const {
    Eval e;
    const std::size_t n = rp_.dim;
    const Eigen::VectorXd w = x.head(n);
    const double s = x[n];
    if (!(s > kPhase1Floor)) return e;
    double value = t_ * s - std::log(s - kPhase1Floor);
    if (derivs) {
      e.grad = Eigen::VectorXd::Zero(n + 1);
      e.hess = Eigen::MatrixXd::Zero(n + 1, n + 1);
      const double inv = 1.0 / (s - kPhase1Floor);
      e.grad[n] = t_ - inv;
      e.hess(n, n) = inv * inv;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double up = center_[k] + kPhase1Box - w[k], down = w[k] - center_[k] + kPhase1Box;
      if (!(up > 0) || !(down > 0)) return e;
      value -= std::log(up) + std::log(down);
      if (derivs) {
        e.grad[k] += 1.0 / up - 1.0 / down;
        e.hess(k, k) += 1.0 / (up * up) + 1.0 / (down * down);
      }
    }
    Eigen::VectorXd g(n);
    std::vector<double> probs;
    for (const auto& row : rp_.rows) {
      const double gv = derivs ? row_derivatives(row, w, g, probs) : row_value(row, w);
      const double d = s - gv;
      if (!(d > 0) || !std::isfinite(d)) return e;
      value -= std::log(d);
      if (derivs) {
        const double inv = 1.0 / d;
        for (std::size_t i : row.support) e.grad[i] += inv * g[i];
        e.grad[n] -= inv;
        add_row_hessian(row, probs, g, inv, inv * inv, e.hess);
        for (std::size_t i : row.support) {
          e.hess(i, n) -= inv * inv * g[i];
          e.hess(n, i) -= inv * inv * g[i];
        }
        e.hess(n, n) += inv * inv;
      }
    }
    if (!std::isfinite(value)) return e;
    e.value = value;
    e.in_domain = true;
    return e;
  }

 private:
  const ReducedProgram& rp_;
  double t_;
  Eigen::VectorXd center_;
};

enum class CenteringOutcome { Converged, Stalled, IterationLimit, EarlyExit };

struct CenteringResult {
  CenteringOutcome outcome = CenteringOutcome::Converged;
  int iterations = 0;
  double decrement = 0.0;  // lambda^2 at the last evaluated point
};

/// Jacobi-scaled, regularized Newton direction.
Eigen::VectorXd newton_direction(const Eval& e) {
  const Eigen::Index n = e.grad.size();
  Eigen::VectorXd d(n);
  for (Eigen::Index i = 0; i < n; ++i)
    d[i] = 1.0 / std::sqrt(std::max(e.hess(i, i), 0.0) + 1e-300);
  Eigen::MatrixXd scaled = d.asDiagonal() * e.hess * d.asDiagonal();
  const Eigen::VectorXd rhs = -(d.asDiagonal() * e.grad);
  for (double reg = 1e-12; reg <= 1e3; reg *= 1e3) {
    Eigen::MatrixXd h = scaled;
    h.diagonal().array() += reg;
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    if (llt.info() != Eigen::Success) continue;
    Eigen::VectorXd step = d.asDiagonal() * llt.solve(rhs);
    if (step.allFinite()) return step;
  }
  return -e.grad.cwiseProduct(d).cwiseProduct(d);
}

/// Decrement target; below the rounding level of the value it is unreachable.
double centering_tolerance(double value) {
  return kCenteringTolerance + 16 * std::numeric_limits<double>::epsilon() * std::abs(value);
}

template <class Objective, class Stop>
CenteringResult center(const Objective& obj, Eigen::VectorXd& x, int max_iterations,
                       Stop&& early_exit) {
  CenteringResult res;
  Eval cur = obj(x, true);
  for (int it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd dir = newton_direction(cur);
    const double longest = dir.lpNorm<Eigen::Infinity>();
    if (longest > kMaxStep) dir *= kMaxStep / longest;
    const double slope = cur.grad.dot(dir);
    res.decrement = -slope;
    if (-slope / 2 <= centering_tolerance(cur.value)) return res;
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls, step *= 0.5) {
      const Eigen::VectorXd trial = x + step * dir;
      const Eval te = obj(trial, false);
      if (te.in_domain && te.value < cur.value &&
          te.value <= cur.value + 0.01 * step * slope) {
        x = trial;
        accepted = true;
        break;
      }
    }
    ++res.iterations;
    if (!accepted) {
      res.outcome = CenteringOutcome::Stalled;
      return res;
    }
    if (early_exit(x)) {
      res.outcome = CenteringOutcome::EarlyExit;
      return res;
    }
    cur = obj(x, true);
  }
  const Eigen::VectorXd dir = newton_direction(cur);
  res.decrement = -cur.grad.dot(dir);
  res.outcome = res.decrement / 2 <= centering_tolerance(cur.value)
                    ? CenteringOutcome::Converged
                    : CenteringOutcome::IterationLimit;
  return res;
}

double max_row_value(const ReducedProgram& rp, const Eigen::VectorXd& w) {
  double g = -kInf;
  for (const auto& row : rp.rows) g = std::max(g, row_value(row, w));
  return g;
}

double reduced_objective(const ReducedProgram& rp, const Eigen::VectorXd& w) {
  double f = 0.0;
  for (const auto& t : rp.objective) f += std::exp(term_value(t, w));
  return f;
}

/// Boundary-only feasibility where some row term must vanish: phase 1 drives
/// such a term down like 1/t, while terms fixed by equalities stay put. The
/// feasible set is then reached only in a limit and is treated as empty.
bool feasible_only_in_limit(const ReducedProgram& rp, const Eigen::VectorXd& w, double t) {
  const double gmax = max_row_value(rp, w);
  if (gmax < 0) return false;
  const double vanishing = -0.5 * std::log(std::max(t, 1e4));
  for (const auto& row : rp.rows) {
    if (row_value(row, w) < gmax - 1e-6) continue;
    for (const auto& term : row.terms)
      if (term_value(term, w) < vanishing) return true;
  }
  return false;
}

struct Phase1Internal {
  FeasibilityReport report;
  Eigen::VectorXd w;
};

Phase1Internal run_phase1(const ReducedProgram& rp, const Eigen::VectorXd& w0,
                          const SolverSettings& settings) {
  Phase1Internal out;
  out.w = w0;
  auto& rep = out.report;
  const double m = static_cast<double>(rp.rows.size() + 1 + 2 * rp.dim);
  double gmax = rp.rows.empty() ? -kInf : max_row_value(rp, w0);
  if (rp.rows.empty() || gmax < kPhase1Interior) {
    rep.feasible = true;
    rep.slack = gmax;
    return out;
  }
  const std::size_t n = rp.dim;
  Eigen::VectorXd x(n + 1);
  x.head(n) = w0;
  x[n] = (std::isfinite(gmax) ? gmax : 0.0) + 1.0;
  if (!std::isfinite(gmax)) {
    // Overflowing start; fall back to the origin of the reduced space.
    x.head(n).setZero();
    gmax = max_row_value(rp, x.head(n));
    x[n] = gmax + 1.0;
  }
  const Eigen::VectorXd box_center = x.head(n);
  double t = 1.0;
  auto stop = [&](const Eigen::VectorXd& xx) {
    return max_row_value(rp, xx.head(n)) < kPhase1Interior;
  };
  // Final verdict once the slack stops improving; `limit` marks an
  // iteration-limit exit, which only matters when the slack is still small.
  auto settle = [&](bool limit) {
    if (feasible_only_in_limit(rp, out.w, t)) {
      rep.feasible = false;
    } else {
      rep.feasible = gmax <= settings.infeasibility_threshold;
      if (limit) rep.status = SolveStatus::MaxIterations;
    }
    return out;
  };
  for (int outer = 0; outer < kMaxOuterIterations; ++outer) {
    const CenteringResult c =
        center(Phase1Objective(rp, t, box_center), x, settings.max_iterations, stop);
    rep.iterations += c.iterations;
    out.w = x.head(n);
    gmax = max_row_value(rp, out.w);
    rep.slack = gmax;
    if (settings.trace) {
      nlohmann::json line{{"phase", "phase1"}, {"outer", outer}, {"t", t},
                          {"slack", gmax}, {"newton", c.iterations}};
      *settings.trace << line.dump() << '\n';
    }
    if (gmax < kPhase1Margin || c.outcome == CenteringOutcome::EarlyExit) {
      rep.feasible = true;
      return out;
    }
    if (c.outcome == CenteringOutcome::IterationLimit) return settle(true);
    const double lower = x[n] - (m + c.decrement) / t;
    if (lower > settings.infeasibility_threshold) {
      rep.feasible = false;
      return out;
    }
    if ((m + c.decrement) / t < 1e-3 * settings.infeasibility_threshold ||
        c.outcome == CenteringOutcome::Stalled)
      return settle(false);
    t *= settings.barrier_decrease;
  }
  return settle(true);
}

}  // namespace

FeasibilityReport phase1_feasibility(const LogConvexProgram& lcp,
                                     const SolverSettings& settings) {
  settings.validate();
  const ReducedProgram rp = reduce(lcp);
  if (rp.inconsistent) return FeasibilityReport{false, kInf, std::nullopt, 0};
  Phase1Internal p1 = run_phase1(rp, rp.restrict(lcp.initial_point), settings);
  if (p1.report.feasible) p1.report.point = rp.expand(p1.w);
  return p1.report;
}

Solution solve(const LogConvexProgram& lcp, const SolverSettings& settings) {
  settings.validate();
  Solution sol;
  ReducedProgram rp = reduce(lcp);
  auto finish_point = [&](const Eigen::VectorXd& w) {
    const std::vector<double> y = rp.expand(w);
    sol.point.resize(y.size());
    for (std::size_t v = 0; v < y.size(); ++v) sol.point[v] = std::exp(y[v]);
    sol.value = lcp.objective_value(y);
  };
  if (rp.inconsistent) {
    sol.status = SolveStatus::Infeasible;
    return sol;
  }

  Eigen::VectorXd w = rp.restrict(lcp.initial_point);
  if (!rp.rows.empty()) {
    const double g0 = max_row_value(rp, w);
    // The ball program starts with its chain rows tight; centering from a
    // point that close to the boundary stalls.
    if (!(g0 < kPhase1Margin) || !std::isfinite(g0)) {
      Phase1Internal p1 = run_phase1(rp, w, settings);
      sol.iterations += p1.report.iterations;
      if (!p1.report.feasible) {
        sol.status = p1.report.status == SolveStatus::MaxIterations
                         ? SolveStatus::MaxIterations
                         : SolveStatus::Infeasible;
        if (sol.status == SolveStatus::MaxIterations) finish_point(p1.w);
        return sol;
      }
      w = p1.w;
      const double gmax = max_row_value(rp, w);
      if (!(gmax < 0)) {
        // Boundary-feasible only: loosen every row just enough for an
        // interior start.
        sol.relaxation = gmax + 1e-10;
        for (auto& row : rp.rows)
          for (auto& term : row.terms) term.c0 -= sol.relaxation;
      }
    }
  }

  if (rp.objective.empty()) {
    finish_point(w);
    sol.status = SolveStatus::Optimal;
    sol.value = 0.0;
    return sol;
  }

  const double m = static_cast<double>(rp.rows.size());
  // Tolerances are relative to the magnitude of the resulting bound.
  const double offset = lcp.reference_offset + lcp.bound_constant;
  auto scale_of = [&](double f) { return std::max(1.0, std::abs(f - offset)); };
  double t = std::max(m, 1.0) / scale_of(reduced_objective(rp, w));
  auto never = [](const Eigen::VectorXd&) { return false; };
  if (!rp.rows.empty()) {
    // Warm start on log F: Newton crawls on a raw exponential objective that
    // starts many orders of magnitude above its optimum.
    const CenteringResult c = center(BarrierObjective(rp, 10.0 * std::max(m, 1.0), true), w,
                                     settings.max_iterations, never);
    sol.iterations += c.iterations;
    t = std::max(t, std::max(m, 1.0) / scale_of(reduced_objective(rp, w)));
  }
  for (int outer = 0; outer < kMaxOuterIterations; ++outer) {
    const CenteringResult c =
        center(BarrierObjective(rp, t), w, settings.max_iterations, never);
    sol.iterations += c.iterations;
    sol.outer_iterations = outer + 1;
    const double f = reduced_objective(rp, w);
    sol.objective_trace.push_back(f);
    const double decrement =
        c.outcome == CenteringOutcome::Stalled ? 0.0 : std::max(c.decrement, 0.0);
    const double gap = (m + decrement) / t;
    sol.kkt_residual = gap / scale_of(f);
    if (settings.trace) {
      nlohmann::json line{{"phase", "barrier"}, {"outer", outer}, {"t", t},
                          {"objective", f}, {"gap", gap}, {"newton", c.iterations}};
      *settings.trace << line.dump() << '\n';
    }
    if (c.outcome == CenteringOutcome::IterationLimit) {
      finish_point(w);
      sol.status = SolveStatus::MaxIterations;
      return sol;
    }
    if (sol.kkt_residual <= settings.tolerance) {
      finish_point(w);
      sol.status = SolveStatus::Optimal;
      return sol;
    }
    // A start far above the optimum leaves t tiny; catch up to the objective.
    t = std::max(t * settings.barrier_decrease, std::max(m, 1.0) / scale_of(f));
  }
  finish_point(w);
  sol.status = SolveStatus::MaxIterations;
  return sol;
}

}  // namespace gpbound

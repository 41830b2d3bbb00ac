// One PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gpbound/bounds.hpp"
#include "gpbound/instance.hpp"
#include "gpbound/oracle.hpp"

using namespace gpbound;

namespace {

// Pinned tolerances.
constexpr double kClosedFormRel = 1e-6;
constexpr double kExampleRel = 2e-3;
constexpr double kOrderRel = 1e-8;
constexpr double kSweepSlack = 1e-6;
constexpr int kPropertyInstances = 200;
constexpr std::size_t kPropertySamples = 10000;
constexpr int kOracleInstances = 50;
// The sweep slack is absolute, so bounds near 1e5 need a tighter solve than the default.
constexpr double kPropertySolverTolerance = 1e-12;

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
  void expect_close(const std::string& what, const ExtendedReal& got, double want, double tol) {
    if (!got.is_finite()) return fail(what + " = -inf, want " + std::to_string(want));
    const double r = rel(got.value(), want);
    if (r > tol) {
      std::ostringstream s;
      s.precision(10);
      s << what << " = " << got.value() << ", want " << want << " (rel " << r << ")";
      fail(s.str());
    }
  }
  void expect_time(double seconds, double limit) {
    if (seconds >= limit)
      fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(limit) + " s");
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void run(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double dt = since(t0);
  if (!o.pass) ++failures;
  const std::string detail = o.detail.str();
  std::printf("[%s] %d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), dt,
              detail.empty() ? "" : ": ", detail.c_str());
  std::fflush(stdout);
}

void check_examples(Outcome& o, const Polynomial& p, std::initializer_list<std::pair<double, double>> ball,
                    std::optional<double> global) {
  for (const auto& [M, want] : ball)
    o.expect_close("f_gp,M at M=" + std::to_string(M), f_gp_ball(p, M).value, want, kExampleRel);
  if (global) o.expect_close("f_gp", f_gp(p).value, *global, kExampleRel);
}

void criterion_sextic(Outcome& o) {
  const auto t0 = Clock::now();
  const Polynomial f = fixtures::parse(fixtures::kSextic);
  const double knee = std::pow(3.0, 1.5);
  o.expect_close("f_gp", f_gp(f).value, -2 * knee, kClosedFormRel);
  for (double M : {0.125, 1.0, 3.0, knee, 10.0}) {
    const double want = M < knee ? M - 9 * std::cbrt(M) : -2 * knee;
    o.expect_close("f_gp,M at M=" + std::to_string(M), f_gp_ball(f, M).value, want, kClosedFormRel);
  }
  o.expect_time(since(t0), 1.0);
}

void criterion_properties(Outcome& o) {
  std::mt19937_64 rng(7);
  const double grid[] = {1.0, 10.0, 1e2, 1e3, 1e5};
  int order_bad = 0, monotone_bad = 0, sweep_bad = 0, solver_bad = 0;
  std::size_t violations = 0;
  std::string first;
  BoundOptions tight;
  tight.solver.tolerance = kPropertySolverTolerance;
  for (int trial = 0; trial < kPropertyInstances; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const int two_d = 2 * std::uniform_int_distribution<int>(1, 5)(rng);
    const std::size_t cap = std::min<std::size_t>(12, available_exponents(n, two_d));
    const std::size_t omega = std::uniform_int_distribution<std::size_t>(1, cap)(rng);
    const DiagonalMode diag = trial % 2 ? DiagonalMode::RandomPositive : DiagonalMode::Unit;
    const Polynomial p = random_instance({n, two_d, omega, -10, 10, diag, rng()});
    auto note = [&](const std::string& what) {
      if (first.empty()) first = what + " on " + p.to_string();
    };
    try {
      const ExtendedReal g = f_gp(p, tight).value;
      double prev = HUGE_VAL;
      for (double M : grid) {
        const Bound b = f_gp_ball(p, M, tight);
        const double v = b.value.value();
        if (g.is_finite() && v < g.value() - kOrderRel * (1 + std::abs(g.value()))) {
          ++order_bad;
          note("f_gp,M < f_gp at M=" + std::to_string(M));
        }
        if (v > prev + kOrderRel * (1 + std::abs(prev))) {
          ++monotone_bad;
          note("f_gp,M increased at M=" + std::to_string(M));
        }
        prev = v;
        const ViolationReport r = sample_ball_check(p, M, v, kPropertySamples, rng());
        if (!r.sound()) note("sampling violation at M=" + std::to_string(M));
        violations += r.violation_count;
        const double ls = b.lambda_star.value_or(0.0);
        const std::vector<double> lambdas{0.0, 0.5 * ls, ls, 1.5 * ls, 2 * ls + 1};
        const SweepResult s = lambda_sweep(p, M, lambdas, tight);
        for (const auto& e : s.entries) {
          if (e.failed) {
            ++solver_bad;
            note("sweep solver failure at M=" + std::to_string(M));
          } else if (e.value.as_double() > v + kSweepSlack) {
            ++sweep_bad;
            note("sweep above f_gp,M at M=" + std::to_string(M) +
                 " lambda=" + std::to_string(e.lambda));
          }
        }
      }
    } catch (const SolverFailure& e) {
      ++solver_bad;
      note(std::string("solver failure: ") + e.what());
    }
  }
  if (order_bad || monotone_bad || violations || sweep_bad || solver_bad) {
    std::ostringstream s;
    s << order_bad << " order, " << monotone_bad << " monotonicity, " << violations
      << " sampling, " << sweep_bad << " sweep, " << solver_bad << " solver failures; first: "
      << first;
    o.fail(s.str());
  }
}

void criterion_closed_forms(Outcome& o) {
  std::mt19937_64 rng(8);
  int checked = 0, with_one = 0, attempts = 0;
  while (checked < kOracleInstances) {
    if (++attempts > 100000) return o.fail("could not draw enough instances");
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const int two_d = 2 * std::uniform_int_distribution<int>(1, 4)(rng);
    const std::size_t cap = std::min<std::size_t>(4, available_exponents(n, two_d));
    const std::size_t omega = std::uniform_int_distribution<std::size_t>(1, cap)(rng);
    const Polynomial p = random_instance({n, two_d, omega, -10, 10, DiagonalMode::Unit, rng()});
    const std::size_t delta = support_sets(p).delta.size();
    if (delta > 1) continue;
    // Keep the draw balanced between the two closed forms.
    if (delta == 0 && checked - with_one >= kOracleInstances / 2) continue;
    ++checked;
    with_one += delta == 1;
    const auto cg = closed_form_bound(p);
    const Bound sg = f_gp(p);
    if (!cg) return o.fail("no closed form for " + p.to_string());
    if (cg->value.is_neg_inf() != sg.value.is_neg_inf())
      return o.fail("f_gp finiteness differs on " + p.to_string());
    if (cg->value.is_finite())
      o.expect_close("f_gp of " + p.to_string(), sg.value, cg->value.value(), kClosedFormRel);
    for (double M : {0.5, 3.0, 50.0, 1e4}) {
      const Bound sb = f_gp_ball(p, M);
      if (sb.provenance != Provenance::GpSolver) return o.fail("ball bound skipped the solver");
      o.expect_close("f_gp,M at M=" + std::to_string(M) + " of " + p.to_string(), sb.value,
                     closed_form_bound(p, M)->value.value(), kClosedFormRel);
    }
  }
  if (with_one == 0) o.fail("no instance with a single non-square");

  const Polynomial q = parse_polynomial(fixtures::kInfeasibleQuartic);
  for (double M : {0.5, 1.0, 10.0, 1e3}) {
    o.expect_close("x0^4+x1^4-6x0^3x1 at M=" + std::to_string(M), f_gp_ball(q, M).value,
                   M * (1 - std::pow(3.0, 1.75) / 2), kClosedFormRel);
  }
}

void criterion_bench(Outcome& o) {
  BenchOptions opts;
  opts.seed = 1;
  opts.instances = 10;
  const BenchCell cell = run_bench_cell(10, 20, 10, opts);
  if (cell.skipped) return o.fail("cell skipped: " + cell.skip_reason);
  for (const auto& r : cell.runs) {
    if (!r.error.empty()) return o.fail("instance " + std::to_string(r.index) + ": " + r.error);
    if (r.seconds >= 5.0)
      return o.fail("instance " + std::to_string(r.index) + " took " + std::to_string(r.seconds) + " s");
  }
  std::ostringstream s;
  s << "mean " << cell.mean_seconds() << " s";
  o.detail << s.str();
}

}  // namespace

int main() {
  run(1, "sextic closed form, global and ball", criterion_sextic);
  run(2, "dense four-variable sextic", [](Outcome& o) {
    const auto t0 = Clock::now();
    check_examples(o, fixtures::parse(fixtures::kDense4),
                   {{1, -39.022}, {10, -213.631}, {100, -1215.730}}, -9580211.794);
    o.expect_time(since(t0), 10.0);
  });
  run(3, "mixed diagonal sextic", [](Outcome& o) {
    check_examples(o, fixtures::parse(fixtures::kMixedDiagonal),
                   {{1, -6.605}, {10, -27.151}, {100, -73.458}}, -74.971);
  });
  run(4, "zero diagonal, 2d = 8", [](Outcome& o) {
    const Polynomial p = fixtures::parse(fixtures::kZeroDiagonal, 8);
    check_examples(o, p, {{1, -23.4559}, {10, -117.9727}, {100, -736.0259}}, std::nullopt);
    if (!f_gp(p).value.is_neg_inf()) o.fail("f_gp is finite, want -inf");
  });
  run(5, "zero diagonal, 2d = 40", [](Outcome& o) {
    const auto t0 = Clock::now();
    check_examples(o, fixtures::parse(fixtures::kHighDegree, 40),
                   {{1, -20.0645}, {10, -106.4946}, {100, -584.027}}, std::nullopt);
    o.expect_time(since(t0), 10.0);
  });
  run(6, "twenty variables, 2d = 20", [](Outcome& o) {
    const auto t0 = Clock::now();
    check_examples(o, fixtures::parse(fixtures::twenty_variable_instance()),
                   {{10, -41.6538}, {100, -340.6339}, {1000, -2774.217}}, -84853211002.07);
    o.expect_time(since(t0), 60.0);
  });
  run(7, "property suite on 200 random instances", criterion_properties);
  run(8, "solver agrees with closed forms", criterion_closed_forms);
  run(9, "bench cell n = 10, 2d = 20, |Omega| = 10", criterion_bench);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures ? 1 : 0;
}

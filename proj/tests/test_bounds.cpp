#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "gpbound/bounds.hpp"
#include "gpbound/instance.hpp"

using namespace gpbound;

namespace {

// Ball bound of the sextic: M - 9 M^{1/3} below 3^{3/2}, -2*3^{3/2} above.
double sextic_ball(double M) {
  const double knee = std::pow(3.0, 1.5);
  return M < knee ? M - 9 * std::cbrt(M) : -2 * knee;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("extended reals") {
  const auto a = ExtendedReal::finite(-3), ninf = ExtendedReal::neg_inf();
  CHECK(ninf < a);
  CHECK(a > ninf);
  CHECK(ninf == ExtendedReal::neg_inf());
  CHECK_FALSE(ninf < ExtendedReal::neg_inf());
  CHECK(ExtendedReal::finite(1) > a);
  CHECK_THROWS(ninf.value());
  CHECK_THROWS(ExtendedReal::finite(NAN));
  CHECK(ninf.to_string() == "-inf");
}

TEST_CASE("sextic bounds") {
  const Polynomial f = fixtures::parse(fixtures::kSextic);
  const Bound g = f_gp(f);
  REQUIRE(g.value.is_finite());
  CHECK(rel(g.value.value(), -2 * std::pow(3.0, 1.5)) <= 1e-8);
  REQUIRE(g.closed_form);
  CHECK(rel(g.closed_form->value(), g.value.value()) <= 1e-8);

  for (double M : {0.125, 1.0, 3.0, std::pow(3.0, 1.5), 10.0, 1e3}) {
    CAPTURE(M);
    const Bound b = f_gp_ball(f, M);
    CHECK(b.kind == BoundKind::Ball);
    CHECK(b.provenance == Provenance::GpSolver);
    CHECK(rel(b.value.value(), sextic_ball(M)) <= 1e-7);
    REQUIRE(b.lambda_star);
    CHECK(*b.lambda_star >= 0);
  }
  const Bound b1 = f_gp_ball(f, 1.0);
  CHECK(*b1.lambda_star == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("moderate examples") {
  const Polynomial mixed = fixtures::parse(fixtures::kMixedDiagonal);
  CHECK(rel(f_gp(mixed).value.value(), -74.971) <= 2e-3);
  CHECK(rel(f_gp_ball(mixed, 1).value.value(), -6.605) <= 2e-3);

  const Polynomial many = fixtures::parse(fixtures::twenty_variable_instance());
  CHECK(rel(f_gp_ball(many, 10).value.value(), -41.6538) <= 2e-3);

  const Polynomial zero_diag = fixtures::parse(fixtures::kZeroDiagonal, 8);
  const Bound g = f_gp(zero_diag);
  CHECK(g.value.is_neg_inf());
  CHECK_FALSE(g.note.empty());
  CHECK(rel(f_gp_ball(zero_diag, 1).value.value(), -23.4559) <= 2e-3);
}

TEST_CASE("negative diagonal without non-squares") {
  const Polynomial f = parse_polynomial("x0^4 - 2*x1^4 + x0^2 + 1");
  CHECK(f_gp(f).value.is_neg_inf());
  const auto cf = closed_form_bound(f, 3.0);
  REQUIRE(cf);
  CHECK(cf->value.value() == doctest::Approx(1 - 6.0));
  CHECK(f_gp_ball(f, 3.0).value.value() == doctest::Approx(-5.0).epsilon(1e-7));
}

TEST_CASE("closed forms") {
  const Polynomial f = fixtures::parse(fixtures::kSextic);
  const auto c1 = closed_form_bound(f, 1.0);
  REQUIRE(c1);
  CHECK(c1->provenance == Provenance::ClosedForm);
  CHECK(c1->value.value() == doctest::Approx(-8.0).epsilon(1e-14));

  const Polynomial q = parse_polynomial(fixtures::kInfeasibleQuartic);
  const auto cq = closed_form_bound(q);
  REQUIRE(cq);
  CHECK(cq->value.is_neg_inf());
  const double slope = std::pow(3.0, 1.75) / 2 - 1;
  CHECK(slope == doctest::Approx(2.41926).epsilon(1e-5));
  for (double M : {0.5, 1.0, 10.0, 1e4}) {
    CAPTURE(M);
    CHECK(closed_form_bound(q, M)->value.value() == doctest::Approx(-slope * M).epsilon(1e-12));
    CHECK(rel(f_gp_ball(q, M).value.value(), M * (1 - std::pow(3.0, 1.75) / 2)) <= 1e-6);
  }

  const Polynomial sq = parse_polynomial("x0^4 + x1^4 + 3*x0^2*x1^2 + 5");
  CHECK(closed_form_bound(sq)->value.value() == 5.0);
  CHECK(closed_form_bound(sq, 2.0)->value.value() == 5.0);

  // Two non-squares, or a non-unit diagonal: no closed form.
  CHECK_FALSE(closed_form_bound(parse_polynomial("x0^4 - x0 - x0^3")));
  CHECK_FALSE(closed_form_bound(parse_polynomial("2*x0^4 - x0")));
}

TEST_CASE("fast path returns the closed form") {
  BoundOptions fast;
  fast.fast = true;
  const Bound b = f_gp_ball(fixtures::parse(fixtures::kSextic), 1.0, fast);
  CHECK(b.provenance == Provenance::ClosedForm);
  CHECK_FALSE(b.solver);
  CHECK(b.value.value() == doctest::Approx(-8.0));
}

TEST_CASE("cross check") {
  BoundOptions opts;
  opts.cross_check = true;
  CHECK_NOTHROW(f_gp_ball(fixtures::parse(fixtures::kSextic), 2.0, opts));
  CHECK_NOTHROW(f_gp(fixtures::parse(fixtures::kSextic), opts));
}

TEST_CASE("lagrangian") {
  const Polynomial f = fixtures::parse(fixtures::kQuartic);
  CHECK(lagrangian(f, 1.0, 1.0) == parse_polynomial("2*x^4 - 8*x^3 + 8*x^2", 1, 4));
  CHECK(lagrangian(f, 0.0, 1.0) == f);
  const Polynomial five = parse_polynomial("5", 2, 4);
  CHECK(lagrangian(five, 2.0, 3.0) == parse_polynomial("2*x0^4 + 2*x1^4 - 1", 2, 4));
  CHECK_THROWS(lagrangian(f, -1.0, 1.0));
  CHECK_THROWS(lagrangian(f, 1.0, 0.0));
  CHECK(support_sets(lagrangian(f, 3.0, 2.0)).omega.size() == support_sets(f).omega.size());
}

TEST_CASE("descending diagonal order") {
  const Polynomial f = parse_polynomial("x0^4 + 3*x1^4 + 2*x2^4 + 3*x3^4");
  const auto order = descending_diagonal_order(f);
  const Polynomial g = permute_variables(f, order);
  CHECK(g.diagonal(0) == 3);
  CHECK(g.diagonal(1) == 3);
  CHECK(g.diagonal(2) == 2);
  CHECK(g.diagonal(3) == 1);
  CHECK(order[1] == 0);
  CHECK(order[3] == 1);
}

TEST_CASE("ball radius validation") {
  const Polynomial f = fixtures::parse(fixtures::kSextic);
  CHECK_THROWS_AS(f_gp_ball(f, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(f_gp_ball(f, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_bound(f, 0.0), std::invalid_argument);
}

TEST_CASE("property: soundness on random points") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_instance({2 + std::size_t(trial % 3), 4 + 2 * (trial % 2), 5, -10, 10,
                                          DiagonalMode::Unit, rng()});
    const Bound b = f_gp(p);
    const Bound bb = f_gp_ball(p, 4.0);
    const double r = std::pow(4.0, 1.0 / p.two_d());
    std::uniform_real_distribution<double> box(-r, r);
    std::vector<double> x(p.n());
    for (int k = 0; k < 1000; ++k) {
      for (auto& xi : x) xi = 2 * g(rng);
      if (b.value.is_finite())
        CHECK(evaluate(p, x) >= b.value.value() - 1e-6 * (1 + std::abs(b.value.value())));
      double norm = 0;
      for (auto& xi : x) {
        xi = box(rng);
        norm += std::pow(xi, p.two_d());
      }
      if (norm <= 4.0)
        CHECK(evaluate(p, x) >= bb.value.value() - 1e-6 * (1 + std::abs(bb.value.value())));
    }
  }
}

TEST_CASE("property: ball bound dominates and decreases in M") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial p = random_instance({3, 6, 6, -10, 10, DiagonalMode::Unit, rng()});
    const Bound g = f_gp(p);
    double prev = HUGE_VAL;
    for (double M : {0.5, 1.0, 10.0, 100.0, 1e4}) {
      const Bound b = f_gp_ball(p, M);
      // Two separately solved programs: compare at the solver tolerance.
      if (g.value.is_finite())
        CHECK(b.value.value() >= g.value.value() - 1e-8 * (1 + std::abs(g.value.value())));
      CHECK(b.value.value() <= prev + 1e-8 * (1 + std::abs(prev)));
      prev = b.value.value();
    }
    if (g.value.is_finite()) {
      const double gap = f_gp_ball(p, 1e8).value.value() - g.value.value();
      CHECK(gap >= -1e-8 * (1 + std::abs(g.value.value())));
      CHECK(gap <= 1e-4 * (1 + std::abs(g.value.value())));
    }
  }
}

TEST_CASE("property: permutation invariance") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 15; ++trial) {
    const Polynomial p = random_instance({4, 4, 6, -10, 10, DiagonalMode::RandomPositive, rng()});
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    const Polynomial q = permute_variables(p, perm);
    const Bound a = f_gp(p), b = f_gp(q);
    REQUIRE(a.value.is_finite() == b.value.is_finite());
    if (a.value.is_finite()) CHECK(rel(a.value.value(), b.value.value()) <= 1e-9);
    CHECK(rel(f_gp_ball(p, 5.0).value.value(), f_gp_ball(q, 5.0).value.value()) <= 1e-9);
  }
}

TEST_CASE("property: single non-square threshold") {
  // Above the knee the ball bound equals the global one.
  const Polynomial f = parse_polynomial("x0^6 + x1^6 - 4*x0*x1^2 + 2");
  const auto g = closed_form_bound(f);
  REQUIRE(g);
  for (double M : {20.0, 100.0, 1e4}) {
    const auto b = closed_form_bound(f, M);
    CHECK(b->value == g->value);
    CHECK(rel(f_gp_ball(f, M).value.value(), g->value.value()) <= 1e-6);
  }
}

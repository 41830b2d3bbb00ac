#include <cmath>

#include "doctest.h"
#include "gpbound/instance.hpp"

using namespace gpbound;

TEST_CASE("available exponent count") {
  CHECK(available_exponents(1, 6) == 5);
  CHECK(available_exponents(2, 4) == 12);
  CHECK(available_exponents(40, 60) > 1000000);
}

TEST_CASE("seed determinism") {
  const InstanceSpec spec{1, 6, 2, -10, 10, DiagonalMode::Unit, 7};
  CHECK(random_instance(spec) == random_instance(spec));
  InstanceSpec other = spec;
  other.seed = 8;
  CHECK_FALSE(random_instance(other) == random_instance(spec));
  const InstanceSpec big{10, 20, 10, -10, 10, DiagonalMode::Unit, 3};
  CHECK(random_instance(big) == random_instance(big));
}

TEST_CASE("sparse instance shape") {
  const Polynomial p = random_instance({20, 20, 7, -10, 10, DiagonalMode::Unit, 5});
  const SupportSets s = support_sets(p);
  CHECK(p.n() == 20);
  CHECK(p.two_d() == 20);
  CHECK(s.omega.size() == 7);
  CHECK(s.constant == 0.0);
  for (double d : s.diagonal) CHECK(d == 1.0);
  for (const auto& t : s.omega) {
    CHECK(t.coefficient != 0.0);
    CHECK(t.coefficient >= -10);
    CHECK(t.coefficient <= 10);
    CHECK(t.coefficient == std::round(t.coefficient));
  }
}

TEST_CASE("diagonal modes") {
  const Polynomial none = random_instance({3, 4, 5, -10, 10, DiagonalMode::None, 1});
  for (std::size_t i = 0; i < 3; ++i) CHECK(none.diagonal(i) == 0.0);
  const Polynomial pos = random_instance({3, 4, 5, -3, 3, DiagonalMode::RandomPositive, 1});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(pos.diagonal(i) >= 1.0);
    CHECK(pos.diagonal(i) <= 3.0);
  }
  CHECK(diagonal_mode_from_string("random-positive") == DiagonalMode::RandomPositive);
  CHECK_THROWS(diagonal_mode_from_string("diag"));
}

TEST_CASE("unreachable or invalid specs") {
  CHECK_THROWS(random_instance({1, 4, 4, -10, 10, DiagonalMode::Unit, 1}));
  CHECK_NOTHROW(random_instance({1, 4, 3, -10, 10, DiagonalMode::Unit, 1}));
  CHECK_THROWS(random_instance({2, 3, 1, -10, 10, DiagonalMode::Unit, 1}));
  CHECK_THROWS(random_instance({2, 4, 1, 0, 0, DiagonalMode::Unit, 1}));
}

TEST_CASE("generated instances parse back and hit the requested size") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const InstanceSpec spec{1 + seed % 6, 2 + 2 * int(seed % 5), 1 + seed % 4, -10, 10,
                            DiagonalMode::Unit, seed};
    if (spec.omega_size > available_exponents(spec.n, spec.two_d)) continue;
    const Polynomial p = random_instance(spec);
    CHECK(parse_polynomial(p.to_string(), p.n(), p.two_d()) == p);
    CHECK(support_sets(p).omega.size() == spec.omega_size);
  }
}

TEST_CASE("dense instance") {
  const Polynomial p = dense_instance(3, 4, 2);
  // C(6,3) = 20 monomials of degree < 4, plus 3 diagonal terms.
  CHECK(p.size() == 23);
  CHECK(p.diagonal(2) == 1.0);
}

TEST_CASE("bench cell") {
  BenchOptions opts;
  opts.instances = 3;
  opts.jobs = 2;
  const BenchCell c = run_bench_cell(10, 20, 10, opts);
  REQUIRE(c.runs.size() == 3);
  for (const auto& r : c.runs) {
    CHECK(r.error.empty());
    CHECK(r.bound);
    CHECK(r.M >= 1);
    CHECK(r.M <= 1e5);
  }
  const BenchCell again = run_bench_cell(10, 20, 10, opts);
  for (std::size_t i = 0; i < 3; ++i) CHECK(again.runs[i].bound == c.runs[i].bound);
  opts.max_terms = 10;
  CHECK(run_bench_cell(5, 10, std::nullopt, opts).skipped);
}

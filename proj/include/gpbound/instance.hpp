#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpbound/bounds.hpp"
#include "gpbound/polyring.hpp"

namespace gpbound {

enum class DiagonalMode { Unit, RandomPositive, None };

std::string to_string(DiagonalMode d);
DiagonalMode diagonal_mode_from_string(const std::string& s);

struct InstanceSpec {
  std::size_t n = 1;
  int two_d = 2;
  /// Exact |Omega(f)| of the result.
  std::size_t omega_size = 0;
  int coeff_min = -10;
  int coeff_max = 10;
  DiagonalMode diagonal = DiagonalMode::Unit;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Number of exponent vectors with 0 < |alpha| <= 2d other than 2d e_i,
/// saturating at SIZE_MAX.
std::size_t available_exponents(std::size_t n, int two_d);

/// Random sparse polynomial: diagonal per `spec.diagonal` plus omega_size
/// distinct off-diagonal terms with nonzero integer coefficients.
Polynomial random_instance(const InstanceSpec& spec);

/// Sum x_i^{2d} plus every monomial of degree below 2d, coefficients random
/// nonzero integers in [coeff_min, coeff_max].
Polynomial dense_instance(std::size_t n, int two_d, std::uint64_t seed,
                          int coeff_min = -10, int coeff_max = 10);

struct BenchRun {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double M = 0.0;
  std::size_t terms = 0;
  std::optional<double> bound;
  double seconds = 0.0;
  std::string error;
};

struct BenchCell {
  std::size_t n = 0;
  int two_d = 0;
  /// Absent for the dense cells.
  std::optional<std::size_t> omega_size;
  std::vector<BenchRun> runs;
  bool skipped = false;
  std::string skip_reason;

  double mean_seconds() const;
  double max_seconds() const;
};

struct BenchOptions {
  std::uint64_t seed = 0;
  std::size_t instances = 10;
  unsigned jobs = 1;
  /// Dense cells with more terms than this are skipped.
  std::size_t max_terms = 300;
  BoundOptions bound;
};

/// One cell: `instances` random polynomials with M a random integer in
/// [1, 1e5], timing f_gp_ball for each.
BenchCell run_bench_cell(std::size_t n, int two_d, std::optional<std::size_t> omega_size,
                         const BenchOptions& options);

/// Cells of the dense timing table (n in {3,4,5}, 2d in {4,6,8,10}).
std::vector<BenchCell> bench_table1(const BenchOptions& options);
/// Cells of the sparse table (n in {10,...,40}, 2d in {20,40,60},
/// |Omega| in {10,...,50}).
std::vector<BenchCell> bench_table2(const BenchOptions& options);

}  // namespace gpbound

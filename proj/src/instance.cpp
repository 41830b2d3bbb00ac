#include "gpbound/instance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace gpbound {

std::string to_string(DiagonalMode d) {
  switch (d) {
    case DiagonalMode::Unit: return "unit";
    case DiagonalMode::RandomPositive: return "random-positive";
    case DiagonalMode::None: return "none";
  }
  return "unit";
}

DiagonalMode diagonal_mode_from_string(const std::string& s) {
  if (s == "unit") return DiagonalMode::Unit;
  if (s == "random-positive") return DiagonalMode::RandomPositive;
  if (s == "none") return DiagonalMode::None;
  throw std::invalid_argument("unknown diagonal mode '" + s +
                              "' (expected unit, random-positive or none)");
}

std::size_t available_exponents(std::size_t n, int two_d) {
  // C(n + 2d, n) - 1 - n, computed as a product of ratios in long double.
  long double c = 1.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    c = c * static_cast<long double>(two_d + k) / static_cast<long double>(k);
    if (c > static_cast<long double>(std::numeric_limits<std::size_t>::max() / 2))
      return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(std::llround(c)) - 1 - n;
}

void InstanceSpec::validate() const {
  if (n == 0) throw std::invalid_argument("instance needs at least one variable");
  if (two_d <= 0 || two_d % 2 != 0)
    throw std::invalid_argument("two_d must be a positive even integer");
  if (coeff_min > coeff_max) throw std::invalid_argument("empty coefficient range");
  if (coeff_min == 0 && coeff_max == 0)
    throw std::invalid_argument("coefficient range must contain a nonzero integer");
  const std::size_t avail = available_exponents(n, two_d);
  if (omega_size > avail)
    throw std::invalid_argument("omega_size " + std::to_string(omega_size) +
                                " exceeds the " + std::to_string(avail) +
                                " available exponent vectors");
}

namespace {

int nonzero_integer(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  for (;;) {
    const int v = dist(rng);
    if (v != 0) return v;
  }
}

bool excluded(const Exponent& alpha, int two_d) {
  const int deg = total_degree(alpha);
  if (deg == 0) return true;
  return deg == two_d && std::count(alpha.begin(), alpha.end(), 0) ==
                             static_cast<long>(alpha.size()) - 1;
}

void enumerate(std::size_t n, int budget, Exponent& cur, std::size_t i,
               std::vector<Exponent>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= budget; ++a) {
    cur[i] = a;
    enumerate(n, budget - a, cur, i + 1, out);
  }
  cur[i] = 0;
}

/// Uniform over {alpha : |alpha| <= 2d} by stars and bars with a slack part.
Exponent uniform_exponent(std::mt19937_64& rng, std::size_t n, int two_d) {
  const std::size_t slots = n + two_d;
  std::vector<std::size_t> all(slots);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::size_t> bars;
  std::sample(all.begin(), all.end(), std::back_inserter(bars), n, rng);
  Exponent alpha(n);
  std::size_t prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = static_cast<int>(bars[i] - prev);
    prev = bars[i] + 1;
  }
  return alpha;
}

void add_diagonal(std::vector<Term>& terms, std::size_t n, int two_d, DiagonalMode mode,
                  int coeff_max, std::mt19937_64& rng) {
  if (mode == DiagonalMode::None) return;
  std::uniform_int_distribution<int> pos(1, std::max(1, coeff_max));
  for (std::size_t i = 0; i < n; ++i) {
    Exponent e(n, 0);
    e[i] = two_d;
    terms.push_back({std::move(e), mode == DiagonalMode::Unit ? 1.0 : double(pos(rng))});
  }
}

constexpr std::size_t kEnumerationLimit = 20000;

}  // namespace

Polynomial random_instance(const InstanceSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  const std::size_t n = spec.n;
  std::vector<Exponent> chosen;
  if (available_exponents(n, spec.two_d) <= kEnumerationLimit) {
    std::vector<Exponent> pool;
    Exponent cur(n, 0);
    enumerate(n, spec.two_d, cur, 0, pool);
    std::erase_if(pool, [&](const Exponent& a) { return excluded(a, spec.two_d); });
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(spec.omega_size);
    chosen = std::move(pool);
  } else {
    std::set<Exponent> seen;
    while (chosen.size() < spec.omega_size) {
      Exponent a = uniform_exponent(rng, n, spec.two_d);
      if (excluded(a, spec.two_d) || !seen.insert(a).second) continue;
      chosen.push_back(std::move(a));
    }
  }
  std::vector<Term> terms;
  for (auto& a : chosen)
    terms.push_back({std::move(a), double(nonzero_integer(rng, spec.coeff_min, spec.coeff_max))});
  add_diagonal(terms, n, spec.two_d, spec.diagonal, spec.coeff_max, rng);
  return Polynomial(n, spec.two_d, terms);
}

Polynomial dense_instance(std::size_t n, int two_d, std::uint64_t seed, int coeff_min,
                          int coeff_max) {
  InstanceSpec check{n, two_d, 0, coeff_min, coeff_max, DiagonalMode::Unit, seed};
  check.validate();
  std::mt19937_64 rng(seed);
  std::vector<Exponent> pool;
  Exponent cur(n, 0);
  enumerate(n, two_d - 1, cur, 0, pool);
  std::vector<Term> terms;
  for (auto& a : pool)
    terms.push_back({std::move(a), double(nonzero_integer(rng, coeff_min, coeff_max))});
  add_diagonal(terms, n, two_d, DiagonalMode::Unit, coeff_max, rng);
  return Polynomial(n, two_d, terms);
}

double BenchCell::mean_seconds() const {
  if (runs.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : runs) s += r.seconds;
  return s / runs.size();
}

double BenchCell::max_seconds() const {
  double m = 0.0;
  for (const auto& r : runs) m = std::max(m, r.seconds);
  return m;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t root, std::size_t n, int two_d, std::size_t omega,
                        std::size_t index) {
  std::uint64_t s = splitmix(root);
  for (std::uint64_t v : {std::uint64_t(n), std::uint64_t(two_d), std::uint64_t(omega),
                          std::uint64_t(index)})
    s = splitmix(s ^ v);
  return s;
}

}  // namespace

BenchCell run_bench_cell(std::size_t n, int two_d, std::optional<std::size_t> omega_size,
                         const BenchOptions& options) {
  BenchCell cell;
  cell.n = n;
  cell.two_d = two_d;
  cell.omega_size = omega_size;
  if (!omega_size) {
    // Every monomial of degree < 2d plus the n diagonal terms.
    const std::size_t terms = available_exponents(n, two_d - 1) + 1 + 2 * n;
    if (terms > options.max_terms) {
      cell.skipped = true;
      cell.skip_reason = std::to_string(terms) + " terms exceeds the limit of " +
                         std::to_string(options.max_terms);
      return cell;
    }
  }

  cell.runs.resize(options.instances);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < options.instances; i = next++) {
      BenchRun& run = cell.runs[i];
      run.index = i;
      run.seed = cell_seed(options.seed, n, two_d, omega_size.value_or(0), i);
      std::mt19937_64 rng(run.seed);
      run.M = double(std::uniform_int_distribution<int>(1, 100000)(rng));
      const std::uint64_t poly_seed = rng();
      try {
        const Polynomial p =
            omega_size ? random_instance({n, two_d, *omega_size, -10, 10, DiagonalMode::Unit,
                                          poly_seed})
                       : dense_instance(n, two_d, poly_seed);
        run.terms = p.size();
        const auto t0 = std::chrono::steady_clock::now();
        const Bound b = f_gp_ball(p, run.M, options.bound);
        run.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        run.bound = b.value.value();
      } catch (const std::exception& e) {
        run.error = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, options.instances));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cell;
}

std::vector<BenchCell> bench_table1(const BenchOptions& options) {
  std::vector<BenchCell> cells;
  for (std::size_t n : {3, 4, 5})
    for (int two_d : {4, 6, 8, 10}) cells.push_back(run_bench_cell(n, two_d, std::nullopt, options));
  return cells;
}

std::vector<BenchCell> bench_table2(const BenchOptions& options) {
  std::vector<BenchCell> cells;
  for (std::size_t n : {10, 20, 30, 40})
    for (int two_d : {20, 40, 60})
      for (std::size_t omega : {10, 20, 30, 40, 50})
        cells.push_back(run_bench_cell(n, two_d, omega, options));
  return cells;
}

}  // namespace gpbound

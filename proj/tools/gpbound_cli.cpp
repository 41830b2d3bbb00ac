// gpbound: lower bounds for polynomials by geometric programming.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpbound/bounds.hpp"
#include "gpbound/gpmodel.hpp"
#include "gpbound/instance.hpp"
#include "gpbound/json_io.hpp"
#include "gpbound/oracle.hpp"

using namespace gpbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegInf = 2;

struct PolyInput {
  std::string file;
  std::string expr;
  int two_d = 0;

  void attach(CLI::App* app) {
    auto* f = app->add_option("--poly", file, "Polynomial JSON file ('-' for stdin)");
    auto* e = app->add_option("--expr", expr, "Polynomial expression, e.g. 'x^6+3x^4-9x^2'");
    f->excludes(e);
    app->add_option("--two-d", two_d, "Working degree 2d (default: smallest even >= deg)");
  }

  Polynomial load() const {
    std::optional<int> hint;
    if (two_d > 0) hint = two_d;
    if (!expr.empty()) return parse_polynomial(expr, std::nullopt, hint);
    if (file.empty()) throw std::invalid_argument("one of --poly or --expr is required");
    std::string text;
    if (file == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else {
      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot open " + file);
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      Json j;
      try {
        j = Json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw PolynomialError(std::string("invalid JSON: ") + e.what());
      }
      Polynomial p = polynomial_from_json(j);
      return hint ? p.with_two_d(*hint) : p;
    }
    return parse_polynomial(text, std::nullopt, hint);
  }
};

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

Json dump_programs(const Polynomial& p, std::optional<double> M) {
  Json out;
  if (M) {
    const Polynomial sorted = permute_variables(p, descending_diagonal_order(p));
    const GeometricProgram gp = build_ball_gp(support_sets(sorted), *M);
    out["gp"] = to_json(gp);
    out["lcp"] = to_json(log_transform(gp));
    return out;
  }
  auto built = build_unconstrained_gp(support_sets(p));
  if (auto* pre = std::get_if<PreInfeasible>(&built)) {
    out["gp"] = nullptr;
    out["pre_infeasible"] = pre->reason;
    return out;
  }
  const auto& gp = std::get<GeometricProgram>(built);
  out["gp"] = to_json(gp);
  out["lcp"] = to_json(log_transform(gp));
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size() && item.find_first_not_of(" ", used) != std::string::npos)
      throw std::invalid_argument("bad grid value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--grid needs at least one value");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds for multivariate polynomials via geometric programming"};
  app.require_subcommand(1);

  PolyInput compute_in, verify_in, sweep_in;
  double ball = 0.0, tol = 1e-9, claimed = 0.0;
  bool fast = false, dump_gp = false, trace = false;
  int samples = 10000;
  std::uint64_t seed = 0;
  std::string grid;

  auto* compute = app.add_subcommand("compute", "Compute f_gp or the ball bound f_gp,M");
  compute_in.attach(compute);
  compute->add_option("--ball", ball, "Ball radius M (sum x_i^{2d} <= M)")->check(CLI::PositiveNumber);
  compute->add_flag("--fast", fast, "Use the closed form when one applies");
  compute->add_flag("--dump-gp", dump_gp, "Include the geometric program in the output");
  compute->add_option("--tol", tol, "Relative solver tolerance")->check(CLI::PositiveNumber);
  compute->add_flag("--trace", trace, "Stream solver iterations as JSON lines to stderr");

  auto* verify = app.add_subcommand("verify", "Check a claimed bound against sampled ball points");
  verify_in.attach(verify);
  verify->add_option("--ball", ball, "Ball radius M")->required()->check(CLI::PositiveNumber);
  verify->add_option("--bound", claimed, "Claimed lower bound")->required();
  verify->add_option("--samples", samples, "Number of feasible samples")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Random seed");

  auto* sweep = app.add_subcommand("sweep", "Evaluate f_gp of the Lagrangian over a multiplier grid");
  sweep_in.attach(sweep);
  sweep->add_option("--ball", ball, "Ball radius M")->required()->check(CLI::PositiveNumber);
  sweep->add_option("--grid", grid, "Comma-separated multipliers")->required();
  sweep->add_option("--tol", tol, "Relative solver tolerance")->check(CLI::PositiveNumber);

  InstanceSpec spec;
  std::string diagonal = "unit";
  auto* gen = app.add_subcommand("gen", "Generate a random sparse instance");
  gen->add_option("--n", spec.n, "Number of variables")->required();
  gen->add_option("--two-d", spec.two_d, "Degree 2d")->required();
  gen->add_option("--omega-size", spec.omega_size, "|Omega(f)|")->required();
  gen->add_option("--seed", spec.seed, "Random seed");
  gen->add_option("--coeff-min", spec.coeff_min, "Smallest coefficient");
  gen->add_option("--coeff-max", spec.coeff_max, "Largest coefficient");
  gen->add_option("--diagonal", diagonal, "unit, random-positive or none");

  BenchOptions bench_opts;
  int table = 2;
  std::vector<int> cell;
  auto* bench = app.add_subcommand("bench", "Time f_gp,M on the random-instance tables");
  bench->add_option("--table", table, "1 (dense) or 2 (sparse)")->check(CLI::IsMember({1, 2}));
  bench->add_option("--seed", bench_opts.seed, "Root seed");
  bench->add_option("--jobs", bench_opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--instances", bench_opts.instances, "Instances per cell");
  bench->add_option("--max-terms", bench_opts.max_terms, "Skip dense cells with more terms");
  bench->add_option("--cell", cell, "Run one cell: n two_d [omega_size]")->expected(2, 3);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) {
      const Polynomial p = compute_in.load();
      BoundOptions opts;
      opts.fast = fast;
      opts.solver.tolerance = tol;
      if (trace) opts.solver.trace = &std::cerr;
      std::optional<double> M;
      if (ball > 0) M = ball;
      Json out;
      int code = kExitOk;
      try {
        const Bound b = M ? f_gp_ball(p, *M, opts) : f_gp(p, opts);
        out = to_json(b);
        std::cerr << (M ? "f_gp,M" : "f_gp") << " = " << b.value.to_string() << " ("
                  << to_string(b.provenance) << ")";
        if (b.note.size()) std::cerr << ": " << b.note;
        std::cerr << '\n';
        if (b.value.is_neg_inf()) code = kExitNegInf;
      } catch (const SolverFailure& e) {
        out = to_json(e.best_effort());
        out["error"] = e.what();
        std::cerr << "error: " << e.what() << '\n';
        code = kExitError;
      }
      if (dump_gp) out["program"] = dump_programs(p, M);
      print(out);
      return code;
    }

    if (*verify) {
      const Polynomial p = verify_in.load();
      const ViolationReport rep = sample_ball_check(p, ball, claimed, samples, seed);
      print(to_json(rep));
      std::cerr << rep.samples << " samples, " << rep.violation_count
                << " violations, min observed " << rep.min_observed << '\n';
      if (rep.samples < samples)
        std::cerr << "warning: rejection budget exhausted after " << rep.samples << " samples\n";
      return kExitOk;
    }

    if (*sweep) {
      const Polynomial p = sweep_in.load();
      BoundOptions opts;
      opts.solver.tolerance = tol;
      const auto lambdas = parse_grid(grid);
      const SweepResult r = lambda_sweep(p, ball, lambdas, opts);
      print(to_json(r));
      std::cerr << "best lambda " << r.best_lambda << " value " << r.best_value.to_string() << '\n';
      return r.best_value.is_neg_inf() ? kExitNegInf : kExitOk;
    }

    if (*gen) {
      spec.diagonal = diagonal_mode_from_string(diagonal);
      const Polynomial p = random_instance(spec);
      print(to_json(p));
      std::cerr << p.to_string() << '\n';
      return kExitOk;
    }

    if (*bench) {
      std::vector<BenchCell> cells;
      if (!cell.empty()) {
        std::optional<std::size_t> omega;
        if (cell.size() == 3) omega = static_cast<std::size_t>(cell[2]);
        else if (table == 2) throw std::invalid_argument("--cell for table 2 needs n two_d omega_size");
        cells.push_back(run_bench_cell(cell[0], cell[1], omega, bench_opts));
      } else {
        cells = table == 1 ? bench_table1(bench_opts) : bench_table2(bench_opts);
      }
      Json out = {{"table", table}, {"seed", bench_opts.seed}, {"cells", Json::array()}};
      for (const auto& c : cells) {
        out["cells"].push_back(to_json(c));
        std::cerr << "n=" << c.n << " 2d=" << c.two_d << " omega="
                  << (c.omega_size ? std::to_string(*c.omega_size) : std::string("dense"));
        if (c.skipped) std::cerr << " skipped (" << c.skip_reason << ")\n";
        else std::cerr << " mean " << c.mean_seconds() << " s, max " << c.max_seconds() << " s\n";
      }
      print(out);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

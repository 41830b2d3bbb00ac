#include "gpbound/json_io.hpp"

#include <cmath>

namespace gpbound {

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.sorted_terms())
    terms.push_back({{"coeff", t.coefficient}, {"exp", t.exponent}});
  return {{"n", p.n()}, {"two_d", p.two_d()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw PolynomialError("polynomial JSON must be an object");
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Term> terms;
    int deg = 0;
    for (const auto& t : j.at("terms")) {
      Term term{t.at("exp").get<Exponent>(), t.at("coeff").get<double>()};
      if (term.coefficient != 0.0) deg = std::max(deg, total_degree(term.exponent));
      terms.push_back(std::move(term));
    }
    int two_d = std::max(2, deg + deg % 2);
    if (j.contains("two_d")) two_d = j.at("two_d").get<int>();
    return Polynomial(n, two_d, terms);
  } catch (const nlohmann::json::exception& e) {
    throw PolynomialError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

Json to_json(const ExtendedReal& v) {
  if (v.is_neg_inf()) return "neg_inf";
  return v.value();
}

Json to_json(const Solution& s) {
  Json j;
  j["status"] = to_string(s.status);
  j["value"] = std::isfinite(s.value) ? Json(s.value) : Json(nullptr);
  j["relaxation"] = s.relaxation;
  j["kkt_residual"] = s.kkt_residual;
  j["iterations"] = s.iterations;
  j["outer_iterations"] = s.outer_iterations;
  j["point"] = s.point;
  j["objective_trace"] = s.objective_trace;
  return j;
}

Json to_json(const Bound& b) {
  Json j;
  j["bound"] = to_json(b.value);
  j["kind"] = to_string(b.kind);
  j["M"] = b.M ? Json(*b.M) : Json(nullptr);
  j["provenance"] = to_string(b.provenance);
  j["lambda_star"] = b.lambda_star ? Json(*b.lambda_star) : Json(nullptr);
  j["closed_form"] = b.closed_form ? to_json(*b.closed_form) : Json(nullptr);
  if (!b.note.empty()) j["note"] = b.note;
  j["solver"] = b.solver ? to_json(*b.solver) : Json(nullptr);
  return j;
}

namespace {

Json named_exponents(const std::vector<std::pair<std::size_t, double>>& exps,
                     const std::vector<std::string>& names) {
  Json j = Json::object();
  for (const auto& [k, a] : exps) j[names.at(k)] = a;
  return j;
}

Json monomial_json(const GpMonomial& m, const std::vector<std::string>& names) {
  return {{"coeff", m.coefficient}, {"exp", named_exponents(m.exponents, names)}};
}

Json term_json(const ExpTerm& t, const std::vector<std::string>& names) {
  return {{"log_coeff", t.log_coefficient}, {"coeffs", named_exponents(t.exponents, names)}};
}

}  // namespace

Json to_json(const GeometricProgram& gp) {
  std::vector<std::string> names;
  Json vars = Json::array();
  for (const auto& v : gp.variables) {
    names.push_back(v.name);
    vars.push_back({{"name", v.name}, {"initial", v.initial}});
  }
  Json objective = Json::array();
  for (const auto& m : gp.objective) objective.push_back(monomial_json(m, names));
  Json rows = Json::array();
  for (const auto& row : gp.inequalities) {
    Json r = Json::array();
    for (const auto& m : row) r.push_back(monomial_json(m, names));
    rows.push_back(std::move(r));
  }
  Json eqs = Json::array();
  for (const auto& m : gp.equalities) eqs.push_back(monomial_json(m, names));
  return {{"variables", std::move(vars)},
          {"objective", std::move(objective)},
          {"inequalities", std::move(rows)},
          {"equalities", std::move(eqs)},
          {"reference_offset", gp.reference_offset},
          {"bound_constant", gp.bound_constant}};
}

Json to_json(const LogConvexProgram& lcp) {
  const auto& names = lcp.variable_names;
  Json objective = Json::array();
  for (const auto& t : lcp.objective) objective.push_back(term_json(t, names));
  Json rows = Json::array();
  for (const auto& row : lcp.inequalities) {
    Json r = Json::array();
    for (const auto& t : row) r.push_back(term_json(t, names));
    rows.push_back(std::move(r));
  }
  Json eqs = Json::array();
  for (const auto& e : lcp.equalities)
    eqs.push_back({{"coeffs", named_exponents(e.coefficients, names)}, {"rhs", e.rhs}});
  return {{"variables", names},
          {"initial_point", lcp.initial_point},
          {"objective", std::move(objective)},
          {"inequalities", std::move(rows)},
          {"equalities", std::move(eqs)},
          {"reference_offset", lcp.reference_offset},
          {"bound_constant", lcp.bound_constant}};
}

Json to_json(const ViolationReport& r) {
  Json viol = Json::array();
  for (const auto& v : r.violations)
    viol.push_back({{"point", v.point}, {"value", v.value}, {"margin", v.margin}});
  Json j;
  j["samples"] = r.samples;
  j["bound"] = r.bound;
  j["sound"] = r.sound();
  j["violation_count"] = r.violation_count;
  j["violations"] = std::move(viol);
  j["min_observed"] = r.samples > 0 ? Json(r.min_observed) : Json(nullptr);
  j["argmin"] = r.argmin;
  return j;
}

Json to_json(const SweepResult& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x = {{"lambda", e.lambda}, {"value", to_json(e.value)}};
    if (e.failed) x["failed"] = true;
    entries.push_back(std::move(x));
  }
  return {{"best_lambda", r.best_lambda},
          {"best_value", to_json(r.best_value)},
          {"entries", std::move(entries)}};
}

Json to_json(const BenchCell& c) {
  Json j;
  j["n"] = c.n;
  j["two_d"] = c.two_d;
  j["omega_size"] = c.omega_size ? Json(*c.omega_size) : Json("dense");
  if (c.skipped) {
    j["skipped"] = true;
    j["reason"] = c.skip_reason;
    return j;
  }
  j["mean_seconds"] = c.mean_seconds();
  j["max_seconds"] = c.max_seconds();
  Json runs = Json::array();
  for (const auto& r : c.runs) {
    Json x = {{"index", r.index}, {"seed", r.seed}, {"M", r.M}, {"terms", r.terms},
              {"bound", r.bound ? Json(*r.bound) : Json(nullptr)}, {"seconds", r.seconds}};
    if (!r.error.empty()) x["error"] = r.error;
    runs.push_back(std::move(x));
  }
  j["runs"] = std::move(runs);
  return j;
}

}  // namespace gpbound

#pragma once

#include "json.hpp"

#include "gpbound/bounds.hpp"
#include "gpbound/gpmodel.hpp"
#include "gpbound/gpsolve.hpp"
#include "gpbound/instance.hpp"
#include "gpbound/oracle.hpp"
#include "gpbound/polyring.hpp"

namespace gpbound {

using Json = nlohmann::ordered_json;

/// {"n", "two_d", "terms": [{"coeff", "exp"}]} with terms in graded-lex order.
Json to_json(const Polynomial& p);
/// Throws PolynomialError on a malformed document.
Polynomial polynomial_from_json(const Json& j);

/// -infinity is written as the string "neg_inf".
Json to_json(const ExtendedReal& v);
Json to_json(const Solution& s);
Json to_json(const Bound& b);
Json to_json(const GeometricProgram& gp);
Json to_json(const LogConvexProgram& lcp);
Json to_json(const ViolationReport& r);
Json to_json(const SweepResult& r);
Json to_json(const BenchCell& c);

}  // namespace gpbound

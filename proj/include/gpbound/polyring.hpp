#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gpbound {

/// Exponent vector alpha in N^n.
using Exponent = std::vector<int>;

int total_degree(const Exponent& alpha);

class PolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax error in a polynomial expression; `position` is a 0-based offset.
class ParseError : public PolynomialError {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Term {
  Exponent exponent;
  double coefficient = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in n variables carried together with an even working
/// degree 2d >= deg f. Terms are kept merged with no zero coefficients.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, double>;

  Polynomial(std::size_t n, int two_d);
  /// Merges duplicate exponents and drops zero coefficients.
  Polynomial(std::size_t n, int two_d, std::span<const Term> terms);
  Polynomial(std::size_t n, int two_d, const TermMap& terms);

  std::size_t n() const { return n_; }
  int two_d() const { return two_d_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const;
  double coefficient(const Exponent& alpha) const;
  double constant_term() const;
  /// Coefficient of x_i^{2d}.
  double diagonal(std::size_t i) const;

  /// Terms in graded-lex order, highest first.
  std::vector<Term> sorted_terms() const;

  /// Same terms with a different working degree.
  Polynomial with_two_d(int two_d) const;

  /// Expression in x0..x{n-1} syntax, graded-lex order.
  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Exponent& alpha, double coeff);
  void validate() const;

  std::size_t n_;
  int two_d_;
  TermMap terms_;
};

/// Sum on the common variable count; working degree is the larger of the two.
Polynomial operator+(const Polynomial& p, const Polynomial& q);

/// Parses "x0^6 + 3*x0^4 - 9*x0^2" or the single-letter style
/// "w^6 + 5wx^3y - 3z". Letters are numbered alphabetically. Juxtaposition
/// multiplies.
Polynomial parse_polynomial(std::string_view text,
                            std::optional<std::size_t> n_hint = std::nullopt,
                            std::optional<int> two_d_hint = std::nullopt);

double evaluate(const Polynomial& p, std::span<const double> x);

bool is_square_monomial(double coeff, const Exponent& alpha);

struct SupportSets {
  std::size_t n = 0;
  int two_d = 0;
  /// Omega(f): nonzero terms other than the constant and the x_i^{2d}.
  std::vector<Term> omega;
  /// Delta(f): members of omega that are not squares.
  std::vector<Term> delta;
  /// Members of delta with |alpha| < 2d.
  std::vector<Term> delta_lt;
  std::vector<double> diagonal;
  double constant = 0.0;
};

SupportSets support_sets(const Polynomial& p);

/// Variable i of `p` becomes variable perm[i] of the result (0-based).
Polynomial permute_variables(const Polynomial& p,
                             std::span<const std::size_t> perm);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);

}  // namespace gpbound

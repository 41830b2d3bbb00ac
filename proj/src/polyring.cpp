#include "gpbound/polyring.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace gpbound {

int total_degree(const Exponent& alpha) {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : PolynomialError(what + " at position " + std::to_string(position)),
      position_(position) {}

Polynomial::Polynomial(std::size_t n, int two_d) : n_(n), two_d_(two_d) {
  validate();
}

Polynomial::Polynomial(std::size_t n, int two_d, std::span<const Term> terms)
    : n_(n), two_d_(two_d) {
  for (const auto& t : terms) add_term(t.exponent, t.coefficient);
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
  validate();
}

Polynomial::Polynomial(std::size_t n, int two_d, const TermMap& terms)
    : n_(n), two_d_(two_d) {
  for (const auto& [alpha, c] : terms) add_term(alpha, c);
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
  validate();
}

void Polynomial::add_term(const Exponent& alpha, double coeff) {
  if (alpha.size() != n_)
    throw PolynomialError("exponent vector has length " +
                          std::to_string(alpha.size()) + ", expected " +
                          std::to_string(n_));
  if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }))
    throw PolynomialError("negative exponent");
  if (!std::isfinite(coeff)) throw PolynomialError("non-finite coefficient");
  terms_[alpha] += coeff;
}

void Polynomial::validate() const {
  if (n_ == 0) throw PolynomialError("variable count must be positive");
  if (two_d_ <= 0 || two_d_ % 2 != 0)
    throw PolynomialError("working degree 2d must be a positive even integer, got " +
                          std::to_string(two_d_));
  const int deg = degree();
  if (deg > two_d_)
    throw PolynomialError("working degree " + std::to_string(two_d_) +
                          " is below the polynomial degree " +
                          std::to_string(deg));
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [alpha, c] : terms_) deg = std::max(deg, total_degree(alpha));
  return deg;
}

double Polynomial::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

double Polynomial::constant_term() const {
  return coefficient(Exponent(n_, 0));
}

double Polynomial::diagonal(std::size_t i) const {
  Exponent e(n_, 0);
  e.at(i) = two_d_;
  return coefficient(e);
}

std::vector<Term> Polynomial::sorted_terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [alpha, c] : terms_) out.push_back({alpha, c});
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    const int da = total_degree(a.exponent);
    const int db = total_degree(b.exponent);
    if (da != db) return da > db;
    return a.exponent > b.exponent;
  });
  return out;
}

Polynomial Polynomial::with_two_d(int two_d) const {
  return Polynomial(n_, two_d, terms_);
}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : sorted_terms()) {
    double c = t.coefficient;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    c = std::abs(c);
    std::string mono;
    for (std::size_t i = 0; i < n_; ++i) {
      const int a = t.exponent[i];
      if (a == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (a > 1) mono += "^" + std::to_string(a);
    }
    if (mono.empty()) {
      out += format_number(c);
    } else if (c == 1.0) {
      out += mono;
    } else {
      out += format_number(c) + "*" + mono;
    }
    first = false;
  }
  return out;
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  if (p.n() != q.n())
    throw PolynomialError("cannot add polynomials in different variable counts");
  std::vector<Term> terms;
  for (const auto& [a, c] : p.terms()) terms.push_back({a, c});
  for (const auto& [a, c] : q.terms()) terms.push_back({a, c});
  return Polynomial(p.n(), std::max(p.two_d(), q.two_d()), terms);
}

double evaluate(const Polynomial& p, std::span<const double> x) {
  if (x.size() != p.n())
    throw PolynomialError("point has dimension " + std::to_string(x.size()) +
                          ", polynomial has " + std::to_string(p.n()) +
                          " variables");
  double sum = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    double m = c;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] != 0) m *= std::pow(x[i], alpha[i]);
    }
    sum += m;
  }
  return sum;
}

bool is_square_monomial(double coeff, const Exponent& alpha) {
  return coeff > 0 &&
         std::all_of(alpha.begin(), alpha.end(), [](int a) { return a % 2 == 0; });
}

SupportSets support_sets(const Polynomial& p) {
  SupportSets s;
  s.n = p.n();
  s.two_d = p.two_d();
  s.diagonal.assign(p.n(), 0.0);
  for (const auto& t : p.sorted_terms()) {
    const int deg = total_degree(t.exponent);
    if (deg == 0) {
      s.constant = t.coefficient;
      continue;
    }
    if (deg == p.two_d()) {
      auto nz = std::count_if(t.exponent.begin(), t.exponent.end(),
                              [](int a) { return a != 0; });
      if (nz == 1) {
        auto it = std::find(t.exponent.begin(), t.exponent.end(), p.two_d());
        s.diagonal[static_cast<std::size_t>(it - t.exponent.begin())] =
            t.coefficient;
        continue;
      }
    }
    s.omega.push_back(t);
    if (!is_square_monomial(t.coefficient, t.exponent)) {
      s.delta.push_back(t);
      if (deg < p.two_d()) s.delta_lt.push_back(t);
    }
  }
  return s;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  std::vector<std::size_t> inv(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || inv[perm[i]] != perm.size())
      throw PolynomialError("not a permutation");
    inv[perm[i]] = i;
  }
  return inv;
}

Polynomial permute_variables(const Polynomial& p,
                             std::span<const std::size_t> perm) {
  if (perm.size() != p.n())
    throw PolynomialError("permutation length does not match variable count");
  inverse_permutation(perm);  // validates
  Polynomial::TermMap out;
  for (const auto& [alpha, c] : p.terms()) {
    Exponent beta(alpha.size(), 0);
    for (std::size_t i = 0; i < alpha.size(); ++i) beta[perm[i]] = alpha[i];
    out.emplace(std::move(beta), c);
  }
  return Polynomial(p.n(), p.two_d(), out);
}

}  // namespace gpbound

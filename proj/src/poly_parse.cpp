#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "gpbound/polyring.hpp"

namespace gpbound {
namespace {

struct RawTerm {
  double coeff = 1.0;
  std::map<int, int> indexed;     // x<k> -> power
  std::map<char, int> lettered;   // letter -> power
  std::size_t position = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawTerm> run() {
    std::vector<RawTerm> out;
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    bool first = true;
    while (true) {
      skip_ws();
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-'", pos_);
      }
      RawTerm t = term();
      t.coeff *= sign;
      out.push_back(std::move(t));
      first = false;
      skip_ws();
      if (at_end()) break;
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  static bool is_letter(char c) {
    return std::islower(static_cast<unsigned char>(c)) != 0;
  }
  static bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  }

  RawTerm term() {
    RawTerm t;
    t.position = pos_;
    factor(t);
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        factor(t);
      } else if (is_letter(peek())) {
        factor(t);
      } else {
        break;
      }
    }
    return t;
  }

  void factor(RawTerm& t) {
    const char c = peek();
    if (is_digit(c) || c == '.') {
      t.coeff *= number();
      return;
    }
    if (!is_letter(c)) throw ParseError("expected a number or variable", pos_);
    ++pos_;
    bool indexed = false;
    int index = 0;
    if (c == 'x' && is_digit(peek())) {
      indexed = true;
      index = integer();
    } else if (is_digit(peek())) {
      throw ParseError("digits directly after variable '" + std::string(1, c) +
                           "'; write an explicit '*' or '^'",
                       pos_);
    }
    int power = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!is_digit(peek())) throw ParseError("expected integer exponent", pos_);
      power = integer();
    }
    if (indexed) {
      t.indexed[index] += power;
    } else {
      t.lettered[c] += power;
    }
  }

  int integer() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    int value = 0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || start == pos_)
      throw ParseError("invalid integer", start);
    return value;
  }

  double number() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-'))
        ++look;
      if (look < text_.size() && is_digit(text_[look])) {
        pos_ = look;
        while (is_digit(peek())) ++pos_;
      }
    }
    double value = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_)
      throw ParseError("invalid number", start);
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text,
                            std::optional<std::size_t> n_hint,
                            std::optional<int> two_d_hint) {
  const auto raw = Parser(text).run();

  std::set<char> letters;
  int max_index = -1;
  std::size_t first_indexed = text.size(), first_lettered = text.size();
  for (const auto& t : raw) {
    for (const auto& [c, p] : t.lettered) {
      letters.insert(c);
      first_lettered = std::min(first_lettered, t.position);
    }
    for (const auto& [k, p] : t.indexed) {
      max_index = std::max(max_index, k);
      first_indexed = std::min(first_indexed, t.position);
    }
  }
  if (!letters.empty() && max_index >= 0)
    throw ParseError("cannot mix indexed (x0, x1, ...) and single-letter variables",
                     std::max(first_indexed, first_lettered));

  std::size_t n = letters.empty() ? static_cast<std::size_t>(max_index + 1)
                                  : letters.size();
  if (n_hint) {
    if (*n_hint < n)
      throw PolynomialError("variable count hint " + std::to_string(*n_hint) +
                            " is smaller than the " + std::to_string(n) +
                            " variables used");
    n = *n_hint;
  }
  n = std::max<std::size_t>(n, 1);

  std::map<char, std::size_t> letter_index;
  for (char c : letters) letter_index.emplace(c, letter_index.size());

  std::vector<Term> terms;
  int degree = 0;
  for (const auto& t : raw) {
    Exponent alpha(n, 0);
    for (const auto& [k, p] : t.indexed) alpha[static_cast<std::size_t>(k)] += p;
    for (const auto& [c, p] : t.lettered) alpha[letter_index.at(c)] += p;
    terms.push_back({std::move(alpha), t.coeff});
  }
  {
    // Degree after merging, so cancelled terms do not count.
    Polynomial::TermMap m;
    for (const auto& t : terms) m[t.exponent] += t.coefficient;
    std::erase_if(m, [](const auto& kv) { return kv.second == 0.0; });
    for (const auto& [alpha, c] : m) degree = std::max(degree, total_degree(alpha));
  }

  int two_d = std::max(2, degree + (degree % 2));
  if (two_d_hint) {
    if (*two_d_hint <= 0 || *two_d_hint % 2 != 0)
      throw PolynomialError("working degree must be a positive even integer, got " +
                            std::to_string(*two_d_hint));
    if (*two_d_hint < degree)
      throw PolynomialError("working degree " + std::to_string(*two_d_hint) +
                            " is below the polynomial degree " +
                            std::to_string(degree));
    two_d = *two_d_hint;
  }
  return Polynomial(n, two_d, terms);
}

}  // namespace gpbound

#pragma once

#include <string>

#include "gpbound/polyring.hpp"

namespace fixtures {

// One-variable instance with f_* = -5 and a closed-form ball bound.
inline const char* kSextic = "x^6+3x^4-9x^2";
// x^4 - 8x^3 + 8x^2 + 1: minimum 1 on the unit ball, 2x^2(x-2)^2 after adding 1 - x^4.
inline const char* kQuartic = "x^4-8x^3+8x^2+1";
// Single |alpha| = 2d non-square whose equality cannot be met in the unit box.
inline const char* kInfeasibleQuartic = "x0^4+x1^4-6*x0^3*x1";

inline const char* kDense4 =
    "w^6 + x^6 + y^6 + z^6 + 7w^4y - 10w^3xy + 5wx^3y- 3w^3y^2 - 3w^2xy^2 + 9wxy^3 - 10xy^4 "
    "+ 7w^4z +wx^3z - 5xyz^3 - 5z^5 + 8w^4 + 8w^2x^2 - 4wx^3 -w^3y + 2wx^2y + 3w^2y^2 - wxy^2 "
    "+ wy^3 +7w^2xz - 3y^3z + w^2z^2 + 2y^2z^2 - 2w^3 + 8x^3 -5w^2y + 8x^2z + 3xz - 3z + 5";
inline const char* kMixedDiagonal =
    "8w^6 + 6x^6 + 4y^6 + 2z^6 - 3w^3x^2 + 8w^2xyz - 9xz^4 + 2w^2xz - 3xz^2";
// No diagonal terms; used with 2d = 8.
inline const char* kZeroDiagonal = "-7x^3y^4 + 13x^2y^5 + 5y^4z + 18xz^4 - 5z^2";
// No diagonal terms; used with 2d = 40.
inline const char* kHighDegree =
    "-9w^12x^9y^12z^5 + 19w^8x^2yz^20 - 3w^11x^6y^9z^4 - 3w^13x^14z - 18w^4x^12y^3";

inline std::string twenty_variable_instance() {
  std::string e;
  for (int i = 0; i < 20; ++i) e += "x" + std::to_string(i) + "^20 + ";
  e += "x2^6*x3^3*x5*x7*x8^3*x9*x10*x11^2*x12 "
       "- 17*x1*x2*x3*x6*x7*x9^2*x10*x12^4*x14^4*x16*x18*x19 "
       "+ 19*x4^6*x5^4*x6^2*x9*x12*x17^2*x18*x19^2 "
       "- 10*x0*x1^5*x2*x8^3*x12*x15*x17*x18^2*x19^4 "
       "- 11*x0^2*x2*x4^3*x5*x6*x12^4*x15^4*x16*x17 "
       "+ 15*x1^2*x5^3*x6*x8*x9*x14^2*x15^4*x18^2*x19^2 "
       "+ 2*x1*x2^2*x4^3*x6*x10*x11^2*x13*x15*x17*x18*x19^3";
  return e;
}

inline gpbound::Polynomial parse(const std::string& s, int two_d = 0) {
  return gpbound::parse_polynomial(s, std::nullopt,
                                   two_d ? std::optional<int>(two_d) : std::nullopt);
}

}  // namespace fixtures

#pragma once

// Independent sign oracle for a + b*sqrt(2) by squaring, no interval arithmetic.

#include "logpar/rational.hpp"

namespace oracle {

inline int sign_q(const logpar::Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline int sign_sqrt2(const logpar::Rational& a, const logpar::Rational& b) {
  const int sa = sign_q(a), sb = sign_q(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with 2 b^2.
  const logpar::Rational diff = a * a - 2 * b * b;
  return sign_q(diff) * sa;
}

}  // namespace oracle

#pragma once

#include "logpar/rational.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logpar {

// A real algebraic irrational alpha, fixed by an irreducible integer
// polynomial and a rational interval isolating one of its real roots.
class AlgebraicGround {
 public:
  // Coefficients from the constant term upward.
  AlgebraicGround(std::vector<Integer> minimal_polynomial, Rational lower, Rational upper);

  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  const std::vector<Integer>& minimal_polynomial() const { return minpoly_; }
  const Rational& lower() const { return lower_; }
  const Rational& upper() const { return upper_; }

  // Reduces a power-basis vector of arbitrary length modulo the minimal polynomial.
  std::vector<Rational> reduce(std::vector<Rational> coeffs) const;

  // Sign of sum c_k alpha^k, c nonzero of length <= degree.
  int sign_of(const std::vector<Rational>& coeffs) const;
  // A rational interval containing sum c_k alpha^k, from the cached isolating interval.
  std::pair<Rational, Rational> enclosure(const std::vector<Rational>& coeffs) const;

  bool same_as(const AlgebraicGround& other) const;

 private:
  int minpoly_sign_at(const Rational& x) const;

  std::vector<Integer> minpoly_;
  std::vector<Rational> monic_;  // minpoly divided by its leading coefficient
  Rational lower_, upper_;       // as given
  Rational tight_lower_, tight_upper_;
  int sign_at_tight_lower_ = 0;
};

using GroundPtr = std::shared_ptr<const AlgebraicGround>;

GroundPtr sqrt2_ground();

// Element of Q[alpha] in the power basis; a null ground means the element is rational.
class WeightFieldElement {
 public:
  WeightFieldElement() = default;
  WeightFieldElement(long value) : coeffs_{Rational(value)} { trim(); }  // NOLINT
  WeightFieldElement(Rational value) : coeffs_{std::move(value)} { trim(); }  // NOLINT
  WeightFieldElement(GroundPtr ground, std::vector<Rational> coeffs);

  static WeightFieldElement alpha(GroundPtr ground);

  const GroundPtr& ground() const { return ground_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  Rational rational_part() const { return coefficient(0); }
  WeightFieldElement irrational_part() const;

  int sign() const;
  Integer floor() const;
  WeightFieldElement frac() const { return *this - WeightFieldElement(Rational(floor())); }

  WeightFieldElement operator-() const;
  WeightFieldElement& operator+=(const WeightFieldElement& o);
  WeightFieldElement& operator-=(const WeightFieldElement& o);
  friend WeightFieldElement operator+(WeightFieldElement a, const WeightFieldElement& b) { return a += b; }
  friend WeightFieldElement operator-(WeightFieldElement a, const WeightFieldElement& b) { return a -= b; }
  friend WeightFieldElement operator*(const WeightFieldElement& a, const WeightFieldElement& b);

  friend bool operator==(const WeightFieldElement& a, const WeightFieldElement& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const WeightFieldElement& a, const WeightFieldElement& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const WeightFieldElement& a, const WeightFieldElement& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const WeightFieldElement& a, const WeightFieldElement& b) { return (a - b).sign() > 0; }
  friend bool operator>=(const WeightFieldElement& a, const WeightFieldElement& b) { return (a - b).sign() >= 0; }

  // Coefficient-wise order; cheap and total, but not the numeric order.
  static bool structural_less(const WeightFieldElement& a, const WeightFieldElement& b);

  std::string str() const;

 private:
  void trim();
  static GroundPtr common_ground(const WeightFieldElement& a, const WeightFieldElement& b);

  GroundPtr ground_;
  std::vector<Rational> coeffs_;
};

int sign(const WeightFieldElement& x);

// "3-2a", "1/2", "a^2+1"; 'a' denotes alpha. A rational-only string needs no ground.
WeightFieldElement parse_weight_scalar(std::string_view text, const GroundPtr& ground);

// A weight scalar modulo 1, stored by its representative in [0,1).
class PhaseClass {
 public:
  PhaseClass() = default;
  explicit PhaseClass(const WeightFieldElement& theta) : rep_(theta.frac()) {}

  const WeightFieldElement& representative() const { return rep_; }
  PhaseClass operator+(const PhaseClass& o) const { return PhaseClass(rep_ + o.rep_); }
  PhaseClass operator-() const { return PhaseClass(-rep_); }
  friend bool operator==(const PhaseClass& a, const PhaseClass& b) { return a.rep_ == b.rep_; }

 private:
  WeightFieldElement rep_;
};

bool phase_is_trivial(const PhaseClass& theta);

}  // namespace logpar

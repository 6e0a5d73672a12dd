#pragma once

// Exact scalars for equivariant computations: the cyclotomic field Q(zeta_N),
// rational functions over it in a formal unit u (the image of e^{2 pi i alpha}),
// and a second layer in a formal unit v (the image of 2 pi i).

#include "logpar/rational.hpp"
#include "logpar/weightfield.hpp"

#include <string>
#include <vector>

namespace logpar {

struct CyclotomicContext {
  int order = 1;
  std::vector<Rational> modulus;  // monic cyclotomic polynomial, constant term first
};

// Interned per order; the returned reference lives for the whole program.
const CyclotomicContext& cyclotomic_context(int order);

// Element of Q(zeta_N). A null context marks a rational constant, which mixes
// freely with elements of any level.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long value) : coeffs_{Rational(value)} { trim(); }  // NOLINT
  Cyclotomic(Rational value) : coeffs_{std::move(value)} { trim(); }  // NOLINT

  // zeta_N^k with zeta_N = e^{2 pi i / N}.
  static Cyclotomic root_of_unity(const CyclotomicContext& ctx, long k);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic inverse() const;
  std::string str() const;

 private:
  Cyclotomic(const CyclotomicContext* ctx, std::vector<Rational> coeffs);
  void trim();
  static const CyclotomicContext* common(const Cyclotomic& a, const Cyclotomic& b);

  const CyclotomicContext* ctx_ = nullptr;
  std::vector<Rational> coeffs_;
};

inline int pivot_cost(const Cyclotomic& c) { return static_cast<int>(c.coefficients().size()); }

// Dense univariate polynomial over a field C, constant term first, trimmed.
template <class C>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(C constant) {  // NOLINT
    if (!(constant == C(0))) coeffs_.push_back(std::move(constant));
  }
  explicit Polynomial(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  static Polynomial monomial(C coeff, std::size_t power) {
    std::vector<C> c(power + 1, C(0));
    c[power] = std::move(coeff);
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const C& leading() const { return coeffs_.back(); }
  const std::vector<C>& coefficients() const { return coeffs_; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<C> c(std::max(a.coeffs_.size(), b.coeffs_.size()), C(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] = a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] = c[k] + b.coeffs_[k];
    return Polynomial(std::move(c));
  }
  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> c(a.coeffs_.size() + b.coeffs_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = c[i + j] + a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }
  Polynomial scaled(const C& factor) const {
    Polynomial out = *this;
    for (auto& c : out.coeffs_) c = c * factor;
    out.trim();
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Quotient and remainder; divisor must be nonzero.
  static std::pair<Polynomial, Polynomial> divide(Polynomial a, const Polynomial& b) {
    std::vector<C> q(a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_.size() - b.coeffs_.size() + 1 : 0, C(0));
    const C lead_inv = C(1) / b.leading();
    while (!a.is_zero() && a.degree() >= b.degree()) {
      const std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
      const C factor = a.leading() * lead_inv;
      q[shift] = factor;
      for (std::size_t k = 0; k < b.coeffs_.size(); ++k) a.coeffs_[shift + k] = a.coeffs_[shift + k] - factor * b.coeffs_[k];
      a.coeffs_.pop_back();
      a.trim();
    }
    return {Polynomial(std::move(q)), std::move(a)};
  }

  Polynomial monic() const { return is_zero() ? *this : scaled(C(1) / leading()); }

  static Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divide(std::move(a), b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == C(0)) coeffs_.pop_back();
  }
  std::vector<C> coeffs_;
};

// Reduced fraction of polynomials over C with monic denominator.
template <class C>
class RationalFunction {
 public:
  using Poly = Polynomial<C>;

  RationalFunction() : den_(C(1)) {}
  RationalFunction(long value) : num_(C(value)), den_(C(1)) {}  // NOLINT
  RationalFunction(C constant) : num_(std::move(constant)), den_(C(1)) {}  // NOLINT
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  // The variable raised to an integer power.
  static RationalFunction variable_power(long power) {
    if (power >= 0) return RationalFunction(Poly::monomial(C(1), static_cast<std::size_t>(power)), Poly(C(1)));
    return RationalFunction(Poly(C(1)), Poly::monomial(C(1), static_cast<std::size_t>(-power)));
  }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_, raw_tag{}); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

 private:
  struct raw_tag {};
  RationalFunction(Poly num, Poly den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void normalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(C(1));
      return;
    }
    if (den_.degree() > 0) {
      const Poly g = Poly::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = Poly::divide(num_, g).first;
        den_ = Poly::divide(den_, g).first;
      }
    }
    if (!(den_.leading() == C(1))) {
      const C inv = C(1) / den_.leading();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  Poly num_;
  Poly den_;
};

template <class C>
int pivot_cost(const RationalFunction<C>& f) {
  return static_cast<int>(4 * (f.numerator().degree() + f.denominator().degree()) + pivot_cost(f.numerator().leading()));
}

// Rational functions in u over Q(zeta_N).
using PhaseScalar = RationalFunction<Cyclotomic>;
// Rational functions in v over PhaseScalar.
using ScalarElement = RationalFunction<PhaseScalar>;

// Embedding of phase classes q + n*alpha (mod 1) as zeta_N^{qN} u^{n M}.
// u stands for e^{2 pi i alpha / M}; M = 1 is the plain embedding.
class ScalarField {
 public:
  explicit ScalarField(int cyclotomic_level, int u_level = 1);

  int level() const { return level_; }
  int u_level() const { return u_level_; }

  PhaseScalar embed_phase(const PhaseClass& theta) const;
  PhaseScalar u_power(long k) const { return PhaseScalar::variable_power(k); }
  static ScalarElement v_power(long k) { return ScalarElement::variable_power(k); }

 private:
  int level_;
  int u_level_;
  const CyclotomicContext* ctx_;
};

std::string to_string(const PhaseScalar& x);

}  // namespace logpar

namespace Eigen {

template <>
struct NumTraits<logpar::Cyclotomic> : GenericNumTraits<logpar::Cyclotomic> {
  using Real = logpar::Cyclotomic;
  using NonInteger = logpar::Cyclotomic;
  using Nested = logpar::Cyclotomic;
  using Literal = logpar::Cyclotomic;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 10, AddCost = 20, MulCost = 50 };
};

template <class C>
struct NumTraits<logpar::RationalFunction<C>> : GenericNumTraits<logpar::RationalFunction<C>> {
  using Real = logpar::RationalFunction<C>;
  using NonInteger = logpar::RationalFunction<C>;
  using Nested = logpar::RationalFunction<C>;
  using Literal = logpar::RationalFunction<C>;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 10, AddCost = 50, MulCost = 100 };
};

}  // namespace Eigen

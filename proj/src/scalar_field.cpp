#include "logpar/scalar_field.hpp"

#include "logpar/errors.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace logpar {

namespace {

using QPoly = Polynomial<Rational>;

QPoly cyclotomic_polynomial(int n) {
  QPoly p = QPoly::monomial(Rational(1), static_cast<std::size_t>(n)) - QPoly(Rational(1));
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = QPoly::divide(p, cyclotomic_polynomial(d)).first;
  return p;
}

std::vector<Rational> reduce_mod(std::vector<Rational> c, const std::vector<Rational>& modulus) {
  const std::size_t d = modulus.size() - 1;
  while (c.size() > d) {
    const Rational top = c.back();
    const std::size_t shift = c.size() - 1 - d;
    if (top != 0)
      for (std::size_t k = 0; k < d; ++k) c[shift + k] -= top * modulus[k];
    c.pop_back();
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

}  // namespace

const CyclotomicContext& cyclotomic_context(int order) {
  if (order < 1) throw InputError("cyclotomic level must be positive");
  static std::mutex guard;
  static std::map<int, std::unique_ptr<CyclotomicContext>> interned;
  std::lock_guard lock(guard);
  auto& slot = interned[order];
  if (!slot) {
    slot = std::make_unique<CyclotomicContext>();
    slot->order = order;
    slot->modulus = cyclotomic_polynomial(order).coefficients();
  }
  return *slot;
}

Cyclotomic::Cyclotomic(const CyclotomicContext* ctx, std::vector<Rational> coeffs)
    : ctx_(ctx), coeffs_(std::move(coeffs)) {
  if (ctx_) coeffs_ = reduce_mod(std::move(coeffs_), ctx_->modulus);
  trim();
}

void Cyclotomic::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Cyclotomic Cyclotomic::root_of_unity(const CyclotomicContext& ctx, long k) {
  const long n = ctx.order;
  const long e = ((k % n) + n) % n;
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1, Rational(0));
  c.back() = 1;
  return Cyclotomic(&ctx, std::move(c));
}

const CyclotomicContext* Cyclotomic::common(const Cyclotomic& a, const Cyclotomic& b) {
  if (!a.ctx_ || a.is_rational()) return b.ctx_ ? b.ctx_ : a.ctx_;
  if (!b.ctx_ || b.is_rational() || a.ctx_ == b.ctx_) return a.ctx_;
  throw InputError("cyclotomic elements of different levels");
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic out;
  out.ctx_ = Cyclotomic::common(a, b);
  out.coeffs_.assign(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out.coeffs_[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out.coeffs_[k] += b.coeffs_[k];
  out.trim();
  return out;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_rational() && b.is_rational()) return Cyclotomic(a.coeffs_[0] * b.coeffs_[0]);
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Cyclotomic(Cyclotomic::common(a, b), std::move(c));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in a cyclotomic field");
  if (is_rational()) return Cyclotomic(Rational(1) / coeffs_[0]);
  // Extended Euclid on (element, modulus): s*element + t*modulus = 1.
  QPoly r0(ctx_->modulus), r1(coeffs_);
  QPoly s0, s1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = QPoly::divide(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    QPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const Rational scale = Rational(1) / r0.leading();
  return Cyclotomic(ctx_, s0.scaled(scale).coefficients());
}

std::string Cyclotomic::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(coeffs_[k]) + ")";
    if (k > 0) out += "*z^" + std::to_string(k);
  }
  return out;
}

ScalarField::ScalarField(int cyclotomic_level, int u_level)
    : level_(cyclotomic_level), u_level_(u_level), ctx_(&cyclotomic_context(cyclotomic_level)) {
  if (u_level_ < 1) throw InputError("u-level must be positive");
}

PhaseScalar ScalarField::embed_phase(const PhaseClass& theta) const {
  const WeightFieldElement& rep = theta.representative();
  if (rep.coefficients().size() > 2)
    throw DenominatorOverflow("phase uses powers of alpha beyond the first; no embedding available");
  const Rational q = rep.rational_part();
  const Rational n = rep.coefficient(1);
  const Rational qn = q * level_;
  const Rational nm = n * u_level_;
  if (denominator(qn) != 1)
    throw DenominatorOverflow("phase denominator " + denominator(q).str() + " does not divide level " +
                              std::to_string(level_));
  if (denominator(nm) != 1)
    throw DenominatorOverflow("alpha coefficient denominator " + denominator(n).str() +
                              " does not divide u-level " + std::to_string(u_level_));
  const PhaseScalar root(Cyclotomic::root_of_unity(*ctx_, to_int64(numerator(qn))));
  return root * PhaseScalar::variable_power(to_int64(numerator(nm)));
}

std::string to_string(const PhaseScalar& x) {
  auto poly = [](const Polynomial<Cyclotomic>& p) {
    if (p.is_zero()) return std::string("0");
    std::string out;
    for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
      if (p.coefficients()[k].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "[" + p.coefficients()[k].str() + "]";
      if (k > 0) out += "*u^" + std::to_string(k);
    }
    return out;
  };
  if (x.denominator().degree() == 0) return poly(x.numerator());
  return "(" + poly(x.numerator()) + ")/(" + poly(x.denominator()) + ")";
}

}  // namespace logpar

#include "logpar/weightfield.hpp"

#include "logpar/errors.hpp"

#include <algorithm>
#include <cctype>

namespace logpar {

namespace {

using QPoly = std::vector<Rational>;  // constant term first

void trim_poly(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational evaluate(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_of_rational(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim_poly(d);
  return d;
}

QPoly remainder(QPoly a, const QPoly& b) {
  trim_poly(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    trim_poly(a);
  }
  return a;
}

int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    const int s = sign_of_rational(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Number of distinct real roots in (lo, hi].
int sturm_count(const QPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<QPoly> chain{p, derivative(p)};
  while (!chain.back().empty()) {
    QPoly r = remainder(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  if (n > Integer(1000000000000LL)) throw InputError("minimal polynomial coefficients too large");
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  return out;
}

bool has_rational_root(const std::vector<Integer>& p) {
  if (p.front() == 0) return true;
  const QPoly q(p.begin(), p.end());
  for (const auto& num : positive_divisors(p.front()))
    for (const auto& den : positive_divisors(p.back()))
      for (int s : {1, -1})
        if (evaluate(q, Rational(num * s, den)) == 0) return true;
  return false;
}

// Lagrange interpolation through (xs[i], ys[i]).
QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  QPoly result(xs.size(), Rational(0));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QPoly basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      QPoly next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    for (std::size_t k = 0; k < basis.size(); ++k) result[k] += basis[k] * ys[i] / denom;
  }
  trim_poly(result);
  return result;
}

// Kronecker's method: search integer factors of degree k by interpolating
// through divisor choices of p at k+1 sample points.
bool has_factor_of_degree(const std::vector<Integer>& p, std::size_t k) {
  const QPoly q(p.begin(), p.end());
  std::vector<Rational> xs;
  std::vector<std::vector<Integer>> choices;
  for (long x = 0; xs.size() < k + 1; x = x <= 0 ? 1 - x : -x) {
    const Rational value = evaluate(q, Rational(x));
    xs.emplace_back(x);
    std::vector<Integer> ds;
    for (const auto& d : positive_divisors(numerator(value))) {
      ds.push_back(d);
      if (!choices.empty()) ds.push_back(-d);
    }
    choices.push_back(std::move(ds));
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    std::vector<Rational> ys;
    for (std::size_t i = 0; i < idx.size(); ++i) ys.emplace_back(choices[i][idx[i]]);
    const QPoly f = interpolate(xs, ys);
    if (f.size() == k + 1 && std::all_of(f.begin(), f.end(), [](const Rational& c) { return denominator(c) == 1; }) &&
        remainder(q, f).empty())
      return true;
    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == choices[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) return false;
  }
}

bool is_irreducible(const std::vector<Integer>& p) {
  const std::size_t d = p.size() - 1;
  if (has_rational_root(p)) return false;
  if (d > 8) throw InputError("minimal polynomials above degree 8 are not supported");
  for (std::size_t k = 2; 2 * k <= d; ++k)
    if (has_factor_of_degree(p, k)) return false;
  return true;
}

std::pair<Rational, Rational> interval_product(const std::pair<Rational, Rational>& a, const Rational& lo,
                                               const Rational& hi) {
  const Rational c[4] = {a.first * lo, a.first * hi, a.second * lo, a.second * hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

std::pair<Rational, Rational> horner_enclosure(const QPoly& coeffs, const Rational& lo, const Rational& hi) {
  std::pair<Rational, Rational> acc{coeffs.back(), coeffs.back()};
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc = interval_product(acc, lo, hi);
    acc.first += coeffs[k];
    acc.second += coeffs[k];
  }
  return acc;
}

}  // namespace

AlgebraicGround::AlgebraicGround(std::vector<Integer> minimal_polynomial, Rational lower, Rational upper)
    : minpoly_(std::move(minimal_polynomial)), lower_(std::move(lower)), upper_(std::move(upper)) {
  while (!minpoly_.empty() && minpoly_.back() == 0) minpoly_.pop_back();
  if (minpoly_.size() < 3) throw InputError("ground polynomial must have degree >= 2");
  if (!(lower_ < upper_)) throw InputError("isolating interval must satisfy lower < upper");
  if (!is_irreducible(minpoly_)) throw InputError("ground polynomial is reducible over the rationals");
  for (const auto& c : minpoly_) monic_.emplace_back(c, minpoly_.back());
  if (sturm_count(monic_, lower_, upper_) != 1)
    throw InputError("isolating interval must contain exactly one real root");
  tight_lower_ = lower_;
  tight_upper_ = upper_;
  sign_at_tight_lower_ = minpoly_sign_at(tight_lower_);
  const Rational width_goal(Integer(1), Integer(1) << 40);
  while (tight_upper_ - tight_lower_ > width_goal) {
    const Rational mid = (tight_lower_ + tight_upper_) / 2;
    if (minpoly_sign_at(mid) == sign_at_tight_lower_) tight_lower_ = mid;
    else tight_upper_ = mid;
  }
}

int AlgebraicGround::minpoly_sign_at(const Rational& x) const { return sign_of_rational(evaluate(monic_, x)); }

std::vector<Rational> AlgebraicGround::reduce(std::vector<Rational> coeffs) const {
  const std::size_t d = static_cast<std::size_t>(degree());
  while (coeffs.size() > d) {
    const Rational top = coeffs.back();
    const std::size_t shift = coeffs.size() - 1 - d;
    for (std::size_t k = 0; k < d; ++k) coeffs[shift + k] -= top * monic_[k];
    coeffs.pop_back();
  }
  trim_poly(coeffs);
  return coeffs;
}

std::pair<Rational, Rational> AlgebraicGround::enclosure(const std::vector<Rational>& coeffs) const {
  if (coeffs.empty()) return {Rational(0), Rational(0)};
  return horner_enclosure(coeffs, tight_lower_, tight_upper_);
}

int AlgebraicGround::sign_of(const std::vector<Rational>& coeffs) const {
  if (coeffs.empty()) return 0;
  Rational lo = tight_lower_, hi = tight_upper_;
  for (;;) {
    const auto [a, b] = horner_enclosure(coeffs, lo, hi);
    if (a > 0) return 1;
    if (b < 0) return -1;
    const Rational mid = (lo + hi) / 2;
    if (minpoly_sign_at(mid) == sign_at_tight_lower_) lo = mid;
    else hi = mid;
  }
}

bool AlgebraicGround::same_as(const AlgebraicGround& other) const {
  return this == &other || (minpoly_ == other.minpoly_ && tight_lower_ < other.tight_upper_ &&
                            other.tight_lower_ < tight_upper_);
}

GroundPtr sqrt2_ground() {
  static const GroundPtr ground =
      std::make_shared<const AlgebraicGround>(std::vector<Integer>{-2, 0, 1}, Rational(1), Rational(2));
  return ground;
}

WeightFieldElement::WeightFieldElement(GroundPtr ground, std::vector<Rational> coeffs)
    : ground_(std::move(ground)), coeffs_(std::move(coeffs)) {
  if (ground_) coeffs_ = ground_->reduce(std::move(coeffs_));
  else if (coeffs_.size() > 1) {
    trim();
    if (coeffs_.size() > 1) throw InputError("irrational coefficients need a ground field");
  }
  trim();
}

WeightFieldElement WeightFieldElement::alpha(GroundPtr ground) {
  return WeightFieldElement(std::move(ground), {Rational(0), Rational(1)});
}

void WeightFieldElement::trim() { trim_poly(coeffs_); }

GroundPtr WeightFieldElement::common_ground(const WeightFieldElement& a, const WeightFieldElement& b) {
  if (!a.ground_) return b.ground_;
  if (!b.ground_ || a.ground_ == b.ground_) return a.ground_;
  if (!a.ground_->same_as(*b.ground_)) throw InputError("weights over different ground fields");
  return a.ground_;
}

WeightFieldElement WeightFieldElement::irrational_part() const {
  WeightFieldElement out = *this;
  if (!out.coeffs_.empty()) out.coeffs_[0] = 0;
  out.trim();
  return out;
}

int WeightFieldElement::sign() const {
  if (coeffs_.empty()) return 0;
  if (coeffs_.size() == 1) return sign_of_rational(coeffs_[0]);
  return ground_->sign_of(coeffs_);
}

int sign(const WeightFieldElement& x) { return x.sign(); }

Integer WeightFieldElement::floor() const {
  if (is_rational()) return floor_of(rational_part());
  Integer n = floor_of(ground_->enclosure(coeffs_).first);
  while ((*this - WeightFieldElement(Rational(n))).sign() < 0) n -= 1;
  while ((*this - WeightFieldElement(Rational(n + 1))).sign() >= 0) n += 1;
  return n;
}

WeightFieldElement WeightFieldElement::operator-() const {
  WeightFieldElement out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

WeightFieldElement& WeightFieldElement::operator+=(const WeightFieldElement& o) {
  ground_ = common_ground(*this, o);
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

WeightFieldElement& WeightFieldElement::operator-=(const WeightFieldElement& o) { return *this += -o; }

WeightFieldElement operator*(const WeightFieldElement& a, const WeightFieldElement& b) {
  if (a.is_zero() || b.is_zero()) return {};
  auto ground = WeightFieldElement::common_ground(a, b);
  std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return WeightFieldElement(std::move(ground), std::move(prod));
}

bool WeightFieldElement::structural_less(const WeightFieldElement& a, const WeightFieldElement& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k)
    if (a.coeffs_[k] != b.coeffs_[k]) return a.coeffs_[k] < b.coeffs_[k];
  return false;
}

std::string WeightFieldElement::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (c == 0) continue;
    std::string term;
    const Rational mag = c < 0 ? Rational(-c) : c;
    if (k == 0) term = to_string(mag);
    else {
      if (mag != 1) term = to_string(mag) + (denominator(mag) == 1 ? "" : "*");
      term += "a";
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    out += term;
  }
  return out;
}

WeightFieldElement parse_weight_scalar(std::string_view text, const GroundPtr& ground) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("empty weight literal");
  std::vector<Rational> coeffs;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sgn = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sgn = -1;
      ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    Rational coef = start == pos ? Rational(1) : parse_rational(s.substr(start, pos - start));
    std::size_t power = 0;
    if (pos < s.size() && s[pos] == '*') ++pos;
    if (pos < s.size() && s[pos] == 'a') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        start = ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw InputError("malformed exponent in '" + s + "'");
        power = std::stoul(s.substr(start, pos - start));
      }
    } else if (start == pos) {
      throw InputError("malformed weight literal '" + s + "'");
    }
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-') throw InputError("malformed weight literal '" + s + "'");
    if (coeffs.size() <= power) coeffs.resize(power + 1, Rational(0));
    coeffs[power] += coef * sgn;
  }
  if (coeffs.size() > 1 && !ground) throw InputError("'" + s + "' uses alpha but no ground field is declared");
  GroundPtr used = coeffs.size() > 1 ? ground : nullptr;
  return WeightFieldElement(std::move(used), std::move(coeffs));
}

bool phase_is_trivial(const PhaseClass& theta) { return theta.representative().is_zero(); }

}  // namespace logpar

#include "logpar/ringb.hpp"

#include "logpar/errors.hpp"

namespace logpar {

LatticePoint lattice_difference(const Weight& a, const Weight& b) {
  LatticePoint out;
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const WeightFieldElement d = a.coords[i] - b.coords[i];
    if (!d.is_rational() || denominator(d.rational_part()) != 1)
      throw std::logic_error("weights " + a.str() + " and " + b.str() + " differ by a non-lattice vector");
    out.push_back(to_int64(numerator(d.rational_part())));
  }
  return out;
}

RingB::RingB(WeightMonoid lambda, CoefficientRing coefficients, std::optional<DualElement> log_degree)
    : lambda_(std::move(lambda)),
      coefficients_(coefficients),
      log_degree_(log_degree ? *log_degree : lambda_.base().positive_functional()) {
  if (static_cast<int>(log_degree_.coords.size()) != lambda_.rank())
    throw RankMismatch("log degree covector has the wrong dimension");
  for (const auto& h : lambda_.base().hilbert_basis())
    if (log_degree_(h) <= 0) throw InputError("log degree must be positive on every nonzero element of P");
}

AElem RingB::f(const LatticePoint& p) const { return coefficients_.epsilon_power(log_degree_(p)); }

std::shared_ptr<const ClassSections> RingB::sections(const Weight& w) const {
  const CharacterClass cls(w);
  {
    std::lock_guard lock(cache_->guard);
    auto it = cache_->sections.find(cls.representative());
    if (it != cache_->sections.end()) return it->second;
  }
  auto out = std::make_shared<ClassSections>();
  out->cls = cls;
  out->monomials = lambda_.minimal_elements(cls);
  const std::size_t n = out->monomials.size();
  const int m = order();
  std::vector<AMatrix> columns;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      // Minimal nu above both: nu - mu_a ranges over the minimal points of
      // {x in P : x - d in P} with d = mu_b - mu_a.
      const LatticePoint d = lattice_difference(out->monomials[b], out->monomials[a]);
      std::vector<std::int64_t> bounds;
      for (const auto& normal : base().facet_normals()) bounds.push_back(std::max<std::int64_t>(0, dot(normal, d)));
      for (const auto& x : lambda_.minimal_points(bounds)) {
        AMatrix col(m, static_cast<Index>(n), 1);
        col(static_cast<Index>(a), 0) = f(x);
        col(static_cast<Index>(b), 0) = -f(x - d);
        if (!col.is_zero()) columns.push_back(std::move(col));
      }
    }
  AMatrix rel(m, static_cast<Index>(n), static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (Index i = 0; i < static_cast<Index>(n); ++i) rel(i, static_cast<Index>(j)) = columns[j](i, 0);
  out->module = FGModule(std::move(rel));
  std::lock_guard lock(cache_->guard);
  return cache_->sections.emplace(cls.representative(), std::move(out)).first->second;
}

RingB::Reduced RingB::reduce_in(const ClassSections& sec, const Weight& mu) const {
  for (std::size_t k = 0; k < sec.monomials.size(); ++k) {
    const LatticePoint q = lattice_difference(mu, sec.monomials[k]);
    if (base().member(q)) return {k, f(q)};
  }
  throw std::logic_error("monomial " + mu.str() + " is not in Lambda");
}

RingB::Reduced RingB::reduce(const Weight& mu) const { return reduce_in(*sections(mu), mu); }

std::string RingB::describe() const {
  return "B over " + coefficients_.describe() + ", Lambda = " + lambda_.describe();
}

}  // namespace logpar

#pragma once

#include "logpar/coefficients.hpp"
#include "logpar/monoid.hpp"
#include "logpar/weights.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace logpar {

// T-degree zero part of B in one character class c: the A-module spanned by
// S^mu for mu in Lambda with mu in c, modulo S^{mu+q} = f_q S^mu. It is
// generated by the minimal monomials; the relations sit at their minimal joins.
struct ClassSections {
  CharacterClass cls;
  std::vector<Weight> monomials;  // sorted by (phi, lex)
  FGModule module;

  std::size_t size() const { return monomials.size(); }
};

// The chart ring B: coefficients A, the monoid Lambda over P, chart values
// f_p = e^{deg p} for a covector deg that is positive on P minus 0.
class RingB {
 public:
  RingB(WeightMonoid lambda, CoefficientRing coefficients, std::optional<DualElement> log_degree = std::nullopt);

  const WeightMonoid& lambda() const { return lambda_; }
  const ToricMonoid& base() const { return lambda_.base(); }
  const CoefficientRing& coefficients() const { return coefficients_; }
  int order() const { return coefficients_.order(); }
  int rank() const { return lambda_.rank(); }
  const DualElement& log_degree() const { return log_degree_; }

  AElem f(const LatticePoint& p) const;

  // Sections for the class of w; cached, shared between callers.
  std::shared_ptr<const ClassSections> sections(const Weight& w) const;

  // S^mu = factor * S^{monomials[index]} inside the class of mu; mu must lie in Lambda.
  struct Reduced {
    std::size_t index;
    AElem factor;
  };
  Reduced reduce(const Weight& mu) const;
  // As reduce, for mu given relative to a known class.
  Reduced reduce_in(const ClassSections& sections, const Weight& mu) const;

  std::string describe() const;

 private:
  WeightMonoid lambda_;
  CoefficientRing coefficients_;
  DualElement log_degree_;
  struct Cache {
    std::mutex guard;
    std::map<Weight, std::shared_ptr<const ClassSections>, WeightKeyLess> sections;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

using RingPtr = std::shared_ptr<const RingB>;

// a - b for weights whose difference lies in P^gp.
LatticePoint lattice_difference(const Weight& a, const Weight& b);

}  // namespace logpar

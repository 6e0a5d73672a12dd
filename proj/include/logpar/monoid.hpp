#pragma once

#include "logpar/rational.hpp"
#include "logpar/weightfield.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace logpar {

// Integer covector on the group P^gp, stored in the chosen basis p_1..p_r.
struct DualElement {
  LatticePoint coords;

  std::int64_t operator()(const LatticePoint& v) const;
  WeightFieldElement operator()(const std::vector<WeightFieldElement>& v) const;
  friend bool operator==(const DualElement&, const DualElement&) = default;
};

// Which group the saturation is taken in: the group generated by the input
// generators, or the full ambient Z^r.
enum class SaturationLattice { Generated, Ambient };

// A fine, saturated, sharp monoid P inside Z^r. After construction every
// lattice point is expressed in the basis p_1..p_r of P^gp, so P^gp = Z^r.
class ToricMonoid {
 public:
  static ToricMonoid make(const std::vector<LatticePoint>& generators,
                          SaturationLattice lattice = SaturationLattice::Generated);

  int rank() const { return rank_; }

  // Columns are p_1..p_r in ambient coordinates.
  const Mat<Rational>& basis() const { return basis_; }
  LatticePoint to_ambient(const LatticePoint& coords) const;
  // Basis coordinates of an ambient point, if it lies in P^gp.
  std::optional<LatticePoint> from_ambient(const LatticePoint& ambient) const;

  // Sorted lexicographically in ambient coordinates; stored in basis coordinates.
  const std::vector<LatticePoint>& hilbert_basis() const { return hilbert_basis_; }
  std::vector<LatticePoint> hilbert_basis_ambient() const;

  // Primitive inward facet normals in basis coordinates.
  const std::vector<LatticePoint>& facet_normals() const { return facets_; }

  const DualElement& positive_functional() const { return phi_; }
  std::int64_t phi(const LatticePoint& v) const { return phi_(v); }
  WeightFieldElement phi(const std::vector<WeightFieldElement>& v) const { return phi_(v); }
  // Ambient covector representing phi.
  std::vector<Rational> phi_ambient() const;

  // Sum of the r largest phi-values on the Hilbert basis; every element of the
  // fundamental parallelotope of a simplicial subcone has phi below it.
  std::int64_t parallelotope_bound() const { return parallelotope_bound_; }
  std::int64_t max_phi_on_basis() const { return max_phi_; }

  bool member(const LatticePoint& coords) const;
  bool member_ambient(const LatticePoint& ambient) const;
  // Closed real cone membership, decided exactly.
  bool in_cone(const std::vector<WeightFieldElement>& coords) const;

  // All points of P with phi <= bound, ordered by (phi, lex).
  std::vector<LatticePoint> points_up_to(std::int64_t bound) const;

 private:
  int rank_ = 0;
  Mat<Rational> basis_;
  Mat<Rational> basis_inverse_;
  std::vector<LatticePoint> hilbert_basis_;
  std::vector<LatticePoint> facets_;
  DualElement phi_;
  std::int64_t parallelotope_bound_ = 0;
  std::int64_t max_phi_ = 0;
};

std::int64_t dot(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
LatticePoint operator-(const LatticePoint& a);

// Integer points with lower <= x <= upper coordinatewise, in lex order.
template <class F>
void for_each_box_point(const std::vector<std::int64_t>& lower, const std::vector<std::int64_t>& upper, F&& visit) {
  const std::size_t r = lower.size();
  for (std::size_t i = 0; i < r; ++i)
    if (lower[i] > upper[i]) return;
  LatticePoint x = lower;
  for (;;) {
    visit(static_cast<const LatticePoint&>(x));
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (x[i] < upper[i]) {
        ++x[i];
        break;
      }
      x[i] = lower[i];
      if (i == 0) return;
    }
    if (r == 0) return;
  }
}

}  // namespace logpar

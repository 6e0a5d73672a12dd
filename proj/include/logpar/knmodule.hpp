#pragma once

// Finitely presented equivariant graded modules over the chart ring B. The
// module L_w = t^{-w} B has degree-zero invariants spanned by the monomials
// S^mu with mu in the class of w, so a map L_v -> L_w is a section of the
// class of w - v, and every module question reduces to A-modules class by class.

#include "logpar/coefficients.hpp"
#include "logpar/ringb.hpp"
#include "logpar/weights.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace logpar {

// Global sections of a direct sum of line bundles: the blocks of class
// sections placed one after another.
struct SectionLayout {
  std::vector<std::shared_ptr<const ClassSections>> blocks;
  std::vector<Index> offset;
  Index total = 0;

  SectionLayout(const RingB& ring, const std::vector<Weight>& weights);
  // Joins of every block, as relation columns on the concatenated generators.
  AMatrix joins(int order) const;
};

// A B-linear map between sums of line bundles, direct sum of L_{source_j}
// into direct sum of L_{target_i}. Entry (i, j) is a section of the class of
// target_i - source_j, stored by its coefficients on the minimal monomials.
class FreeMap {
 public:
  FreeMap(RingPtr ring, std::vector<Weight> source, std::vector<Weight> target);

  const RingB& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Weight>& source() const { return source_; }
  const std::vector<Weight>& target() const { return target_; }
  std::size_t rows() const { return target_.size(); }
  std::size_t cols() const { return source_.size(); }

  const ClassSections& entry_sections(std::size_t i, std::size_t j) const { return *sections_[i * cols() + j]; }
  const std::vector<AElem>& entry(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }
  // Adds a * S^s to entry (i, j); s must lie in Lambda and in the class of target_i - source_j.
  void add_term(std::size_t i, std::size_t j, const AElem& a, const Weight& s);
  void set_entry(std::size_t i, std::size_t j, std::vector<AElem> coeffs);
  bool is_zero() const;

  // The induced map of A-modules on global sections after tensoring with L_t,
  // on the layouts of source + t and target + t.
  AMatrix gamma(const Weight& t) const;

  // Adds t to every weight; the entries are unchanged.
  FreeMap twisted(const Weight& t) const;
  // Columns j0 .. j0+count-1.
  FreeMap columns(std::size_t first, std::size_t count) const;

  std::string str() const;

 private:
  RingPtr ring_;
  std::vector<Weight> source_, target_;
  std::vector<std::shared_ptr<const ClassSections>> sections_;
  std::vector<std::vector<AElem>> entries_;
};

// after * before, multiplying sections as monomials.
FreeMap compose(const FreeMap& after, const FreeMap& before);
// [a | b] with a common target.
FreeMap hcat(const FreeMap& a, const FreeMap& b);
FreeMap block_diagonal(const FreeMap& a, const FreeMap& b);
FreeMap identity_map(const RingPtr& ring, const std::vector<Weight>& weights);
FreeMap zero_map(const RingPtr& ring, const std::vector<Weight>& source, const std::vector<Weight>& target);

// Cokernel of relations: direct sum of L_{generator_i} into direct sum of L_{gens}.
class EquivariantModule {
 public:
  EquivariantModule(RingPtr ring, std::vector<Weight> generators);  // free
  explicit EquivariantModule(FreeMap relations);

  const RingB& ring() const { return relations_.ring(); }
  const RingPtr& ring_ptr() const { return relations_.ring_ptr(); }
  const std::vector<Weight>& generators() const { return relations_.target(); }
  const std::vector<Weight>& relation_weights() const { return relations_.source(); }
  const FreeMap& relations() const { return relations_; }

  std::string str() const;

 private:
  FreeMap relations_;
};

const ClassSections& gamma_sections(const RingB& ring, const Weight& lambda);
// The narrower reading in which Hom(L_a, L_b) vanishes unless b - a lies in
// P^gp. It agrees with gamma_sections on the class of 0 and is zero elsewhere;
// kept for comparison only, nothing else calls it.
FGModule lattice_only_sections(const RingB& ring, const Weight& lambda);
// Hom(L_lambda, L_mu) as the sections of L_{mu - lambda}.
const ClassSections& hom_space(const RingB& ring, const Weight& lambda, const Weight& mu);

EquivariantModule twist(const EquivariantModule& f, const Weight& t);

// Degree-zero invariants of F tensor L_t, as an A-module on the sections of
// the generators' line bundles.
FGModule global_sections(const EquivariantModule& f, const Weight& t);
inline FGModule global_sections(const EquivariantModule& f) { return global_sections(f, Weight::zero(f.ring().rank())); }

// Does a map from a sum of line bundles into the free module on F's
// generators land in the relations of F?
bool vanishes_in(const EquivariantModule& f, const FreeMap& map);
// Is a map of generators F -> G well defined, i.e. does it send F's relations into G's?
bool is_module_map(const EquivariantModule& from, const EquivariantModule& to, const FreeMap& map);
// Do two such maps agree as maps F -> G?
bool module_maps_agree(const EquivariantModule& to, const FreeMap& a, const FreeMap& b);

struct KernelOptions {
  // Irrational Lambda: classes are scanned up to this many irrational generators.
  int level_window = 4;
};

// Generators of the kernel of the map, as a map from a sum of line bundles
// into the map's source. For rational Lambda the kernel is complete. For
// irrational Lambda every class up to the level window is scanned, and
// WindowExceeded is thrown when a generator shows up in the upper half of the
// window, since the kernel then need not be generated inside it.
FreeMap kernel_presentation(const FreeMap& map, const KernelOptions& options = {});

// Kernel of a map from a sum of line bundles into a presented module.
FreeMap kernel_into(const EquivariantModule& target, const FreeMap& map, const KernelOptions& options = {});

}  // namespace logpar

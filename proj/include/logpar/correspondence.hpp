#pragma once

// The two functors between parabolic sheaves on a chart and finitely
// presented equivariant modules over B, and the checks that they are
// mutually inverse.
//
//   phi(F)_r  = global sections of F tensor L_r, with jumps acting by S^delta
//   psi(E)    = generators L_{-r} for each generator of E_r, related by the
//               pieces' relations and by S^delta g = (transition) g

#include "logpar/knmodule.hpp"
#include "logpar/parabolic.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace logpar {

ParabolicSheaf phi(const EquivariantModule& f, const FineWeightSystem& system);
EquivariantModule psi(const ParabolicSheaf& e);

// Fine system of the classes of -w over the generator and relation weights w
// of F. The generator classes let psi place generators back onto F's; the
// relation classes are needed for the relations to come back unchanged.
FineWeightSystem covering_system(const EquivariantModule& f);

// Certificate of an isomorphism. For sheaves, one map per piece E_a ->
// phi(psi(E))_a. For modules, the counit psi(phi(F)) -> F and its inverse.
struct IsoWitness {
  bool valid = false;
  std::vector<AMatrix> piece_maps;
  std::optional<FreeMap> forward, backward;
  std::size_t squares_checked = 0;
};

// Both throw WitnessFailed naming the first piece or square that fails.
IsoWitness roundtrip_parabolic(const ParabolicSheaf& e);
IsoWitness roundtrip_module(const EquivariantModule& f);

// A sequence left -> middle -> right of equivariant modules.
struct ModuleTriple {
  EquivariantModule left, middle, right;
  FreeMap into, onto;
};
// left = image of the map (presented by its kernel), middle = free target, right = cokernel.
ModuleTriple image_triple(const FreeMap& map, const KernelOptions& options = {});

struct TripleExactness {
  bool module_maps = false;     // both maps well defined
  bool module_exact = false;    // exact as modules, checked through kernels
  std::vector<Weight> twists;
  std::vector<ExactnessReport> sections;
  bool sections_exact = false;  // every twist gives a short exact triple over A
};
// The twists default to every class that can carry sections.
TripleExactness check_exactness(const ModuleTriple& triple, std::optional<std::vector<Weight>> twists = std::nullopt,
                                const KernelOptions& options = {});

struct ProjectionFormulaReport {
  std::vector<Weight> twists;
  std::vector<Index> lhs_dims, rhs_dims;
  bool holds = false;
};
// Gamma(F) tensor G against Gamma(F tensor G), G a module over A.
EquivariantModule tensor_with(const EquivariantModule& f, const FGModule& g);
ProjectionFormulaReport check_projection_formula(const EquivariantModule& f, const FGModule& g,
                                                 std::optional<std::vector<Weight>> twists = std::nullopt);

// Modules over B_n = A tensor_{A[P]} A[(1/n)P], graded by (1/n)P^gp / P^gp,
// built from F by brute force on a box of monomials. Every monomial outside
// the box is zero in B_n because its chart value is a power of e of
// exponent at least the nilpotency order.
class GradedRootModule {
 public:
  explicit GradedRootModule(const EquivariantModule& f);

  int n() const { return n_; }
  const std::vector<Weight>& grading() const { return grading_; }
  const FGModule& component(std::size_t g) const { return components_[g]; }
  // Index of the basis vector S^q e_i in its component, if q is in the box.
  std::optional<Index> basis_index(std::size_t g, std::size_t generator, const Weight& q) const;
  // Multiplication by S^delta from component g to the component of g + delta.
  AMatrix multiply(std::size_t g, const Weight& delta) const;
  // The same map applied to the columns of vectors, without forming it.
  AMatrix multiply(std::size_t g, const Weight& delta, const AMatrix& vectors) const;
  std::size_t component_of(const Weight& w) const;
  std::int64_t box_bound() const { return box_bound_; }

 private:
  RingPtr ring_;
  int n_ = 1;
  std::int64_t box_bound_ = 0;
  std::vector<Weight> grading_;
  // Per component: for each generator of F, the box monomials of its class,
  // and their positions.
  std::vector<std::vector<std::vector<Weight>>> monomials_;
  std::vector<std::vector<std::map<Weight, Index, WeightKeyLess>>> positions_;
  std::vector<std::vector<Index>> offsets_;
  std::vector<FGModule> components_;
};

struct RootStackReport {
  int n = 1;
  std::int64_t box_bound = 0;
  std::vector<Weight> grading;
  std::vector<std::string> graded_components, phi_pieces;  // describe() of each side
  std::size_t squares_checked = 0;
  bool matched = false;
  std::string mismatch;
};
// Lambda must be (1/n)P; throws NotRational for irrational Lambda.
RootStackReport compare_root_stack(const EquivariantModule& f);

}  // namespace logpar

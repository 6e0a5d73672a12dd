#pragma once

#include "logpar/coefficients.hpp"
#include "logpar/ringb.hpp"
#include "logpar/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace logpar {

// A weight-labelled map E_from -> E_to for the jump delta = r_to + p - r_from.
struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  Weight jump;
  AMatrix matrix;
};

// Finitely presented parabolic sheaf on a chart: one piece per representative
// of the fine system, and one transition per minimal jump between each ordered
// pair of representatives. Every other jump acts through the minimal ones and
// the chart values f_p.
class ParabolicSheaf {
 public:
  // Jumps must be minimal in their class; absent jumps act as zero.
  ParabolicSheaf(RingPtr ring, FineWeightSystem system, std::vector<FGModule> pieces,
                 const std::vector<Transition>& transitions);
  static ParabolicSheaf zero(RingPtr ring, FineWeightSystem system);

  const RingB& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const FineWeightSystem& system() const { return system_; }
  std::size_t size() const { return pieces_.size(); }
  const std::vector<FGModule>& pieces() const { return pieces_; }
  const FGModule& piece(std::size_t a) const { return pieces_[a]; }
  const Weight& representative(std::size_t a) const { return system_.representatives()[a]; }

  // Minimal jumps from a to b and their matrices, aligned.
  const ClassSections& jumps(std::size_t a, std::size_t b) const { return *jump_sections_[a][b]; }
  const AMatrix& transition(std::size_t a, std::size_t b, std::size_t k) const { return table_[a][b][k]; }
  // The map for any jump delta in Lambda from a to b.
  AMatrix transition_for(std::size_t a, std::size_t b, const Weight& delta) const;
  std::vector<Transition> transitions() const;

  bool is_zero() const;

 private:
  RingPtr ring_;
  FineWeightSystem system_;
  std::vector<FGModule> pieces_;
  std::vector<std::vector<std::shared_ptr<const ClassSections>>> jump_sections_;
  std::vector<std::vector<std::vector<AMatrix>>> table_;
};

struct AxiomViolation {
  std::string condition;
  std::string where;
  AMatrix lhs, rhs;
};

struct AxiomReport {
  bool passed = true;
  std::int64_t window = 0;
  std::size_t squares_checked = 0;
  std::vector<AxiomViolation> violations;
};

// Every transition is a module map, the zero loop is the identity, minimal
// jumps compose functorially, and every factorisation of a jump with phi at
// most the window gives the same map. Loops by p in P then act as f_p.
AxiomReport check_axioms(const ParabolicSheaf& sheaf, std::optional<std::int64_t> window = std::nullopt);
std::int64_t default_axiom_window(const ToricMonoid& p);

// Colimit of the pieces over all r + p <= lambda, presented on the maximal
// such positions.
struct PieceAt {
  FGModule module;
  bool empty_diagram = false;
};
PieceAt piece_at(const ParabolicSheaf& sheaf, const Weight& lambda);

// Left adjoint of restriction along R inside R'.
ParabolicSheaf induce(const ParabolicSheaf& sheaf, const FineWeightSystem& larger);
ParabolicSheaf restrict(const ParabolicSheaf& sheaf, const FineWeightSystem& smaller);

// Exact equality of pieces and transition tables.
bool identical(const ParabolicSheaf& a, const ParabolicSheaf& b);

}  // namespace logpar

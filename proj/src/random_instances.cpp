#include "logpar/random_instances.hpp"

#include "logpar/correspondence.hpp"
#include "logpar/errors.hpp"

#include <algorithm>

namespace logpar {

std::size_t draw(Rng& rng, std::size_t bound) { return bound == 0 ? 0 : static_cast<std::size_t>(rng() % bound); }

std::vector<Weight> window_elements(const WeightMonoid& lambda, std::int64_t phi_bound) {
  return lambda.enumerate_window(WeightFieldElement(Rational(phi_bound))).collect(1);
}

namespace {

AElem random_coefficient(Rng& rng, int m) {
  AElem a(m, Rational(static_cast<long>(draw(rng, 5)) - 2));
  if (m > 1 && draw(rng, 2) == 0) a[1] = Rational(static_cast<long>(draw(rng, 3)) - 1);
  return a;
}

AElem random_unit(Rng& rng, int m) {
  static const long values[] = {1, -1, 2, -2, 3};
  AElem a(m, Rational(values[draw(rng, 5)]));
  if (m > 1 && draw(rng, 2) == 0) a[1] = Rational(1);
  return a;
}

}  // namespace

FreeMap random_map(Rng& rng, const RingPtr& ring, const std::vector<Weight>& target, std::size_t cols,
                   std::int64_t phi_bound) {
  const auto window = window_elements(ring->lambda(), phi_bound);
  const int m = ring->order();
  std::vector<Weight> source;
  std::vector<std::pair<std::size_t, Weight>> lead;
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t i = draw(rng, target.size());
    const Weight& s = window[draw(rng, window.size())];
    source.push_back(target[i] - s);
    lead.emplace_back(i, s);
  }
  FreeMap out(ring, source, target);
  for (std::size_t j = 0; j < cols; ++j) {
    out.add_term(lead[j].first, j, random_unit(rng, m), lead[j].second);
    for (std::size_t i = 0; i < target.size(); ++i) {
      const auto& sec = out.entry_sections(i, j);
      if (sec.size() == 0 || draw(rng, 3) != 0) continue;
      out.add_term(i, j, random_coefficient(rng, m), sec.monomials[draw(rng, sec.size())]);
    }
  }
  return out;
}

EquivariantModule random_presentation(Rng& rng, const RingPtr& ring, std::size_t max_generators,
                                      std::size_t max_relations, std::int64_t phi_bound) {
  const auto window = window_elements(ring->lambda(), phi_bound);
  std::vector<Weight> gens(1 + draw(rng, max_generators));
  for (auto& w : gens) w = window[draw(rng, window.size())].frac();
  const std::size_t rels = draw(rng, max_relations + 1);
  return EquivariantModule(random_map(rng, ring, gens, rels, phi_bound));
}

FineWeightSystem random_system(Rng& rng, const WeightMonoid& lambda, std::size_t max_size) {
  std::vector<Weight> classes = lambda.classes_at_level(0);
  if (!lambda.is_rational())
    for (auto& c : lambda.classes_at_level(1)) classes.push_back(std::move(c));
  const std::size_t size = std::min(classes.size(), 1 + draw(rng, max_size));
  std::vector<Weight> reps;
  while (reps.size() < size) {
    const Weight& c = classes[draw(rng, classes.size())];
    if (std::find(reps.begin(), reps.end(), c) == reps.end()) reps.push_back(c);
  }
  return FineWeightSystem(lambda, reps);
}

ParabolicSheaf conjugate_randomly(Rng& rng, const ParabolicSheaf& e) {
  const int m = e.ring().order();
  std::vector<AMatrix> change, inverse;
  for (const auto& piece : e.pieces()) {
    const Index g = piece.generators();
    AMatrix p = AMatrix::identity(m, g), q = AMatrix::identity(m, g);
    for (Index i = 0; i < g; ++i) {
      AMatrix d = AMatrix::identity(m, g), dinv = AMatrix::identity(m, g);
      d(i, i) = random_unit(rng, m);
      dinv(i, i) = d(i, i).inverse();
      p = d * p;
      q = q * dinv;
    }
    for (Index step = 0; g > 1 && step < 2 * g; ++step) {
      const auto i = static_cast<Index>(draw(rng, static_cast<std::size_t>(g)));
      auto j = static_cast<Index>(draw(rng, static_cast<std::size_t>(g - 1)));
      if (j >= i) ++j;
      AMatrix el = AMatrix::identity(m, g), elinv = AMatrix::identity(m, g);
      el(i, j) = random_coefficient(rng, m);
      elinv(i, j) = -el(i, j);
      p = el * p;
      q = q * elinv;
    }
    change.push_back(std::move(p));
    inverse.push_back(std::move(q));
  }
  std::vector<FGModule> pieces;
  for (std::size_t a = 0; a < e.size(); ++a) pieces.emplace_back(change[a] * e.piece(a).relations());
  std::vector<Transition> transitions = e.transitions();
  for (auto& t : transitions) t.matrix = change[t.to] * t.matrix * inverse[t.from];
  return ParabolicSheaf(e.ring_ptr(), e.system(), std::move(pieces), transitions);
}

Index minimal_generators(const FGModule& m) {
  const auto inv = m.invariants();
  return inv.size() < 2 ? 0 : inv[0] - inv[1];
}

ParabolicSheaf random_sheaf(Rng& rng, const RingPtr& ring, std::size_t max_rank, std::size_t max_system) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    const EquivariantModule f = random_presentation(rng, ring, 2, 2, 3);
    const FineWeightSystem system = random_system(rng, ring->lambda(), max_system);
    ParabolicSheaf e = phi(f, system);
    const bool small = std::all_of(e.pieces().begin(), e.pieces().end(), [&](const FGModule& piece) {
      return minimal_generators(piece) <= static_cast<Index>(max_rank);
    });
    if (small) return conjugate_randomly(rng, e);
  }
  throw std::runtime_error("no random sheaf with pieces of rank at most " + std::to_string(max_rank));
}

}  // namespace logpar

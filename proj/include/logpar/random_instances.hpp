#pragma once

// Seeded random instances for property runs. Every draw reduces raw engine
// output modulo its range, so a seed reproduces the same instance everywhere.

#include "logpar/knmodule.hpp"
#include "logpar/parabolic.hpp"

#include <random>

namespace logpar {

using Rng = std::mt19937_64;

std::size_t draw(Rng& rng, std::size_t bound);

// Elements of Lambda with phi at most the bound (one irrational generator at most).
std::vector<Weight> window_elements(const WeightMonoid& lambda, std::int64_t phi_bound);

// A map into the given targets whose columns each have a unit leading term
// S^s with s drawn from the window, plus sparse extra terms.
FreeMap random_map(Rng& rng, const RingPtr& ring, const std::vector<Weight>& target, std::size_t cols,
                   std::int64_t phi_bound);

// 1..max_generators generators at class representatives, 0..max_relations relations.
EquivariantModule random_presentation(Rng& rng, const RingPtr& ring, std::size_t max_generators,
                                      std::size_t max_relations, std::int64_t phi_bound);

// 1..max_size distinct classes of Lambda (irrational kinds: up to one irrational generator).
FineWeightSystem random_system(Rng& rng, const WeightMonoid& lambda, std::size_t max_size);

// The same sheaf after a random change of generators in every piece.
ParabolicSheaf conjugate_randomly(Rng& rng, const ParabolicSheaf& e);

// phi of a random presentation on a random system, conjugated; redrawn until
// every piece needs at most max_rank generators. Throws after 200 draws.
ParabolicSheaf random_sheaf(Rng& rng, const RingPtr& ring, std::size_t max_rank, std::size_t max_system = 3);

// Minimal number of generators of a module over Q[e]/(e^m): dim M / eM.
Index minimal_generators(const FGModule& m);

}  // namespace logpar

#include "logpar/correspondence.hpp"

#include "logpar/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace logpar {

namespace {

std::vector<Weight> shifted(const std::vector<Weight>& weights, const Weight& t) {
  std::vector<Weight> out;
  out.reserve(weights.size());
  for (const auto& w : weights) out.push_back(w + t);
  return out;
}

AElem unit(int m) { return AElem(m, Rational(1)); }

// Multiplication by S^delta on the sections of sum L_{w_i + from} into those of sum L_{w_i + from + delta}.
AMatrix shift_sections(const RingB& ring, const SectionLayout& from, const SectionLayout& to, const Weight& delta) {
  AMatrix out(ring.order(), to.total, from.total);
  for (std::size_t i = 0; i < from.blocks.size(); ++i)
    for (std::size_t k = 0; k < from.blocks[i]->size(); ++k) {
      const auto red = ring.reduce_in(*to.blocks[i], from.blocks[i]->monomials[k] + delta);
      out(to.offset[i] + static_cast<Index>(red.index), from.offset[i] + static_cast<Index>(k)) = red.factor;
    }
  return out;
}

// Classes t for which some generator weight w has w + t in a class of Lambda.
std::vector<Weight> section_twists(const RingB& ring, const std::vector<Weight>& weights) {
  const WeightMonoid& lambda = ring.lambda();
  std::vector<Weight> classes = lambda.classes_at_level(0);
  if (!lambda.is_rational())
    for (auto& c : lambda.classes_at_level(1)) classes.push_back(std::move(c));
  std::set<Weight, WeightKeyLess> seen;
  std::vector<Weight> out;
  for (const auto& c : classes)
    for (const auto& w : weights) {
      Weight t = (c - w).frac();
      if (seen.insert(t).second) out.push_back(std::move(t));
    }
  if (out.empty()) out.push_back(Weight::zero(ring.rank()));
  return out;
}

}  // namespace

ParabolicSheaf phi(const EquivariantModule& f, const FineWeightSystem& system) {
  const RingB& ring = f.ring();
  const std::size_t n = system.size();
  std::vector<SectionLayout> layouts;
  std::vector<FGModule> pieces;
  for (const auto& r : system.representatives()) {
    layouts.emplace_back(ring, shifted(f.generators(), r));
    pieces.push_back(global_sections(f, r));
  }
  std::vector<Transition> transitions;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto jumps = ring.sections(system.representatives()[b] - system.representatives()[a]);
      for (const auto& delta : jumps->monomials)
        transitions.push_back({a, b, delta, shift_sections(ring, layouts[a], layouts[b], delta)});
    }
  return ParabolicSheaf(f.ring_ptr(), system, std::move(pieces), transitions);
}

EquivariantModule psi(const ParabolicSheaf& e) {
  const RingB& ring = e.ring();
  const int m = ring.order();
  const Weight zero = Weight::zero(ring.rank());
  std::vector<Weight> gens;
  std::vector<Index> offset;
  for (std::size_t a = 0; a < e.size(); ++a) {
    offset.push_back(static_cast<Index>(gens.size()));
    for (Index g = 0; g < e.piece(a).generators(); ++g) gens.push_back(-e.representative(a));
  }

  // Relation columns are collected as (source weight, sparse terms) first.
  struct Term {
    Index row;
    AElem coeff;
    Weight monomial;
  };
  std::vector<Weight> sources;
  std::vector<std::vector<Term>> columns;
  for (std::size_t a = 0; a < e.size(); ++a) {
    const AMatrix& rel = e.piece(a).relations();
    for (Index j = 0; j < rel.cols(); ++j) {
      std::vector<Term> col;
      for (Index g = 0; g < rel.rows(); ++g)
        if (!rel(g, j).is_zero()) col.push_back({offset[a] + g, rel(g, j), zero});
      if (col.empty()) continue;
      sources.push_back(-e.representative(a));
      columns.push_back(std::move(col));
    }
  }
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b)
      for (std::size_t k = 0; k < e.jumps(a, b).size(); ++k) {
        const Weight& delta = e.jumps(a, b).monomials[k];
        const AMatrix& map = e.transition(a, b, k);
        // The zero loop is the identity; its rows are trivial.
        if (a == b && delta.is_zero()) continue;
        for (Index g = 0; g < e.piece(a).generators(); ++g) {
          std::vector<Term> col{{offset[a] + g, unit(m), delta}};
          for (Index h = 0; h < e.piece(b).generators(); ++h)
            if (!map(h, g).is_zero()) col.push_back({offset[b] + h, -map(h, g), zero});
          sources.push_back(-e.representative(a) - delta);
          columns.push_back(std::move(col));
        }
      }

  FreeMap relations(e.ring_ptr(), sources, gens);
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& t : columns[j]) relations.add_term(static_cast<std::size_t>(t.row), j, t.coeff, t.monomial);
  return EquivariantModule(std::move(relations));
}

FineWeightSystem covering_system(const EquivariantModule& f) {
  std::set<Weight, WeightKeyLess> seen;
  std::vector<Weight> reps;
  for (const auto* weights : {&f.generators(), &f.relation_weights()})
    for (const auto& w : *weights) {
      Weight r = (-w).frac();
      if (seen.insert(r).second) reps.push_back(std::move(r));
    }
  return FineWeightSystem(f.ring().lambda(), reps);
}

IsoWitness roundtrip_parabolic(const ParabolicSheaf& e) {
  const int m = e.ring().order();
  const EquivariantModule module = psi(e);
  const ParabolicSheaf back = phi(module, e.system());
  IsoWitness out;

  // E_a sits in phi(psi(E))_a as the sections S^0 of its own generators.
  Index first = 0;
  for (std::size_t a = 0; a < e.size(); ++a) {
    const SectionLayout layout(e.ring(), shifted(module.generators(), e.representative(a)));
    AMatrix unit_map(m, layout.total, e.piece(a).generators());
    for (Index g = 0; g < e.piece(a).generators(); ++g) {
      const auto block = static_cast<std::size_t>(first + g);
      if (layout.blocks[block]->size() == 0 || !layout.blocks[block]->monomials[0].is_zero())
        throw WitnessFailed("generator block of piece " + e.representative(a).str() + " has no unit section");
      unit_map(layout.offset[block], g) = unit(m);
    }
    first += e.piece(a).generators();
    if (!is_isomorphism(e.piece(a), back.piece(a), unit_map))
      throw WitnessFailed("unit is not invertible at the piece " + e.representative(a).str());
    out.piece_maps.push_back(std::move(unit_map));
  }
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b)
      for (std::size_t k = 0; k < e.jumps(a, b).size(); ++k) {
        ++out.squares_checked;
        const AMatrix lhs = out.piece_maps[b] * e.transition(a, b, k);
        const AMatrix rhs = back.transition(a, b, k) * out.piece_maps[a];
        if (!maps_agree(back.piece(b), lhs, rhs))
          throw WitnessFailed("unit is not natural for the jump " + e.jumps(a, b).monomials[k].str() + " from " +
                              e.representative(a).str() + " to " + e.representative(b).str());
      }
  out.valid = true;
  return out;
}

IsoWitness roundtrip_module(const EquivariantModule& f) {
  const RingPtr& ring = f.ring_ptr();
  const int m = ring->order();
  const Weight zero = Weight::zero(ring->rank());
  const FineWeightSystem system = covering_system(f);
  const ParabolicSheaf sheaf = phi(f, system);
  const EquivariantModule back = psi(sheaf);

  // psi(phi(F)) has one generator per section S^mu e_i of each piece; the
  // counit sends it to S^mu e_i.
  FreeMap counit(ring, back.generators(), f.generators());
  std::vector<Index> piece_offset;
  Index col = 0;
  for (std::size_t a = 0; a < system.size(); ++a) {
    piece_offset.push_back(col);
    const SectionLayout layout(*ring, shifted(f.generators(), system.representatives()[a]));
    for (std::size_t i = 0; i < layout.blocks.size(); ++i)
      for (const auto& mu : layout.blocks[i]->monomials) counit.add_term(i, static_cast<std::size_t>(col++), unit(m), mu);
  }
  // e_i goes to the generator S^0 e_i in the piece at the class of -w_i.
  FreeMap inverse(ring, f.generators(), back.generators());
  for (std::size_t i = 0; i < f.generators().size(); ++i) {
    const std::size_t a = *system.index_of(-f.generators()[i]);
    const SectionLayout layout(*ring, shifted(f.generators(), system.representatives()[a]));
    inverse.add_term(static_cast<std::size_t>(piece_offset[a] + layout.offset[i]), i, unit(m), zero);
  }

  if (!is_module_map(back, f, counit)) throw WitnessFailed("counit does not respect the relations");
  if (!is_module_map(f, back, inverse)) throw WitnessFailed("inverse of the counit does not respect the relations");
  if (!module_maps_agree(f, compose(counit, inverse), identity_map(ring, f.generators())))
    throw WitnessFailed("counit after its inverse is not the identity");
  if (!module_maps_agree(back, compose(inverse, counit), identity_map(ring, back.generators())))
    throw WitnessFailed("inverse after the counit is not the identity");
  IsoWitness out;
  out.forward = std::move(counit);
  out.backward = std::move(inverse);
  out.squares_checked = 4;
  out.valid = true;
  return out;
}

ModuleTriple image_triple(const FreeMap& map, const KernelOptions& options) {
  const RingPtr& ring = map.ring_ptr();
  return {EquivariantModule(kernel_presentation(map, options)), EquivariantModule(ring, map.target()),
          EquivariantModule(map), map, identity_map(ring, map.target())};
}

TripleExactness check_exactness(const ModuleTriple& t, std::optional<std::vector<Weight>> twists,
                                const KernelOptions& options) {
  TripleExactness out;
  out.module_maps = is_module_map(t.left, t.middle, t.into) && is_module_map(t.middle, t.right, t.onto);
  if (out.module_maps) {
    const bool composite = vanishes_in(t.right, compose(t.onto, t.into));
    // Kernel of left -> middle lies in left's relations; kernel of middle -> right in the image.
    const bool injective = vanishes_in(t.left, kernel_into(t.middle, t.into, options));
    const EquivariantModule image_relations(hcat(t.middle.relations(), t.into));
    const bool middle = vanishes_in(image_relations, kernel_into(t.right, t.onto, options));
    // Every generator of right is hit modulo right's relations.
    const EquivariantModule hit(hcat(t.right.relations(), t.onto));
    const bool surjective = vanishes_in(hit, identity_map(t.right.ring_ptr(), t.right.generators()));
    out.module_exact = composite && injective && middle && surjective;
  }
  std::vector<Weight> weights = t.left.generators();
  for (const auto* f : {&t.middle, &t.right})
    weights.insert(weights.end(), f->generators().begin(), f->generators().end());
  out.twists = twists ? *twists : section_twists(t.middle.ring(), weights);
  out.sections_exact = true;
  for (const auto& tw : out.twists) {
    auto rep = check_short_exact(global_sections(t.left, tw), global_sections(t.middle, tw),
                                 global_sections(t.right, tw), t.into.gamma(tw), t.onto.gamma(tw));
    out.sections_exact = out.sections_exact && rep.short_exact();
    out.sections.push_back(rep);
  }
  return out;
}

EquivariantModule tensor_with(const EquivariantModule& f, const FGModule& g) {
  const RingPtr& ring = f.ring_ptr();
  if (g.order() != ring->order()) throw InputError("module is over a different coefficient ring");
  const Weight zero = Weight::zero(ring->rank());
  const auto n = static_cast<std::size_t>(g.generators());
  const FreeMap& rel = f.relations();
  std::vector<Weight> gens, sources;
  for (const auto& w : f.generators())
    for (std::size_t j = 0; j < n; ++j) gens.push_back(w);
  for (const auto& v : rel.source())
    for (std::size_t j = 0; j < n; ++j) sources.push_back(v);
  for (const auto& w : f.generators())
    for (Index l = 0; l < g.relations().cols(); ++l) sources.push_back(w);
  FreeMap out(ring, sources, gens);
  for (std::size_t c = 0; c < rel.cols(); ++c)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < rel.rows(); ++i) out.set_entry(i * n + j, c * n + j, rel.entry(i, c));
  const std::size_t first = rel.cols() * n;
  const auto grel = static_cast<std::size_t>(g.relations().cols());
  for (std::size_t i = 0; i < f.generators().size(); ++i)
    for (std::size_t l = 0; l < grel; ++l)
      for (std::size_t j = 0; j < n; ++j) {
        const AElem& c = g.relations()(static_cast<Index>(j), static_cast<Index>(l));
        if (!c.is_zero()) out.add_term(i * n + j, first + i * grel + l, c, zero);
      }
  return EquivariantModule(std::move(out));
}

ProjectionFormulaReport check_projection_formula(const EquivariantModule& f, const FGModule& g,
                                                 std::optional<std::vector<Weight>> twists) {
  const RingB& ring = f.ring();
  const int m = ring.order();
  const EquivariantModule fg = tensor_with(f, g);
  const auto n = static_cast<std::size_t>(g.generators());
  ProjectionFormulaReport out;
  out.twists = twists ? *twists : section_twists(ring, f.generators());
  out.holds = true;
  for (const auto& t : out.twists) {
    const FGModule lhs = tensor(global_sections(f, t), g);
    const FGModule rhs = global_sections(fg, t);
    const SectionLayout from(ring, shifted(f.generators(), t));
    const SectionLayout to(ring, shifted(fg.generators(), t));
    // (section k of block i) tensor e_j goes to section k of block (i, j).
    AMatrix map(m, to.total, from.total * static_cast<Index>(n));
    for (std::size_t i = 0; i < from.blocks.size(); ++i)
      for (std::size_t k = 0; k < from.blocks[i]->size(); ++k)
        for (std::size_t j = 0; j < n; ++j) {
          const Index s = from.offset[i] + static_cast<Index>(k);
          map(to.offset[i * n + j] + static_cast<Index>(k), s * static_cast<Index>(n) + static_cast<Index>(j)) = unit(m);
        }
    out.lhs_dims.push_back(lhs.dimension());
    out.rhs_dims.push_back(rhs.dimension());
    out.holds = out.holds && is_isomorphism(lhs, rhs, map);
  }
  return out;
}

GradedRootModule::GradedRootModule(const EquivariantModule& f) : ring_(f.ring_ptr()) {
  const WeightMonoid& lambda = ring_->lambda();
  if (!lambda.is_rational()) throw NotRational("root stacks need rational weights, got " + lambda.describe());
  if (lambda.kind() != WeightMonoid::Kind::Fraction)
    throw InputError("root stack comparison needs Lambda = (1/n)P, got " + lambda.describe());
  n_ = lambda.fraction_order();
  const ToricMonoid& p = ring_->base();
  const int m = ring_->order();
  const auto& hb = p.hilbert_basis();

  // q = z + sum floor(t_h) h with z in the half-open zonotope of the Hilbert
  // basis; once phi(q) reaches the bound, the lattice part has chart value e^k, k >= m.
  std::int64_t zonotope = 0;
  for (const auto& h : hb) zonotope += p.phi(h);
  box_bound_ = zonotope + static_cast<std::int64_t>(m) * p.max_phi_on_basis();

  std::vector<Weight> box;
  for (const auto& x : p.points_up_to(static_cast<std::int64_t>(n_) * box_bound_ - 1)) {
    Weight q;
    for (auto c : x) q.coords.emplace_back(Rational(c, n_));
    box.push_back(std::move(q));
  }
  std::map<Weight, std::size_t, WeightKeyLess> class_index;
  for (const auto& c : lambda.classes_at_level(0)) {
    class_index.emplace(c, grading_.size());
    grading_.push_back(c);
  }
  std::vector<std::vector<Weight>> by_class(grading_.size());
  for (const auto& q : box) by_class[class_index.at(q.frac())].push_back(q);

  const auto& gens = f.generators();
  const FreeMap& rel = f.relations();
  for (std::size_t g = 0; g < grading_.size(); ++g) {
    const Weight& b = grading_[g];
    std::vector<std::vector<Weight>> mons;
    std::vector<Index> offs;
    Index total = 0;
    for (const auto& w : gens) {
      offs.push_back(total);
      mons.push_back(by_class[class_index.at((w + b).frac())]);
      total += static_cast<Index>(mons.back().size());
    }
    std::vector<std::map<Weight, Index, WeightKeyLess>> pos(mons.size());
    for (std::size_t i = 0; i < mons.size(); ++i)
      for (std::size_t k = 0; k < mons[i].size(); ++k) pos[i].emplace(mons[i][k], static_cast<Index>(k));
    monomials_.push_back(std::move(mons));
    positions_.push_back(std::move(pos));
    offsets_.push_back(std::move(offs));

    ColumnBuilder cols(m, total);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const auto& list = monomials_[g][i];
      for (std::size_t k = 0; k < list.size(); ++k)
        for (const auto& h : hb) {
          cols.begin_column();
          const AElem fh = ring_->f(h);
          cols.add(offsets_[g][i] + static_cast<Index>(k), -fh);
          if (auto up = basis_index(g, i, list[k] + h)) cols.add(*up, AElem(m, Rational(1)));
          cols.drop_if_zero();
        }
    }
    for (std::size_t c = 0; c < rel.cols(); ++c)
      for (const auto& nu : by_class[class_index.at((rel.source()[c] + b).frac())]) {
        cols.begin_column();
        for (std::size_t i = 0; i < rel.rows(); ++i) {
          const auto& sec = rel.entry_sections(i, c);
          const auto& coeffs = rel.entry(i, c);
          for (std::size_t k = 0; k < sec.size(); ++k)
            if (auto at = basis_index(g, i, nu + sec.monomials[k])) cols.add(*at, coeffs[k]);
        }
        cols.drop_if_zero();
      }
    components_.emplace_back(cols.build());
  }
}

std::optional<Index> GradedRootModule::basis_index(std::size_t g, std::size_t generator, const Weight& q) const {
  const auto& pos = positions_[g][generator];
  const auto it = pos.find(q);
  if (it == pos.end()) return std::nullopt;
  return offsets_[g][generator] + it->second;
}

std::size_t GradedRootModule::component_of(const Weight& w) const {
  const Weight c = w.frac();
  const auto it = std::find(grading_.begin(), grading_.end(), c);
  if (it == grading_.end()) throw InputError("weight " + w.str() + " is outside the grading group");
  return static_cast<std::size_t>(it - grading_.begin());
}

AMatrix GradedRootModule::multiply(std::size_t g, const Weight& delta) const {
  const std::size_t h = component_of(grading_[g] + delta);
  const int m = ring_->order();
  AMatrix out(m, components_[h].generators(), components_[g].generators());
  for (std::size_t i = 0; i < monomials_[g].size(); ++i)
    for (std::size_t k = 0; k < monomials_[g][i].size(); ++k)
      if (auto at = basis_index(h, i, monomials_[g][i][k] + delta))
        out(*at, offsets_[g][i] + static_cast<Index>(k)) = AElem(m, Rational(1));
  return out;
}

AMatrix GradedRootModule::multiply(std::size_t g, const Weight& delta, const AMatrix& vectors) const {
  const std::size_t h = component_of(grading_[g] + delta);
  AMatrix out(ring_->order(), components_[h].generators(), vectors.cols());
  for (std::size_t i = 0; i < monomials_[g].size(); ++i)
    for (std::size_t k = 0; k < monomials_[g][i].size(); ++k) {
      const Index from = offsets_[g][i] + static_cast<Index>(k);
      const auto at = basis_index(h, i, monomials_[g][i][k] + delta);
      if (!at) continue;
      for (Index c = 0; c < vectors.cols(); ++c)
        if (!vectors(from, c).is_zero()) out(*at, c) += vectors(from, c);
    }
  return out;
}

RootStackReport compare_root_stack(const EquivariantModule& f) {
  const GradedRootModule graded(f);
  const RingB& ring = f.ring();
  const int m = ring.order();
  RootStackReport out;
  out.n = graded.n();
  out.box_bound = graded.box_bound();
  out.grading = graded.grading();
  const ParabolicSheaf sheaf = phi(f, FineWeightSystem(ring.lambda(), graded.grading()));

  // Section S^mu e_i of a piece goes to the basis vector S^mu e_i, or to zero outside the box.
  std::vector<AMatrix> iso;
  for (std::size_t g = 0; g < graded.grading().size(); ++g) {
    out.graded_components.push_back(graded.component(g).describe());
    out.phi_pieces.push_back(sheaf.piece(g).describe());
    const SectionLayout layout(ring, shifted(f.generators(), graded.grading()[g]));
    AMatrix map(m, graded.component(g).generators(), layout.total);
    for (std::size_t i = 0; i < layout.blocks.size(); ++i)
      for (std::size_t k = 0; k < layout.blocks[i]->size(); ++k)
        if (auto at = graded.basis_index(g, i, layout.blocks[i]->monomials[k]))
          map(*at, layout.offset[i] + static_cast<Index>(k)) = AElem(m, Rational(1));
    if (!is_isomorphism(sheaf.piece(g), graded.component(g), map)) {
      out.mismatch = "component " + graded.grading()[g].str() + ": " + out.graded_components.back() + " against " +
                     out.phi_pieces.back();
      return out;
    }
    iso.push_back(std::move(map));
  }
  for (std::size_t a = 0; a < sheaf.size(); ++a)
    for (std::size_t b = 0; b < sheaf.size(); ++b)
      for (std::size_t k = 0; k < sheaf.jumps(a, b).size(); ++k) {
        ++out.squares_checked;
        const Weight& delta = sheaf.jumps(a, b).monomials[k];
        if (!maps_agree(graded.component(b), iso[b] * sheaf.transition(a, b, k), graded.multiply(a, delta, iso[a]))) {
          out.mismatch = "multiplication by S^" + delta.str() + " from " + graded.grading()[a].str();
          return out;
        }
      }
  out.matched = true;
  return out;
}

}  // namespace logpar

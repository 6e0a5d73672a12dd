#include "logpar/parabolic.hpp"

#include "logpar/errors.hpp"

#include <algorithm>

namespace logpar {

ParabolicSheaf::ParabolicSheaf(RingPtr ring, FineWeightSystem system, std::vector<FGModule> pieces,
                               const std::vector<Transition>& transitions)
    : ring_(std::move(ring)), system_(std::move(system)), pieces_(std::move(pieces)) {
  const std::size_t n = system_.size();
  if (pieces_.size() != n) throw InputError("expected one piece per representative");
  const int m = ring_->order();
  for (const auto& e : pieces_)
    if (e.order() != m) throw InputError("piece is not a module over the coefficient ring");
  jump_sections_.assign(n, {});
  table_.assign(n, {});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto sec = ring_->sections(representative(b) - representative(a));
      table_[a].emplace_back(sec->size(), AMatrix(m, pieces_[b].generators(), pieces_[a].generators()));
      jump_sections_[a].push_back(std::move(sec));
    }
  for (const auto& t : transitions) {
    if (t.from >= n || t.to >= n) throw InputError("transition refers to a missing representative");
    const auto& mons = jumps(t.from, t.to).monomials;
    const auto it = std::find(mons.begin(), mons.end(), t.jump);
    if (it == mons.end()) {
      if (t.jump.rank() != ring_->rank()) throw RankMismatch("jump has the wrong dimension");
      if (CharacterClass(t.jump) != jumps(t.from, t.to).cls)
        throw InputError("jump " + t.jump.str() + " does not connect the orbits of its endpoints");
      throw InputError("jump " + t.jump.str() + " is not a minimal jump between its endpoints");
    }
    if (t.matrix.rows() != pieces_[t.to].generators() || t.matrix.cols() != pieces_[t.from].generators() ||
        t.matrix.order() != m)
      throw InputError("transition matrix has the wrong shape");
    table_[t.from][t.to][static_cast<std::size_t>(it - mons.begin())] = t.matrix;
  }
}

ParabolicSheaf ParabolicSheaf::zero(RingPtr ring, FineWeightSystem system) {
  const int m = ring->order();
  std::vector<FGModule> pieces(system.size(), FGModule::free(m, 0));
  return ParabolicSheaf(std::move(ring), std::move(system), std::move(pieces), {});
}

AMatrix ParabolicSheaf::transition_for(std::size_t a, std::size_t b, const Weight& delta) const {
  const auto red = ring_->reduce_in(jumps(a, b), delta);
  return red.factor * table_[a][b][red.index];
}

std::vector<Transition> ParabolicSheaf::transitions() const {
  std::vector<Transition> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      for (std::size_t k = 0; k < table_[a][b].size(); ++k)
        out.push_back({a, b, jumps(a, b).monomials[k], table_[a][b][k]});
  return out;
}

bool ParabolicSheaf::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const FGModule& e) { return e.is_zero(); });
}

std::int64_t default_axiom_window(const ToricMonoid& p) { return 2 * p.max_phi_on_basis(); }

AxiomReport check_axioms(const ParabolicSheaf& e, std::optional<std::int64_t> window) {
  AxiomReport rep;
  rep.window = window ? *window : default_axiom_window(e.ring().base());
  const std::size_t n = e.size();
  const int m = e.ring().order();
  auto record = [&](std::string condition, std::string where, AMatrix lhs, AMatrix rhs) {
    rep.passed = false;
    rep.violations.push_back({std::move(condition), std::move(where), std::move(lhs), std::move(rhs)});
  };
  auto label = [&](std::size_t a) { return e.representative(a).str(); };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < e.jumps(a, b).size(); ++k) {
        ++rep.squares_checked;
        if (!is_homomorphism(e.piece(a), e.piece(b), e.transition(a, b, k)))
          record("well-defined", label(a) + " -> " + label(b) + " by " + e.jumps(a, b).monomials[k].str(),
                 e.transition(a, b, k), AMatrix(m, 0, 0));
      }

  for (std::size_t a = 0; a < n; ++a) {
    ++rep.squares_checked;
    const AMatrix id = AMatrix::identity(m, e.piece(a).generators());
    if (!maps_agree(e.piece(a), e.transition(a, a, 0), id))
      record("zero loop is the identity", label(a), e.transition(a, a, 0), id);
  }

  // Distinct minimal jumps below a common jump must give the same map there.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& joins = e.jumps(a, b).module.relations();
      for (Index j = 0; j < joins.cols(); ++j) {
        ++rep.squares_checked;
        AMatrix sum(m, e.piece(b).generators(), e.piece(a).generators());
        for (std::size_t k = 0; k < e.jumps(a, b).size(); ++k)
          sum = sum + joins(static_cast<Index>(k), j) * e.transition(a, b, k);
        if (!is_zero_map(e.piece(b), sum))
          record("loops by p act as f_p", label(a) + " -> " + label(b) + " at a join of minimal jumps", sum,
                 AMatrix(m, sum.rows(), sum.cols()));
      }
    }

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t k1 = 0; k1 < e.jumps(a, b).size(); ++k1)
          for (std::size_t k2 = 0; k2 < e.jumps(b, c).size(); ++k2) {
            ++rep.squares_checked;
            const Weight total = e.jumps(a, b).monomials[k1] + e.jumps(b, c).monomials[k2];
            const AMatrix lhs = e.transition(b, c, k2) * e.transition(a, b, k1);
            const AMatrix rhs = e.transition_for(a, c, total);
            if (!maps_agree(e.piece(c), lhs, rhs))
              record("functoriality", label(a) + " -> " + label(b) + " -> " + label(c) + " by " +
                                          e.jumps(a, b).monomials[k1].str() + " then " +
                                          e.jumps(b, c).monomials[k2].str(),
                     lhs, rhs);
          }

  // Every factorisation of every jump inside the window.
  const WeightMonoid& lambda = e.ring().lambda();
  const ToricMonoid& p = e.ring().base();
  auto jumps_up_to = [&](std::size_t from, std::size_t to, const WeightFieldElement& bound) {
    std::vector<Weight> out;
    const auto& sec = e.jumps(from, to);
    if (sec.monomials.empty()) return out;
    const Weight& rep0 = sec.cls.representative();
    const WeightFieldElement room = bound - p.phi(rep0.coords);
    if (room.sign() < 0) return out;
    for (const auto& x : lambda.polyhedron_points(lambda.cone_bounds(rep0), to_int64(room.floor())))
      out.push_back(rep0 + x);
    return out;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      for (const Weight& delta : jumps_up_to(a, c, WeightFieldElement(Rational(rep.window)))) {
        const AMatrix direct = e.transition_for(a, c, delta);
        const WeightFieldElement reach = p.phi(delta.coords);
        for (std::size_t b = 0; b < n; ++b)
          for (const Weight& first : jumps_up_to(a, b, reach)) {
            const Weight second = delta - first;
            if (!lambda.in_lambda(second)) continue;
            ++rep.squares_checked;
            const AMatrix lhs = e.transition_for(b, c, second) * e.transition_for(a, b, first);
            if (!maps_agree(e.piece(c), lhs, direct))
              record("functoriality", label(a) + " -> " + label(b) + " -> " + label(c) + " by " + first.str() +
                                          " then " + second.str(),
                     lhs, direct);
          }
      }
  return rep;
}

namespace {

// Presentation of the colimit at lambda: generators (a, k, g) for each
// representative a, each minimal jump k from r_a to lambda, each generator g of E_a.
struct ColimitLayout {
  std::vector<std::shared_ptr<const ClassSections>> sections;
  std::vector<Index> offset;
  Index total = 0;

  Index at(const ParabolicSheaf& e, std::size_t a, std::size_t k) const {
    return offset[a] + static_cast<Index>(k) * e.piece(a).generators();
  }
};

ColimitLayout colimit_layout(const ParabolicSheaf& e, const Weight& lambda) {
  ColimitLayout out;
  for (std::size_t a = 0; a < e.size(); ++a) {
    out.sections.push_back(e.ring().sections(lambda - e.representative(a)));
    out.offset.push_back(out.total);
    out.total += static_cast<Index>(out.sections.back()->size()) * e.piece(a).generators();
  }
  return out;
}

FGModule colimit_module(const ParabolicSheaf& e, const ColimitLayout& lay) {
  const int m = e.ring().order();
  ColumnBuilder cols(m, lay.total);
  for (std::size_t a = 0; a < e.size(); ++a) {
    const FGModule& piece = e.piece(a);
    const Index gens = piece.generators();
    const ClassSections& sec = *lay.sections[a];
    for (std::size_t k = 0; k < sec.size(); ++k)
      for (Index j = 0; j < piece.relations().cols(); ++j) {
        cols.begin_column();
        for (Index g = 0; g < gens; ++g) cols.add(lay.at(e, a, k) + g, piece.relations()(g, j));
        cols.drop_if_zero();
      }
    const AMatrix& joins = sec.module.relations();
    for (Index j = 0; j < joins.cols(); ++j)
      for (Index g = 0; g < gens; ++g) {
        cols.begin_column();
        for (std::size_t k = 0; k < sec.size(); ++k) cols.add(lay.at(e, a, k) + g, joins(static_cast<Index>(k), j));
        cols.drop_if_zero();
      }
  }
  // The position reached from (b, l) by a minimal jump from a to b.
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; b < e.size(); ++b)
      for (std::size_t t = 0; t < e.jumps(a, b).size(); ++t) {
        const Weight& jump = e.jumps(a, b).monomials[t];
        const AMatrix& map = e.transition(a, b, t);
        const ClassSections& sec_b = *lay.sections[b];
        for (std::size_t l = 0; l < sec_b.size(); ++l) {
          const auto red = e.ring().reduce_in(*lay.sections[a], jump + sec_b.monomials[l]);
          for (Index g = 0; g < e.piece(a).generators(); ++g) {
            cols.begin_column();
            cols.add(lay.at(e, a, red.index) + g, red.factor);
            for (Index h = 0; h < e.piece(b).generators(); ++h) cols.add(lay.at(e, b, l) + h, -map(h, g));
            cols.drop_if_zero();
          }
        }
      }
  return FGModule(cols.build());
}

// Multiplication by S^jump from the colimit at one position to the colimit at another.
AMatrix colimit_shift(const ParabolicSheaf& e, const ColimitLayout& from, const ColimitLayout& to, const Weight& jump) {
  const int m = e.ring().order();
  AMatrix out(m, to.total, from.total);
  for (std::size_t c = 0; c < e.size(); ++c)
    for (std::size_t k = 0; k < from.sections[c]->size(); ++k) {
      const auto red = e.ring().reduce_in(*to.sections[c], from.sections[c]->monomials[k] + jump);
      for (Index g = 0; g < e.piece(c).generators(); ++g) out(to.at(e, c, red.index) + g, from.at(e, c, k) + g) = red.factor;
    }
  return out;
}

}  // namespace

PieceAt piece_at(const ParabolicSheaf& e, const Weight& lambda) {
  if (e.ring().lambda().class_in_group(CharacterClass(lambda)) == MembershipVerdict::NotMember)
    throw InputError("weight " + lambda.str() + " is not in the group of Lambda");
  const auto lay = colimit_layout(e, lambda);
  const bool empty = std::all_of(lay.sections.begin(), lay.sections.end(),
                                 [](const auto& s) { return s->monomials.empty(); });
  return {colimit_module(e, lay), empty};
}

ParabolicSheaf induce(const ParabolicSheaf& e, const FineWeightSystem& larger) {
  const int m = e.ring().order();
  const std::size_t n = larger.size();
  std::vector<std::optional<std::size_t>> old(n);
  for (std::size_t a = 0; a < e.size(); ++a) {
    const auto i = larger.index_of(e.representative(a));
    if (!i) throw InputError("representative " + e.representative(a).str() + " is missing from the larger system");
    old[*i] = a;
  }
  std::vector<ColimitLayout> layouts;
  std::vector<FGModule> pieces;
  for (std::size_t i = 0; i < n; ++i) {
    layouts.push_back(colimit_layout(e, larger.representatives()[i]));
    pieces.push_back(old[i] ? e.piece(*old[i]) : colimit_module(e, layouts.back()));
  }
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Weight& ri = larger.representatives()[i];
      const Weight& rj = larger.representatives()[j];
      const auto sec = e.ring().sections(rj - ri);
      for (const Weight& jump : sec->monomials) {
        AMatrix map = colimit_shift(e, layouts[i], layouts[j], jump);
        if (old[i]) {
          // E_a sits in the colimit at r_a as the block of the zero jump.
          const std::size_t a = *old[i];
          AMatrix into(m, layouts[i].total, e.piece(a).generators());
          for (Index g = 0; g < e.piece(a).generators(); ++g) into(layouts[i].at(e, a, 0) + g, g) = AElem(m, Rational(1));
          map = map * into;
        }
        if (old[j]) {
          const std::size_t b = *old[j];
          AMatrix back(m, e.piece(b).generators(), layouts[j].total);
          for (std::size_t c = 0; c < e.size(); ++c)
            for (std::size_t k = 0; k < layouts[j].sections[c]->size(); ++k) {
              const AMatrix t = e.transition_for(c, b, layouts[j].sections[c]->monomials[k]);
              for (Index h = 0; h < t.rows(); ++h)
                for (Index g = 0; g < t.cols(); ++g) back(h, layouts[j].at(e, c, k) + g) = t(h, g);
            }
          map = back * map;
        }
        transitions.push_back({i, j, jump, std::move(map)});
      }
    }
  return ParabolicSheaf(e.ring_ptr(), larger, std::move(pieces), transitions);
}

ParabolicSheaf restrict(const ParabolicSheaf& e, const FineWeightSystem& smaller) {
  std::vector<std::size_t> index;
  for (const auto& r : smaller.representatives()) {
    const auto i = e.system().index_of(r);
    if (!i) throw InputError("representative " + r.str() + " is not part of the sheaf's system");
    index.push_back(*i);
  }
  std::vector<FGModule> pieces;
  for (auto i : index) pieces.push_back(e.piece(i));
  std::vector<Transition> transitions;
  for (std::size_t a = 0; a < index.size(); ++a)
    for (std::size_t b = 0; b < index.size(); ++b)
      for (std::size_t k = 0; k < e.jumps(index[a], index[b]).size(); ++k)
        transitions.push_back({a, b, e.jumps(index[a], index[b]).monomials[k], e.transition(index[a], index[b], k)});
  return ParabolicSheaf(e.ring_ptr(), smaller, std::move(pieces), transitions);
}

bool identical(const ParabolicSheaf& a, const ParabolicSheaf& b) {
  if (a.system().representatives() != b.system().representatives()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a.piece(i).relations() == b.piece(i).relations())) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      for (std::size_t k = 0; k < a.jumps(i, j).size(); ++k)
        if (!(a.transition(i, j, k) == b.transition(i, j, k))) return false;
  return true;
}

}  // namespace logpar

#include "logpar/knmodule.hpp"

#include "logpar/errors.hpp"
#include "logpar/linalg.hpp"

#include <algorithm>
#include <set>

namespace logpar {

SectionLayout::SectionLayout(const RingB& ring, const std::vector<Weight>& weights) {
  for (const auto& w : weights) {
    blocks.push_back(ring.sections(w));
    offset.push_back(total);
    total += static_cast<Index>(blocks.back()->size());
  }
}

AMatrix SectionLayout::joins(int order) const {
  Index cols = 0;
  for (const auto& b : blocks) cols += b->module.relations().cols();
  AMatrix out(order, total, cols);
  Index c = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const AMatrix& rel = blocks[k]->module.relations();
    for (Index j = 0; j < rel.cols(); ++j, ++c)
      for (Index i = 0; i < rel.rows(); ++i) out(offset[k] + i, c) = rel(i, j);
  }
  return out;
}

FreeMap::FreeMap(RingPtr ring, std::vector<Weight> source, std::vector<Weight> target)
    : ring_(std::move(ring)), source_(std::move(source)), target_(std::move(target)) {
  const int m = ring_->order();
  for (const auto& t : target_) {
    if (t.rank() != ring_->rank()) throw RankMismatch("weight " + t.str() + " has the wrong dimension");
    for (const auto& s : source_) {
      auto sec = ring_->sections(t - s);
      entries_.emplace_back(sec->size(), AElem(m));
      sections_.push_back(std::move(sec));
    }
  }
  for (const auto& s : source_)
    if (s.rank() != ring_->rank()) throw RankMismatch("weight " + s.str() + " has the wrong dimension");
}

void FreeMap::add_term(std::size_t i, std::size_t j, const AElem& a, const Weight& s) {
  const ClassSections& sec = entry_sections(i, j);
  if (CharacterClass(s) != sec.cls)
    throw InputError("monomial " + s.str() + " does not have the class of " + (target_[i] - source_[j]).str());
  if (!ring_->lambda().in_lambda(s)) throw InputError("monomial " + s.str() + " is not in Lambda");
  const auto red = ring_->reduce_in(sec, s);
  entries_[i * cols() + j][red.index] += a * red.factor;
}

void FreeMap::set_entry(std::size_t i, std::size_t j, std::vector<AElem> coeffs) {
  if (coeffs.size() != entry_sections(i, j).size()) throw std::logic_error("section has the wrong length");
  entries_[i * cols() + j] = std::move(coeffs);
}

bool FreeMap::is_zero() const {
  for (const auto& e : entries_)
    for (const auto& a : e)
      if (!a.is_zero()) return false;
  return true;
}

AMatrix FreeMap::gamma(const Weight& t) const {
  std::vector<Weight> src, tgt;
  for (const auto& w : source_) src.push_back(w + t);
  for (const auto& w : target_) tgt.push_back(w + t);
  const SectionLayout from(*ring_, src), to(*ring_, tgt);
  AMatrix out(ring_->order(), to.total, from.total);
  for (std::size_t j = 0; j < cols(); ++j)
    for (std::size_t q = 0; q < from.blocks[j]->size(); ++q) {
      const Weight& mu = from.blocks[j]->monomials[q];
      for (std::size_t i = 0; i < rows(); ++i) {
        const auto& coeffs = entry(i, j);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          if (coeffs[k].is_zero()) continue;
          const auto red = ring_->reduce_in(*to.blocks[i], entry_sections(i, j).monomials[k] + mu);
          if (red.factor.is_zero()) continue;
          out(to.offset[i] + static_cast<Index>(red.index), from.offset[j] + static_cast<Index>(q)) +=
              coeffs[k] * red.factor;
        }
      }
    }
  return out;
}

FreeMap FreeMap::twisted(const Weight& t) const {
  FreeMap out = *this;
  for (auto& w : out.source_) w = w + t;
  for (auto& w : out.target_) w = w + t;
  return out;
}

FreeMap FreeMap::columns(std::size_t first, std::size_t count) const {
  FreeMap out(ring_, std::vector<Weight>(source_.begin() + static_cast<long>(first),
                                         source_.begin() + static_cast<long>(first + count)),
              target_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) out.entries_[i * count + j] = entry(i, first + j);
  return out;
}

std::string FreeMap::str() const {
  std::string out;
  for (std::size_t i = 0; i < rows(); ++i) {
    out += "[";
    for (std::size_t j = 0; j < cols(); ++j) {
      std::string cell;
      const auto& coeffs = entry(i, j);
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].is_zero()) continue;
        if (!cell.empty()) cell += " + ";
        cell += "(" + coeffs[k].str() + ")S^" + entry_sections(i, j).monomials[k].str();
      }
      out += (j ? ", " : "") + (cell.empty() ? std::string("0") : cell);
    }
    out += "]\n";
  }
  return out;
}

FreeMap compose(const FreeMap& after, const FreeMap& before) {
  if (after.cols() != before.rows()) throw std::logic_error("composing maps of mismatched shape");
  const RingB& ring = after.ring();
  FreeMap out(after.ring_ptr(), before.source(), after.target());
  const int m = ring.order();
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) {
      std::vector<AElem> acc(out.entry_sections(i, j).size(), AElem(m));
      for (std::size_t k = 0; k < after.cols(); ++k) {
        const auto& x = after.entry(i, k);
        const auto& y = before.entry(k, j);
        for (std::size_t a = 0; a < x.size(); ++a) {
          if (x[a].is_zero()) continue;
          for (std::size_t b = 0; b < y.size(); ++b) {
            if (y[b].is_zero()) continue;
            const auto red = ring.reduce_in(out.entry_sections(i, j), after.entry_sections(i, k).monomials[a] +
                                                                          before.entry_sections(k, j).monomials[b]);
            acc[red.index] += x[a] * y[b] * red.factor;
          }
        }
      }
      out.set_entry(i, j, std::move(acc));
    }
  return out;
}

FreeMap hcat(const FreeMap& a, const FreeMap& b) {
  if (a.target() != b.target()) throw std::logic_error("concatenating maps with different targets");
  std::vector<Weight> src = a.source();
  src.insert(src.end(), b.source().begin(), b.source().end());
  FreeMap out(a.ring_ptr(), src, a.target());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out.set_entry(i, j, a.entry(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) out.set_entry(i, a.cols() + j, b.entry(i, j));
  }
  return out;
}

FreeMap block_diagonal(const FreeMap& a, const FreeMap& b) {
  std::vector<Weight> src = a.source(), tgt = a.target();
  src.insert(src.end(), b.source().begin(), b.source().end());
  tgt.insert(tgt.end(), b.target().begin(), b.target().end());
  FreeMap out(a.ring_ptr(), src, tgt);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.set_entry(i, j, a.entry(i, j));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out.set_entry(a.rows() + i, a.cols() + j, b.entry(i, j));
  return out;
}

FreeMap identity_map(const RingPtr& ring, const std::vector<Weight>& weights) {
  FreeMap out(ring, weights, weights);
  const AElem one(ring->order(), Rational(1));
  for (std::size_t i = 0; i < weights.size(); ++i) out.add_term(i, i, one, Weight::zero(ring->rank()));
  return out;
}

FreeMap zero_map(const RingPtr& ring, const std::vector<Weight>& source, const std::vector<Weight>& target) {
  return FreeMap(ring, source, target);
}

namespace {

FreeMap difference(const FreeMap& a, const FreeMap& b) {
  FreeMap out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      auto e = a.entry(i, j);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entry(i, j)[k];
      out.set_entry(i, j, std::move(e));
    }
  return out;
}

// The rows first .. first+count-1 of a map.
FreeMap row_block(const FreeMap& x, std::size_t first, std::size_t count) {
  FreeMap out(x.ring_ptr(), x.source(),
              std::vector<Weight>(x.target().begin() + static_cast<long>(first),
                                  x.target().begin() + static_cast<long>(first + count)));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out.set_entry(i, j, x.entry(first + i, j));
  return out;
}

}  // namespace

EquivariantModule::EquivariantModule(RingPtr ring, std::vector<Weight> generators)
    : relations_(std::move(ring), {}, std::move(generators)) {}

EquivariantModule::EquivariantModule(FreeMap relations) : relations_(std::move(relations)) {}

std::string EquivariantModule::str() const {
  std::string out = "generators at";
  for (const auto& w : generators()) out += " " + w.str();
  if (relations_.cols() == 0) return out + ", free";
  return out + ", relations\n" + relations_.str();
}

const ClassSections& gamma_sections(const RingB& ring, const Weight& lambda) { return *ring.sections(lambda); }

FGModule lattice_only_sections(const RingB& ring, const Weight& lambda) {
  if (!lambda.frac().is_zero()) return FGModule::free(ring.order(), 0);
  return gamma_sections(ring, lambda).module;
}

const ClassSections& hom_space(const RingB& ring, const Weight& lambda, const Weight& mu) {
  return gamma_sections(ring, mu - lambda);
}

EquivariantModule twist(const EquivariantModule& f, const Weight& t) {
  return EquivariantModule(f.relations().twisted(t));
}

FGModule global_sections(const EquivariantModule& f, const Weight& t) {
  std::vector<Weight> gens;
  for (const auto& w : f.generators()) gens.push_back(w + t);
  const SectionLayout layout(f.ring(), gens);
  return FGModule(hcat(layout.joins(f.ring().order()), f.relations().gamma(t)));
}

bool vanishes_in(const EquivariantModule& f, const FreeMap& map) {
  if (map.target() != f.generators()) throw std::logic_error("map does not land in the module's generators");
  std::vector<bool> done(map.cols(), false);
  for (std::size_t j = 0; j < map.cols(); ++j) {
    if (done[j]) continue;
    // Every column of this class sends its generator to monomial 0 of class 0 at twist -v_j.
    const Weight t = -map.source()[j];
    const FGModule sections = global_sections(f, t);
    const AMatrix images = map.gamma(t);
    const SectionLayout from(map.ring(), [&] {
      std::vector<Weight> src;
      for (const auto& w : map.source()) src.push_back(w + t);
      return src;
    }());
    std::vector<Index> picked;
    for (std::size_t k = j; k < map.cols(); ++k)
      if (!done[k] && CharacterClass(map.source()[k]) == CharacterClass(map.source()[j])) {
        picked.push_back(from.offset[k]);
        done[k] = true;
      }
    AMatrix vectors(map.ring().order(), images.rows(), static_cast<Index>(picked.size()));
    for (std::size_t c = 0; c < picked.size(); ++c)
      for (Index i = 0; i < images.rows(); ++i) vectors(i, static_cast<Index>(c)) = images(i, picked[c]);
    if (!is_zero_map(sections, vectors)) return false;
  }
  return true;
}

bool is_module_map(const EquivariantModule& from, const EquivariantModule& to, const FreeMap& map) {
  if (map.source() != from.generators()) throw std::logic_error("map does not start at the module's generators");
  return vanishes_in(to, compose(map, from.relations()));
}

bool module_maps_agree(const EquivariantModule& to, const FreeMap& a, const FreeMap& b) {
  return vanishes_in(to, difference(a, b));
}

FreeMap kernel_presentation(const FreeMap& map, const KernelOptions& options) {
  const RingB& ring = map.ring();
  const WeightMonoid& lambda = ring.lambda();
  const int m = ring.order();
  const bool rational = lambda.is_rational();
  const int top_level = rational ? 0 : options.level_window;

  // Candidate weights u: the sections of L_{w_j - u} are nonzero only when
  // w_j - u lies in the class of an element of Lambda.
  struct Candidate {
    int level;
    Weight u;
  };
  std::vector<Candidate> candidates;
  std::set<Weight, WeightKeyLess> seen;
  for (int level = 0; level <= top_level; ++level)
    for (const auto& c : lambda.classes_at_level(level))
      for (const auto& w : map.source()) {
        Weight u = (w - c).frac();
        if (seen.insert(u).second) candidates.push_back({level, std::move(u)});
      }

  FreeMap kernel(map.ring_ptr(), {}, map.source());
  std::vector<int> levels;
  for (const auto& cand : candidates) {
    const Weight t = -cand.u;
    std::vector<Weight> src, tgt;
    for (const auto& w : map.source()) src.push_back(w + t);
    for (const auto& w : map.target()) tgt.push_back(w + t);
    const SectionLayout from(ring, src), to(ring, tgt);
    if (from.total == 0) continue;
    const Mat<Rational> g = map.gamma(t).restrict_scalars();
    const Mat<Rational> target_joins = to.joins(m).restrict_scalars();
    const Index n = from.total * m;
    // x with g x in the span of the target joins.
    const Mat<Rational> stacked = logpar::hcat(g, target_joins);
    const Mat<Rational> null = kernel_basis(stacked);
    const Mat<Rational> preimage = null.topRows(n);

    Mat<Rational> span = from.joins(m).restrict_scalars();
    if (kernel.cols() > 0) span = logpar::hcat(span, kernel.gamma(t).restrict_scalars());
    Index span_rank = logpar::rank(span);
    for (Index c = 0; c < preimage.cols(); ++c) {
      const Mat<Rational> v = preimage.col(c);
      const Mat<Rational> grown = logpar::hcat(span, from_scalar_column(m, v).restrict_scalars());
      const Index grown_rank = logpar::rank(grown);
      if (grown_rank == span_rank) continue;
      span = grown;
      span_rank = grown_rank;
      const AMatrix column = from_scalar_column(m, v);
      FreeMap gen(map.ring_ptr(), {cand.u}, map.source());
      for (std::size_t j = 0; j < map.cols(); ++j) {
        std::vector<AElem> coeffs;
        for (std::size_t k = 0; k < from.blocks[j]->size(); ++k)
          coeffs.push_back(column(from.offset[j] + static_cast<Index>(k), 0));
        gen.set_entry(j, 0, std::move(coeffs));
      }
      kernel = hcat(kernel, gen);
      levels.push_back(cand.level);
    }
  }

  // Drop generators that the later ones already produce.
  std::vector<bool> keep(kernel.cols(), true);
  auto kept_except = [&](std::size_t skip) {
    FreeMap out(map.ring_ptr(), {}, map.source());
    for (std::size_t k = 0; k < kernel.cols(); ++k)
      if (keep[k] && k != skip) out = hcat(out, kernel.columns(k, 1));
    return out;
  };
  for (std::size_t k = 0; k < kernel.cols(); ++k)
    if (vanishes_in(EquivariantModule(kept_except(k)), kernel.columns(k, 1))) keep[k] = false;
  FreeMap pruned(map.ring_ptr(), {}, map.source());
  for (std::size_t k = 0; k < kernel.cols(); ++k) {
    if (!keep[k]) continue;
    if (!rational && 2 * levels[k] > options.level_window)
      throw WindowExceeded("kernel-level-window=" + std::to_string(options.level_window), "--level-window",
                           "kernel needs a generator at weight " + kernel.source()[k].str() +
                               " beyond half the level window");
    pruned = hcat(pruned, kernel.columns(k, 1));
  }
  if (!vanishes_in(EquivariantModule(map.ring_ptr(), map.target()), compose(map, pruned)))
    throw std::logic_error("kernel generators do not compose to zero");
  return pruned;
}

FreeMap kernel_into(const EquivariantModule& target, const FreeMap& map, const KernelOptions& options) {
  const FreeMap joint = kernel_presentation(hcat(map, target.relations()), options);
  return row_block(joint, 0, map.cols());
}

}  // namespace logpar

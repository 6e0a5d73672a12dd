#include "logpar/cohomology.hpp"

#include "logpar/errors.hpp"
#include "logpar/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace logpar {

std::vector<Index> cohomology_by_recursion(const std::vector<PhaseClass>& phases, bool log_variables) {
  const std::size_t r = phases.size();
  // Poincare polynomial of H^*(Z^l, R_l), built from l = 0 upwards as the
  // descending induction unwinds: R_l = R_{l-1}[T_l] or R_{l-1}.
  std::vector<Index> poly{1};
  for (std::size_t l = 0; l < r; ++l) {
    if (!phase_is_trivial(phases[l])) return std::vector<Index>(r + 1, 0);  // g_l - 1 is invertible
    if (log_variables) continue;  // shift - 1 on Q[T_l] is onto with kernel Q: nothing new
    std::vector<Index> next(poly.size() + 1, 0);  // g_l acts trivially: H = H' + H'[-1]
    for (std::size_t m = 0; m < poly.size(); ++m) {
      next[m] += poly[m];
      next[m + 1] += poly[m];
    }
    poly = std::move(next);
  }
  poly.resize(r + 1, 0);
  return poly;
}

namespace {

// Monomials T^a of total degree <= d in r variables.
struct MonomialBasis {
  std::vector<std::vector<int>> exps;
  std::map<std::vector<int>, Index> index;

  MonomialBasis(std::size_t r, int d) {
    std::vector<int> e(r, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == r) {
        index[e] = static_cast<Index>(exps.size());
        exps.push_back(e);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
      e[i] = 0;
    };
    rec(0, d);
  }
  Index size() const { return static_cast<Index>(exps.size()); }
};

Rational binomial(int n, int k) {
  Rational out = 1;
  for (int i = 1; i <= k; ++i) out = out * Rational(n - k + i) / Rational(i);
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t r, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == m) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < r; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// The Koszul complex of the operators g_i - 1 on Lambda^m tensor V, V = Q[T]_{<= d}.
template <class S>
class KoszulComplex {
 public:
  KoszulComplex(const std::vector<S>& characters, bool log_variables, int d)
      : r_(characters.size()), basis_(r_, log_variables ? d : 0) {
    const Index n = basis_.size();
    for (std::size_t i = 0; i < r_; ++i) {
      // g_i - 1 on V: chi_i times the shift T_i -> T_i + 1, minus 1.
      Mat<S> op = Mat<S>::Zero(n, n);
      for (Index col = 0; col < n; ++col) {
        const auto& e = basis_.exps[static_cast<std::size_t>(col)];
        for (int k = 0; k <= e[i]; ++k) {
          auto f = e;
          f[i] = k;
          op(basis_.index.at(f), col) = op(basis_.index.at(f), col) + characters[i] * S(binomial(e[i], k));
        }
        op(col, col) = op(col, col) - S(1);
      }
      ops_.push_back(std::move(op));
    }
  }

  const MonomialBasis& basis() const { return basis_; }
  std::size_t rank() const { return r_; }

  // d^m : C^m -> C^{m+1}.
  Mat<S> differential(std::size_t m) const {
    const Index n = basis_.size();
    const auto from = subsets(r_, m), to = subsets(r_, m + 1);
    Mat<S> out = Mat<S>::Zero(static_cast<Index>(to.size()) * n, static_cast<Index>(from.size()) * n);
    std::map<std::vector<std::size_t>, Index> from_index;
    for (std::size_t k = 0; k < from.size(); ++k) from_index[from[k]] = static_cast<Index>(k);
    for (std::size_t row = 0; row < to.size(); ++row)
      for (std::size_t k = 0; k < to[row].size(); ++k) {
        auto face = to[row];
        const std::size_t i = face[k];
        face.erase(face.begin() + static_cast<long>(k));
        const Index col = from_index.at(face);
        const S sign = k % 2 == 0 ? S(1) : S(-1);
        out.block(static_cast<Index>(row) * n, col * n, n, n) = ops_[i] * sign;
      }
    return out;
  }

  Index cochain_dim(std::size_t m) const { return static_cast<Index>(subsets(r_, m).size()) * basis_.size(); }

 private:
  std::size_t r_;
  MonomialBasis basis_;
  std::vector<Mat<S>> ops_;
};

// Cocycles of slice d mapped into slice d+1 by the inclusion of monomials.
template <class S>
Mat<S> embed_cochains(const Mat<S>& z, const KoszulComplex<S>& small, const KoszulComplex<S>& big, std::size_t m) {
  const Index ns = small.basis().size(), nb = big.basis().size();
  const Index blocks = static_cast<Index>(subsets(small.rank(), m).size());
  Mat<S> out = Mat<S>::Zero(blocks * nb, z.cols());
  for (Index b = 0; b < blocks; ++b)
    for (Index k = 0; k < ns; ++k) {
      const Index target = big.basis().index.at(small.basis().exps[static_cast<std::size_t>(k)]);
      out.row(b * nb + target) = z.row(b * ns + k);
    }
  return out;
}

template <class S>
KoszulSlice koszul_slice(const std::vector<S>& characters, bool log_variables, int d) {
  const std::size_t r = characters.size();
  const KoszulComplex<S> small(characters, log_variables, d), big(characters, log_variables, d + 1);
  KoszulSlice out;
  out.truncation = log_variables ? d : 0;
  std::vector<Mat<S>> diff_small, diff_big;
  for (std::size_t m = 0; m < r; ++m) {
    diff_small.push_back(small.differential(m));
    diff_big.push_back(big.differential(m));
  }
  for (std::size_t m = 0; m <= r; ++m) {
    const Index dim = small.cochain_dim(m);
    const Index rank_out = m < r ? rank(diff_small[m]) : 0;
    const Index rank_in = m > 0 ? rank(diff_small[m - 1]) : 0;
    out.dims.push_back(dim - rank_out - rank_in);
    if (m == 0) {
      out.transition_vanishes.push_back(out.dims[0] == 0);
      continue;
    }
    const Mat<S> cocycles = m < r ? kernel_basis(diff_small[m]) : Mat<S>::Identity(dim, dim);
    out.transition_vanishes.push_back(
        in_column_span(diff_big[m - 1], embed_cochains(cocycles, small, big, m)));
  }
  return out;
}

struct SliceCache {
  std::mutex guard;
  std::map<std::string, KoszulSlice> slices;
};

SliceCache& slice_cache() {
  static SliceCache cache;
  return cache;
}

std::string phase_key(const std::vector<PhaseClass>& phases, bool log_variables, int d) {
  std::string key = std::to_string(d) + (log_variables ? "T" : "-");
  for (const auto& p : phases) key += "|" + p.representative().str();
  return key;
}

}  // namespace

KoszulSlice cohomology_by_koszul(const std::vector<PhaseClass>& phases, bool log_variables, int truncation) {
  const std::string key = phase_key(phases, log_variables, truncation);
  {
    std::lock_guard lock(slice_cache().guard);
    auto it = slice_cache().slices.find(key);
    if (it != slice_cache().slices.end()) return it->second;
  }
  bool trivial = true;
  long level = 1, u_level = 1;
  for (const auto& p : phases) {
    if (!phase_is_trivial(p)) trivial = false;
    const auto& rep = p.representative();
    level = std::lcm(level, to_int64(denominator(rep.rational_part())));
    u_level = std::lcm(u_level, to_int64(denominator(rep.coefficient(1))));
  }
  KoszulSlice out;
  if (trivial) {
    out = koszul_slice(std::vector<Rational>(phases.size(), Rational(1)), log_variables, truncation);
  } else {
    const ScalarField field(static_cast<int>(level), static_cast<int>(u_level));
    std::vector<PhaseScalar> characters;
    for (const auto& p : phases) characters.push_back(field.embed_phase(p));
    out = koszul_slice(characters, log_variables, truncation);
  }
  std::lock_guard lock(slice_cache().guard);
  return slice_cache().slices.emplace(key, std::move(out)).first->second;
}

CohomologyReport group_cohomology(const RingB& ring, const Weight& lambda, const CohomologyOptions& options) {
  const int r = ring.rank();
  if (lambda.rank() != r) throw RankMismatch("weight " + lambda.str() + " has the wrong dimension");
  CohomologyReport rep;
  rep.lambda = lambda;
  rep.rank = r;
  rep.log_variables = options.log_variables;
  rep.method = options.method;
  rep.dims.assign(static_cast<std::size_t>(r) + 1, 0);
  std::vector<int> truncations = options.truncations;
  if (truncations.empty()) truncations = {r + 2, r + 3};
  if (!options.log_variables) truncations = {0};

  const WeightMonoid& lam = ring.lambda();
  const int top = lam.is_rational() ? 0 : options.level_window;
  if (!lam.is_rational()) {
    rep.complete = false;
    rep.bound = "cohomology-level-window=" + std::to_string(options.level_window);
  }
  const bool use_recursion = options.method != CohomologyMethod::Koszul;
  const bool use_koszul = options.method != CohomologyMethod::Recursion;
  for (int level = 0; level <= top; ++level)
    for (const auto& c : lam.classes_at_level(level)) {
      ClassCohomology cls;
      cls.monomial_class = c;
      for (const auto& x : (c - lambda).coords) cls.phases.emplace_back(x);
      cls.multiplicity = ring.sections(c)->module.dimension();
      cls.character.trivial = std::all_of(cls.phases.begin(), cls.phases.end(), phase_is_trivial);
      if (use_recursion) cls.character.recursion = cohomology_by_recursion(cls.phases, options.log_variables);
      if (use_koszul)
        for (int d : truncations) cls.character.slices.push_back(cohomology_by_koszul(cls.phases, options.log_variables, d));

      // The stable answer: slice dims in degree 0, and in positive degree the
      // classes that survive every enlargement of the slice.
      std::vector<Index> stable(static_cast<std::size_t>(r) + 1, 0);
      if (use_koszul) {
        const auto& first = cls.character.slices.front();
        for (int m = 0; m <= r; ++m) {
          const auto mm = static_cast<std::size_t>(m);
          if (!options.log_variables || m == 0) stable[mm] = first.dims[mm];
          else {
            bool vanish = true;
            for (const auto& s : cls.character.slices) vanish = vanish && s.transition_vanishes[mm];
            if (!vanish) rep.stabilized = false;
            stable[mm] = vanish ? 0 : first.dims[mm];
          }
        }
        if (use_recursion && stable != cls.character.recursion)
          throw MethodDisagreement("recursion and Koszul disagree for the monomial class " + c.str());
      } else {
        stable = cls.character.recursion;
      }
      for (std::size_t m = 0; m < stable.size(); ++m) rep.dims[m] += cls.multiplicity * stable[m];
      rep.classes.push_back(std::move(cls));
    }
  return rep;
}

std::string to_string(CohomologyMethod method) {
  switch (method) {
    case CohomologyMethod::Recursion: return "recursion";
    case CohomologyMethod::Koszul: return "truncated-koszul";
    case CohomologyMethod::Both: return "both";
  }
  return "both";
}

}  // namespace logpar

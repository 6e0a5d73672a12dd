#pragma once

// Brute-force monoid oracles in ambient coordinates. Cone membership by
// Caratheodory subsets, irreducibility by exhaustive splitting, membership by
// bounded knapsack search.

#include "logpar/linalg.hpp"
#include "logpar/monoid.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

using logpar::LatticePoint;
using logpar::Mat;
using logpar::Rational;

inline bool cone_contains(const std::vector<LatticePoint>& gens, const LatticePoint& v) {
  const std::size_t r = v.size();
  const std::size_t n = gens.size();
  std::vector<bool> pick(n, false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(std::min(r, n)), pick.end(), true);
  do {
    std::vector<LatticePoint> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) cols.push_back(gens[i]);
    Mat<Rational> a(static_cast<logpar::Index>(r), static_cast<logpar::Index>(cols.size()));
    Mat<Rational> b(static_cast<logpar::Index>(r), 1);
    for (std::size_t i = 0; i < r; ++i) {
      b(static_cast<logpar::Index>(i), 0) = v[i];
      for (std::size_t j = 0; j < cols.size(); ++j) a(static_cast<logpar::Index>(i), static_cast<logpar::Index>(j)) = cols[j][i];
    }
    if (logpar::rank(a) < static_cast<logpar::Index>(cols.size())) continue;
    const auto x = logpar::solve(a, b);
    if (x && std::all_of(x->data(), x->data() + x->size(), [](const Rational& c) { return c >= 0; })) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

// Hilbert basis of cone(gens) intersected with the lattice accepted by in_lattice,
// by splitting every box point in all possible ways.
inline std::set<LatticePoint> hilbert_basis(const std::vector<LatticePoint>& gens,
                                            const std::function<bool(const LatticePoint&)>& in_lattice, std::int64_t box) {
  const std::size_t r = gens.front().size();
  std::vector<LatticePoint> pts;
  logpar::for_each_box_point(LatticePoint(r, -box), LatticePoint(r, box), [&](const LatticePoint& x) {
    if (std::any_of(x.begin(), x.end(), [](std::int64_t c) { return c != 0; }) && in_lattice(x) && cone_contains(gens, x))
      pts.push_back(x);
  });
  const std::set<LatticePoint> all(pts.begin(), pts.end());
  std::set<LatticePoint> irreducible;
  for (const auto& x : pts) {
    bool split = false;
    for (const auto& y : pts) {
      LatticePoint z(r);
      for (std::size_t i = 0; i < r; ++i) z[i] = x[i] - y[i];
      if (all.count(z)) {
        split = true;
        break;
      }
    }
    if (!split) irreducible.insert(x);
  }
  return irreducible;
}

// Is v a nonnegative integer combination of basis? phi must be positive on the basis.
inline bool knapsack_member(const std::vector<LatticePoint>& basis, const LatticePoint& v,
                            const std::vector<Rational>& phi) {
  auto phi_of = [&](const LatticePoint& p) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += phi[i] * p[i];
    return s;
  };
  std::function<bool(const LatticePoint&, std::size_t)> rec = [&](const LatticePoint& rest, std::size_t from) {
    if (std::all_of(rest.begin(), rest.end(), [](std::int64_t c) { return c == 0; })) return true;
    if (phi_of(rest) <= 0) return false;
    for (std::size_t k = from; k < basis.size(); ++k) {
      LatticePoint next(rest.size());
      for (std::size_t i = 0; i < rest.size(); ++i) next[i] = rest[i] - basis[k][i];
      if (rec(next, k)) return true;
    }
    return false;
  };
  return rec(v, 0);
}

}  // namespace oracle

#include "logpar/monoid.hpp"

#include "logpar/errors.hpp"
#include "logpar/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace logpar {

std::int64_t dot(const LatticePoint& a, const LatticePoint& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

LatticePoint operator-(const LatticePoint& a) {
  LatticePoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

std::int64_t DualElement::operator()(const LatticePoint& v) const { return dot(coords, v); }

WeightFieldElement DualElement::operator()(const std::vector<WeightFieldElement>& v) const {
  WeightFieldElement s;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) s += WeightFieldElement(Rational(coords[i])) * v[i];
  return s;
}

namespace {

Mat<Rational> columns_of(const std::vector<LatticePoint>& points, int r) {
  Mat<Rational> m(r, static_cast<Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j)
    for (int i = 0; i < r; ++i) m(i, static_cast<Index>(j)) = Rational(points[j][static_cast<std::size_t>(i)]);
  return m;
}

Rational determinant(Mat<Rational> m) {
  const Index n = m.rows();
  Rational det = 1;
  for (Index c = 0; c < n; ++c) {
    Index p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.row(p).swap(m.row(c));
      det = -det;
    }
    det *= m(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (Index j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// Row-style Hermite reduction: an integer basis of the lattice spanned by the rows.
std::vector<LatticePoint> lattice_basis(std::vector<LatticePoint> rows, int r) {
  std::vector<LatticePoint> basis;
  for (int col = 0; col < r; ++col) {
    const auto c = static_cast<std::size_t>(col);
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::abs(rows[i][c]) < std::abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      bool reduced = false;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][c] == 0) continue;
        const std::int64_t q = rows[i][c] / rows[best][c];
        for (std::size_t k = 0; k < static_cast<std::size_t>(r); ++k) rows[i][k] -= q * rows[best][k];
        reduced = true;
      }
      bool alone = true;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (i != best && rows[i][c] != 0) alone = false;
      if (alone) {
        basis.push_back(rows[best]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
        break;
      }
      if (!reduced) break;
    }
  }
  return basis;
}

LatticePoint primitive(LatticePoint v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Cofactor normal of r-1 vectors in Z^r.
LatticePoint cofactor_normal(const std::vector<LatticePoint>& vecs, int r) {
  LatticePoint n(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i) {
    Mat<Rational> minor(r - 1, r - 1);
    for (int a = 0; a < r - 1; ++a) {
      int col = 0;
      for (int k = 0; k < r; ++k) {
        if (k == i) continue;
        minor(a, col++) = Rational(vecs[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]);
      }
    }
    const Integer d = numerator(determinant(minor));
    n[static_cast<std::size_t>(i)] = to_int64(i % 2 == 0 ? d : Integer(-d));
  }
  return primitive(n);
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& visit) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    visit(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<LatticePoint> facet_normals_of(const std::vector<LatticePoint>& gens, int r) {
  std::set<LatticePoint> normals;
  if (r == 1) {
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      pos |= g[0] > 0;
      neg |= g[0] < 0;
    }
    if (pos && neg) throw NotSharp("generated cone contains a line");
    return {LatticePoint{pos ? 1 : -1}};
  }
  for_each_subset(gens.size(), static_cast<std::size_t>(r - 1), [&](const std::vector<std::size_t>& idx) {
    std::vector<LatticePoint> vecs;
    for (auto i : idx) vecs.push_back(gens[i]);
    LatticePoint n = cofactor_normal(vecs, r);
    if (std::all_of(n.begin(), n.end(), [](std::int64_t x) { return x == 0; })) return;
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      const auto v = dot(n, g);
      pos |= v > 0;
      neg |= v < 0;
    }
    if (pos && neg) return;
    normals.insert(neg ? -n : n);
  });
  std::vector<LatticePoint> out(normals.begin(), normals.end());
  if (out.empty() || rank(columns_of(out, r)) < r) throw NotSharp("generated cone contains a line");
  return out;
}

bool in_cone_int(const std::vector<LatticePoint>& facets, const LatticePoint& v) {
  return std::all_of(facets.begin(), facets.end(), [&](const LatticePoint& n) { return dot(n, v) >= 0; });
}

// Lex-smallest integer covector positive on all generators, searched in growing boxes.
LatticePoint smallest_positive_covector(const std::vector<LatticePoint>& gens, int r) {
  for (std::int64_t k = 1;; ++k) {
    std::optional<LatticePoint> found;
    for_each_box_point(LatticePoint(static_cast<std::size_t>(r), -k), LatticePoint(static_cast<std::size_t>(r), k),
                       [&](const LatticePoint& c) {
                         if (found) return;
                         if (std::all_of(gens.begin(), gens.end(), [&](const LatticePoint& g) { return dot(c, g) > 0; }))
                           found = c;
                       });
    if (found) return *found;
    if (k > 1000) throw NotSharp("no positive functional found");
  }
}

LatticePoint to_int_vector(const Mat<Rational>& col) {
  LatticePoint out(static_cast<std::size_t>(col.rows()));
  for (Index i = 0; i < col.rows(); ++i) {
    if (denominator(col(i, 0)) != 1) throw std::logic_error("non-integral lattice coordinate");
    out[static_cast<std::size_t>(i)] = to_int64(numerator(col(i, 0)));
  }
  return out;
}

LatticePoint row_times(const LatticePoint& row, const Mat<Rational>& m) {
  LatticePoint out(static_cast<std::size_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j) {
    Rational s = 0;
    for (Index i = 0; i < m.rows(); ++i) s += Rational(row[static_cast<std::size_t>(i)]) * m(i, j);
    if (denominator(s) != 1) throw std::logic_error("non-integral covector");
    out[static_cast<std::size_t>(j)] = to_int64(numerator(s));
  }
  return out;
}

Mat<Rational> inverse_exact(const Mat<Rational>& m) {
  return *solve<Rational>(m, Mat<Rational>::Identity(m.rows(), m.rows()));
}

}  // namespace

ToricMonoid ToricMonoid::make(const std::vector<LatticePoint>& generators, SaturationLattice lattice) {
  if (generators.empty()) throw RankMismatch("no generators given");
  const std::size_t r = generators.front().size();
  if (r == 0) throw RankMismatch("generators have dimension 0");
  for (const auto& g : generators)
    if (g.size() != r) throw RankMismatch("generator dimensions differ");
  std::vector<LatticePoint> gens;
  for (const auto& g : generators)
    if (std::any_of(g.begin(), g.end(), [](std::int64_t x) { return x != 0; })) gens.push_back(g);
  const int ri = static_cast<int>(r);
  if (gens.empty() || logpar::rank(columns_of(gens, ri)) < ri)
    throw RankMismatch("generators do not span a full-rank cone");

  // Lattice in which we saturate, with basis columns B (ambient).
  std::vector<LatticePoint> lattice_rows;
  if (lattice == SaturationLattice::Generated) {
    lattice_rows = lattice_basis(gens, ri);
  } else {
    for (std::size_t i = 0; i < r; ++i) {
      LatticePoint e(r, 0);
      e[i] = 1;
      lattice_rows.push_back(e);
    }
  }
  const Mat<Rational> b = columns_of(lattice_rows, ri);
  const Mat<Rational> b_inv = inverse_exact(b);
  std::vector<LatticePoint> gens_l;
  for (const auto& g : gens) gens_l.push_back(to_int_vector(b_inv * columns_of({g}, ri)));

  const auto facets_l = facet_normals_of(gens_l, ri);
  const LatticePoint phi_amb = smallest_positive_covector(gens, ri);
  const LatticePoint phi_l = row_times(phi_amb, b);

  // Hilbert basis in lattice coordinates by (phi, lex) sweep.
  std::vector<std::int64_t> gen_phis;
  for (const auto& g : gens_l) gen_phis.push_back(dot(phi_l, g));
  std::sort(gen_phis.rbegin(), gen_phis.rend());
  std::int64_t top_sum = 0;
  for (std::size_t i = 0; i < r && i < gen_phis.size(); ++i) top_sum += gen_phis[i];
  const std::int64_t bound = std::max(top_sum, gen_phis.front());

  std::vector<std::int64_t> lo(r, 0), hi(r, 0);
  for (const auto& g : gens_l) {
    const std::int64_t pg = dot(phi_l, g);
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t reach = (std::abs(g[i]) * bound + pg - 1) / pg;
      lo[i] = std::min(lo[i], -reach);
      hi[i] = std::max(hi[i], reach);
    }
  }
  std::vector<std::pair<std::int64_t, LatticePoint>> candidates;
  for_each_box_point(lo, hi, [&](const LatticePoint& x) {
    const std::int64_t v = dot(phi_l, x);
    if (v <= 0 || v > bound || !in_cone_int(facets_l, x)) return;
    candidates.emplace_back(v, x);
  });
  std::sort(candidates.begin(), candidates.end());
  std::vector<LatticePoint> hb_l;
  for (const auto& [v, x] : candidates) {
    const bool reducible = std::any_of(hb_l.begin(), hb_l.end(), [&](const LatticePoint& h) {
      return in_cone_int(facets_l, x - h);
    });
    if (!reducible) hb_l.push_back(x);
  }

  // Ambient lex order, then the lex-first r-subset that is a lattice basis.
  std::vector<LatticePoint> hb_amb;
  for (const auto& h : hb_l) hb_amb.push_back(to_int_vector(b * columns_of({h}, ri)));
  std::sort(hb_amb.begin(), hb_amb.end());
  const Rational index = abs(determinant(b));
  Mat<Rational> p = b;
  bool chosen = false;
  for_each_subset(hb_amb.size(), r, [&](const std::vector<std::size_t>& idx) {
    if (chosen) return;
    std::vector<LatticePoint> cols;
    for (auto i : idx) cols.push_back(hb_amb[i]);
    const Mat<Rational> cand = columns_of(cols, ri);
    if (abs(determinant(cand)) == index) {
      p = cand;
      chosen = true;
    }
  });

  ToricMonoid m;
  m.rank_ = ri;
  m.basis_ = p;
  m.basis_inverse_ = inverse_exact(p);
  for (const auto& h : hb_amb) m.hilbert_basis_.push_back(to_int_vector(m.basis_inverse_ * columns_of({h}, ri)));
  // Normals transform by x_L = T x_P with T = B^{-1} P.
  const Mat<Rational> t = b_inv * p;
  for (const auto& n : facets_l) m.facets_.push_back(primitive(row_times(n, t)));
  std::sort(m.facets_.begin(), m.facets_.end());
  m.phi_ = DualElement{row_times(phi_amb, p)};
  std::vector<std::int64_t> hb_phis;
  for (const auto& h : m.hilbert_basis_) hb_phis.push_back(m.phi(h));
  std::sort(hb_phis.rbegin(), hb_phis.rend());
  m.max_phi_ = hb_phis.front();
  for (std::size_t i = 0; i < r && i < hb_phis.size(); ++i) m.parallelotope_bound_ += hb_phis[i];
  return m;
}

LatticePoint ToricMonoid::to_ambient(const LatticePoint& coords) const {
  return to_int_vector(basis_ * columns_of({coords}, rank_));
}

std::optional<LatticePoint> ToricMonoid::from_ambient(const LatticePoint& ambient) const {
  if (ambient.size() != static_cast<std::size_t>(rank_)) throw RankMismatch("point has the wrong dimension");
  const Mat<Rational> x = basis_inverse_ * columns_of({ambient}, rank_);
  for (Index i = 0; i < x.rows(); ++i)
    if (denominator(x(i, 0)) != 1) return std::nullopt;
  return to_int_vector(x);
}

std::vector<LatticePoint> ToricMonoid::hilbert_basis_ambient() const {
  std::vector<LatticePoint> out;
  for (const auto& h : hilbert_basis_) out.push_back(to_ambient(h));
  return out;
}

std::vector<Rational> ToricMonoid::phi_ambient() const {
  std::vector<Rational> out(static_cast<std::size_t>(rank_), Rational(0));
  for (int j = 0; j < rank_; ++j)
    for (int i = 0; i < rank_; ++i)
      out[static_cast<std::size_t>(j)] += Rational(phi_.coords[static_cast<std::size_t>(i)]) * basis_inverse_(i, j);
  return out;
}

bool ToricMonoid::member(const LatticePoint& coords) const { return in_cone_int(facets_, coords); }

bool ToricMonoid::member_ambient(const LatticePoint& ambient) const {
  const auto coords = from_ambient(ambient);
  return coords && member(*coords);
}

bool ToricMonoid::in_cone(const std::vector<WeightFieldElement>& coords) const {
  return std::all_of(facets_.begin(), facets_.end(),
                     [&](const LatticePoint& n) { return DualElement{n}(coords).sign() >= 0; });
}

std::vector<LatticePoint> ToricMonoid::points_up_to(std::int64_t bound) const {
  std::vector<std::pair<std::int64_t, LatticePoint>> found;
  if (bound >= 0) {
    const std::size_t r = static_cast<std::size_t>(rank_);
    std::vector<std::int64_t> lo(r, 0), hi(r, 0);
    for (const auto& h : hilbert_basis_) {
      const std::int64_t ph = phi(h);
      for (std::size_t i = 0; i < r; ++i) {
        const std::int64_t reach = (std::abs(h[i]) * bound + ph - 1) / ph;
        lo[i] = std::min(lo[i], -reach);
        hi[i] = std::max(hi[i], reach);
      }
    }
    for_each_box_point(lo, hi, [&](const LatticePoint& x) {
      const std::int64_t v = phi(x);
      if (v <= bound && member(x)) found.emplace_back(v, x);
    });
  }
  std::sort(found.begin(), found.end());
  std::vector<LatticePoint> out;
  for (auto& [v, x] : found) out.push_back(std::move(x));
  return out;
}

}  // namespace logpar

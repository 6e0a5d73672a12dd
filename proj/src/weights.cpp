#include "logpar/weights.hpp"

#include "logpar/errors.hpp"
#include "logpar/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace logpar {

Weight Weight::zero(int rank) { return Weight{std::vector<WeightFieldElement>(static_cast<std::size_t>(rank))}; }

Weight Weight::from_lattice(const LatticePoint& p) {
  Weight w;
  for (auto c : p) w.coords.emplace_back(Rational(c));
  return w;
}

bool Weight::is_rational() const {
  return std::all_of(coords.begin(), coords.end(), [](const WeightFieldElement& x) { return x.is_rational(); });
}

bool Weight::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const WeightFieldElement& x) { return x.is_zero(); });
}

Weight Weight::operator-() const {
  Weight out = *this;
  for (auto& c : out.coords) c = -c;
  return out;
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= b.coords[i];
  return out;
}

Weight operator+(const Weight& a, const LatticePoint& p) {
  Weight out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i)
    if (p[i] != 0) out.coords[i] += WeightFieldElement(Rational(p[i]));
  return out;
}

Weight operator-(const Weight& a, const LatticePoint& p) { return a + (-p); }

LatticePoint Weight::floor() const {
  LatticePoint out;
  for (const auto& c : coords) out.push_back(to_int64(c.floor()));
  return out;
}

Weight Weight::frac() const {
  Weight out;
  for (const auto& c : coords) out.coords.push_back(c.frac());
  return out;
}

std::string Weight::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? ", " : "") + coords[i].str();
  return out + ")";
}

bool WeightKeyLess::operator()(const Weight& a, const Weight& b) const {
  if (a.coords.size() != b.coords.size()) return a.coords.size() < b.coords.size();
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (WeightFieldElement::structural_less(a.coords[i], b.coords[i])) return true;
    if (WeightFieldElement::structural_less(b.coords[i], a.coords[i])) return false;
  }
  return false;
}

bool numeric_lex_less(const Weight& a, const Weight& b) {
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const int s = (a.coords[i] - b.coords[i]).sign();
    if (s != 0) return s < 0;
  }
  return false;
}

struct WeightMonoid::Cache {
  std::mutex guard;
  std::map<Weight, MembershipVerdict, WeightKeyLess> image;
  std::map<Weight, MembershipVerdict, WeightKeyLess> group;
  std::map<std::vector<std::int64_t>, std::vector<LatticePoint>> minimal;
};

namespace {

std::size_t max_power(const std::vector<Weight>& ws) {
  std::size_t d = 1;
  for (const auto& w : ws)
    for (const auto& c : w.coords) d = std::max(d, c.coefficients().size());
  for (const auto& w : ws)
    for (const auto& c : w.coords)
      if (c.ground()) d = std::max(d, static_cast<std::size_t>(c.ground()->degree()));
  return d;
}

Integer ceil_weight(const WeightFieldElement& x) { return -(-x).floor(); }

}  // namespace

WeightMonoid WeightMonoid::fraction(std::shared_ptr<const ToricMonoid> base, int n) {
  if (n < 1) throw InputError("fraction order must be positive");
  WeightMonoid m;
  m.kind_ = Kind::Fraction;
  m.n_ = n;
  m.base_ = std::move(base);
  m.cache_ = std::make_shared<Cache>();
  return m;
}

WeightMonoid WeightMonoid::saturated(std::shared_ptr<const ToricMonoid> base, std::vector<Weight> extra,
                                     int search_radius) {
  WeightMonoid m;
  m.kind_ = Kind::Saturated;
  m.base_ = std::move(base);
  m.radius_ = search_radius;
  m.cache_ = std::make_shared<Cache>();
  const int r = m.base_->rank();
  auto data = std::make_shared<SaturatedData>();
  std::vector<Weight> rational;
  for (auto& g : extra) {
    if (g.rank() != r) throw RankMismatch("extra generator has the wrong dimension");
    if (!m.base_->in_cone(g.coords)) throw InputError("extra generator " + g.str() + " lies outside the cone");
    if (g.is_zero()) continue;
    if (g.is_rational()) rational.push_back(g.frac());
    else data->irrational.push_back(g);
    m.extra_.push_back(g);
  }
  // Closure of the rational classes under addition; finite because each has finite order.
  std::vector<Weight> frontier{Weight::zero(r)};
  data->rational_group.insert(Weight::zero(r));
  data->rational_classes.push_back(Weight::zero(r));
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& c : frontier)
      for (const auto& g : rational) {
        Weight s = (c + g).frac();
        if (data->rational_group.insert(s).second) {
          data->rational_classes.push_back(s);
          next.push_back(std::move(s));
        }
      }
    frontier = std::move(next);
  }
  if (!data->irrational.empty()) {
    m.sat_ = data;  // irrational_vector needs the generator list
    const std::size_t d = max_power(data->irrational);
    const auto rows = static_cast<Index>(static_cast<std::size_t>(r) * (d - 1));
    data->irrational_matrix = Mat<Rational>::Zero(rows, static_cast<Index>(data->irrational.size()));
    for (std::size_t j = 0; j < data->irrational.size(); ++j) {
      const auto v = m.irrational_vector(data->irrational[j]);
      for (Index i = 0; i < rows; ++i) data->irrational_matrix(i, static_cast<Index>(j)) = v[static_cast<std::size_t>(i)];
    }
    data->full_rank = logpar::rank(data->irrational_matrix) == static_cast<Index>(data->irrational.size());
  }
  m.sat_ = std::move(data);
  return m;
}

bool WeightMonoid::is_rational() const { return kind_ == Kind::Fraction || sat_->irrational.empty(); }

std::vector<Rational> WeightMonoid::irrational_vector(const Weight& w) const {
  const std::size_t d = sat_ && !sat_->irrational.empty() ? max_power(sat_->irrational) : 1;
  std::vector<Rational> out;
  for (const auto& c : w.coords)
    for (std::size_t k = 1; k < d; ++k) out.push_back(c.coefficient(k));
  return out;
}

MembershipVerdict WeightMonoid::class_verdict(const CharacterClass& c, bool allow_negative) const {
  const Weight& rep = c.representative();
  if (kind_ == Kind::Fraction) {
    for (const auto& x : rep.coords)
      if (!x.is_rational() || n_ % denominator(x.rational_part()) != 0) return MembershipVerdict::NotMember;
    return MembershipVerdict::Member;
  }
  const auto& data = *sat_;
  auto residual_in_group = [&](const Weight& s) { return data.rational_group.count(s.frac()) > 0; };
  if (data.irrational.empty()) {
    if (!rep.is_rational()) return MembershipVerdict::NotMember;
    return residual_in_group(rep) ? MembershipVerdict::Member : MembershipVerdict::NotMember;
  }
  for (const auto& x : rep.coords)
    if (x.coefficients().size() > max_power(data.irrational)) return MembershipVerdict::NotMember;
  const auto target = irrational_vector(rep);
  const auto rows = static_cast<Index>(target.size());
  auto counts_fit = [&](const std::vector<Rational>& n) {
    Weight s = rep;
    for (std::size_t j = 0; j < n.size(); ++j)
      for (std::size_t i = 0; i < s.coords.size(); ++i)
        s.coords[i] -= WeightFieldElement(n[j]) * data.irrational[j].coords[i];
    return residual_in_group(s);
  };
  if (data.full_rank) {
    Mat<Rational> b(rows, 1);
    for (Index i = 0; i < rows; ++i) b(i, 0) = target[static_cast<std::size_t>(i)];
    const auto sol = solve(data.irrational_matrix, b);
    if (!sol) return MembershipVerdict::NotMember;
    std::vector<Rational> n;
    for (Index j = 0; j < sol->rows(); ++j) {
      const Rational& x = (*sol)(j, 0);
      if (denominator(x) != 1 || (!allow_negative && x < 0)) return MembershipVerdict::NotMember;
      n.push_back(x);
    }
    return counts_fit(n) ? MembershipVerdict::Member : MembershipVerdict::NotMember;
  }
  // Underdetermined: bounded search with the witness window of the chosen radius.
  std::int64_t phi_abs = 0;
  for (auto x : base_->positive_functional().coords) phi_abs += std::abs(x);
  const WeightFieldElement reach = base_->phi(rep.coords) + WeightFieldElement(Rational(radius_ * phi_abs));
  std::vector<std::int64_t> lo, hi;
  for (const auto& g : data.irrational) {
    const WeightFieldElement pg = base_->phi(g.coords);
    std::int64_t k = 0;  // largest count with k * phi(g) <= reach
    while ((WeightFieldElement(Rational(k + 1)) * pg - reach).sign() <= 0) ++k;
    hi.push_back(k);
    lo.push_back(allow_negative ? -k : 0);
  }
  bool found = false;
  for_each_box_point(lo, hi, [&](const LatticePoint& n) {
    if (found) return;
    for (Index i = 0; i < rows; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n.size(); ++j) s += data.irrational_matrix(i, static_cast<Index>(j)) * n[j];
      if (s != target[static_cast<std::size_t>(i)]) return;
    }
    std::vector<Rational> nq(n.begin(), n.end());
    if (counts_fit(nq)) found = true;
  });
  return found ? MembershipVerdict::Member : MembershipVerdict::Incomplete;
}

MembershipVerdict WeightMonoid::class_in_image(const CharacterClass& c) const {
  {
    std::lock_guard lock(cache_->guard);
    auto it = cache_->image.find(c.representative());
    if (it != cache_->image.end()) return it->second;
  }
  const auto v = class_verdict(c, false);
  std::lock_guard lock(cache_->guard);
  cache_->image.emplace(c.representative(), v);
  return v;
}

MembershipVerdict WeightMonoid::class_in_group(const CharacterClass& c) const {
  {
    std::lock_guard lock(cache_->guard);
    auto it = cache_->group.find(c.representative());
    if (it != cache_->group.end()) return it->second;
  }
  const auto v = class_verdict(c, true);
  std::lock_guard lock(cache_->guard);
  cache_->group.emplace(c.representative(), v);
  return v;
}

MembershipVerdict WeightMonoid::lambda_member(const Weight& w) const {
  if (w.rank() != rank()) throw RankMismatch("weight has the wrong dimension");
  if (!base_->in_cone(w.coords)) return MembershipVerdict::NotMember;
  return class_in_image(CharacterClass(w));
}

namespace {

[[noreturn]] void throw_class_incomplete(const Weight& w, int radius) {
  throw Incomplete("saturated-class-window=" + std::to_string(radius), "--window",
                   "class membership of " + w.str() + " undecided within shift window " + std::to_string(radius));
}

}  // namespace

bool WeightMonoid::in_lambda(const Weight& w) const {
  const auto v = lambda_member(w);
  if (v == MembershipVerdict::Incomplete) throw_class_incomplete(w, radius_);
  return v == MembershipVerdict::Member;
}

bool WeightMonoid::leq(const Weight& lower, const Weight& upper) const { return in_lambda(upper - lower); }

std::vector<std::int64_t> WeightMonoid::cone_bounds(const Weight& w) const {
  std::vector<std::int64_t> b;
  for (const auto& n : base_->facet_normals()) b.push_back(to_int64(ceil_weight(-DualElement{n}(w.coords))));
  return b;
}

namespace {

struct Vertices {
  std::vector<std::vector<Rational>> points;
  Rational phi_min, phi_max;
};

Vertices polyhedron_vertices(const ToricMonoid& p, const std::vector<std::int64_t>& b) {
  const auto& facets = p.facet_normals();
  const std::size_t r = static_cast<std::size_t>(p.rank());
  Vertices out;
  std::vector<bool> pick(facets.size(), false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(r), pick.end(), true);
  do {
    Mat<Rational> a(static_cast<Index>(r), static_cast<Index>(r));
    Mat<Rational> rhs(static_cast<Index>(r), 1);
    Index row = 0;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!pick[f]) continue;
      for (std::size_t k = 0; k < r; ++k) a(row, static_cast<Index>(k)) = Rational(facets[f][k]);
      rhs(row, 0) = Rational(b[f]);
      ++row;
    }
    if (logpar::rank(a) < static_cast<Index>(r)) continue;
    const auto x = solve(a, rhs);
    std::vector<Rational> v(x->data(), x->data() + r);
    bool feasible = true;
    for (std::size_t f = 0; f < facets.size() && feasible; ++f) {
      Rational s = 0;
      for (std::size_t k = 0; k < r; ++k) s += Rational(facets[f][k]) * v[k];
      feasible = s >= b[f];
    }
    if (!feasible) continue;
    Rational ph = 0;
    for (std::size_t k = 0; k < r; ++k) ph += Rational(p.positive_functional().coords[k]) * v[k];
    if (out.points.empty() || ph < out.phi_min) out.phi_min = ph;
    if (out.points.empty() || ph > out.phi_max) out.phi_max = ph;
    out.points.push_back(std::move(v));
  } while (std::next_permutation(pick.begin(), pick.end()));
  if (out.points.empty()) throw std::logic_error("polyhedron over a pointed cone without vertices");
  return out;
}

}  // namespace

std::vector<LatticePoint> WeightMonoid::polyhedron_points(const std::vector<std::int64_t>& b,
                                                          std::int64_t phi_max) const {
  const ToricMonoid& p = *base_;
  const auto verts = polyhedron_vertices(p, b);
  if (Rational(phi_max) < verts.phi_min) return {};
  const std::size_t r = static_cast<std::size_t>(p.rank());
  const Rational slack = Rational(phi_max) - verts.phi_min;
  std::vector<std::int64_t> lo(r), hi(r);
  for (std::size_t i = 0; i < r; ++i) {
    Rational vmin = verts.points.front()[i], vmax = vmin;
    for (const auto& v : verts.points) {
      vmin = std::min(vmin, v[i]);
      vmax = std::max(vmax, v[i]);
    }
    Rational reach = 0;
    for (const auto& h : p.hilbert_basis()) reach = std::max(reach, Rational(std::abs(h[i])) * slack / p.phi(h));
    lo[i] = to_int64(floor_of(vmin - reach));
    hi[i] = to_int64(ceil_of(vmax + reach));
  }
  const auto& facets = p.facet_normals();
  std::vector<std::pair<std::int64_t, LatticePoint>> found;
  for_each_box_point(lo, hi, [&](const LatticePoint& x) {
    const std::int64_t v = p.phi(x);
    if (v > phi_max) return;
    for (std::size_t f = 0; f < facets.size(); ++f)
      if (dot(facets[f], x) < b[f]) return;
    found.emplace_back(v, x);
  });
  std::sort(found.begin(), found.end());
  std::vector<LatticePoint> out;
  for (auto& [v, x] : found) out.push_back(std::move(x));
  return out;
}

std::vector<LatticePoint> WeightMonoid::minimal_points(const std::vector<std::int64_t>& b) const {
  {
    std::lock_guard lock(cache_->guard);
    auto it = cache_->minimal.find(b);
    if (it != cache_->minimal.end()) return it->second;
  }
  const auto verts = polyhedron_vertices(*base_, b);
  const std::int64_t phi_max = to_int64(floor_of(verts.phi_max)) + base_->parallelotope_bound();
  std::vector<LatticePoint> minimal;
  for (const auto& x : polyhedron_points(b, phi_max)) {
    const bool dominated =
        std::any_of(minimal.begin(), minimal.end(), [&](const LatticePoint& y) { return base_->member(x - y); });
    if (!dominated) minimal.push_back(x);
  }
  std::lock_guard lock(cache_->guard);
  cache_->minimal.emplace(b, minimal);
  return minimal;
}

std::vector<Weight> WeightMonoid::minimal_elements(const CharacterClass& c) const {
  const auto v = class_in_image(c);
  if (v == MembershipVerdict::Incomplete) throw_class_incomplete(c.representative(), radius_);
  if (v == MembershipVerdict::NotMember) return {};
  std::vector<Weight> out;
  for (const auto& x : minimal_points(cone_bounds(c.representative()))) out.push_back(c.representative() + x);
  return out;
}

std::vector<LatticePoint> WeightMonoid::maximal_below(const Weight& w) const {
  const CharacterClass c(w);
  const LatticePoint base_point = w.floor();
  std::vector<LatticePoint> out;
  for (const auto& mu : minimal_elements(c)) out.push_back(base_point - (mu - c.representative()).floor());
  return out;
}

WindowStream WeightMonoid::enumerate_window(const WeightFieldElement& bound) const { return WindowStream(*this, bound); }

std::string WeightMonoid::describe() const {
  if (kind_ == Kind::Fraction) return "(1/" + std::to_string(n_) + ")P";
  std::string out = "sat(P";
  for (const auto& g : extra_) out += ", " + g.str();
  return out + ")";
}

WindowStream::WindowStream(WeightMonoid lambda, WeightFieldElement bound, int max_level)
    : lambda_(std::move(lambda)), bound_(std::move(bound)), max_level_(max_level) {}

std::vector<Weight> WindowStream::coset_window(const Weight& rep) const {
  const WeightFieldElement room = bound_ - lambda_.base().phi(rep.coords);
  if (room.sign() < 0) return {};
  std::vector<Weight> out;
  for (const auto& x : lambda_.polyhedron_points(lambda_.cone_bounds(rep), to_int64(room.floor())))
    out.push_back(rep + x);
  return out;
}

namespace {

void sort_by_phi_then_lex(std::vector<Weight>& ws, const ToricMonoid& p) {
  std::vector<std::pair<WeightFieldElement, Weight>> keyed;
  for (auto& w : ws) keyed.emplace_back(p.phi(w.coords), std::move(w));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    const int s = (a.first - b.first).sign();
    if (s != 0) return s < 0;
    return numeric_lex_less(a.second, b.second);
  });
  ws.clear();
  for (auto& [k, w] : keyed) ws.push_back(std::move(w));
}

// All vectors of nonnegative integers of the given length summing to total.
void for_each_composition(std::size_t parts, int total, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur(parts, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == parts) {
      cur[i] = left;
      visit(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (parts > 0) rec(0, total);
}

}  // namespace

std::vector<Weight> WeightMonoid::classes_at_level(int level) const {
  const int r = rank();
  std::vector<Weight> out;
  if (is_rational()) {
    if (level > 0) return out;
    if (kind_ == Kind::Fraction) {
      for_each_box_point(LatticePoint(static_cast<std::size_t>(r), 0), LatticePoint(static_cast<std::size_t>(r), n_ - 1),
                         [&](const LatticePoint& k) {
                           Weight c;
                           for (auto x : k) c.coords.emplace_back(Rational(x, n_));
                           out.push_back(std::move(c));
                         });
      return out;
    }
    return sat_->rational_classes;
  }
  std::set<Weight, WeightKeyLess> lower;
  for (int l = 0; l < level; ++l)
    for (auto& c : classes_at_level(l)) lower.insert(std::move(c));
  std::set<Weight, WeightKeyLess> seen;
  const auto& data = *sat_;
  for_each_composition(data.irrational.size(), level, [&](const std::vector<int>& counts) {
    Weight s = Weight::zero(r);
    for (std::size_t j = 0; j < counts.size(); ++j)
      for (std::size_t i = 0; i < s.coords.size(); ++i)
        s.coords[i] += WeightFieldElement(Rational(counts[j])) * data.irrational[j].coords[i];
    for (const auto& h : data.rational_classes) {
      Weight rep = (s + h).frac();
      if (lower.count(rep) || !seen.insert(rep).second) continue;
      out.push_back(std::move(rep));
    }
  });
  return out;
}

void WindowStream::fill_level() {
  std::vector<Weight> found;
  for (const auto& c : lambda_.classes_at_level(level_))
    for (auto& w : coset_window(c)) found.push_back(std::move(w));
  if (lambda_.is_rational()) finite_done_ = true;
  ++level_;
  sort_by_phi_then_lex(found, lambda_.base());
  for (auto& w : found) pending_.push_back(std::move(w));
}

std::optional<Weight> WindowStream::next() {
  while (pending_.empty()) {
    if (finite_done_ || level_ > max_level_) return std::nullopt;
    fill_level();
  }
  Weight w = std::move(pending_.front());
  pending_.pop_front();
  return w;
}

std::vector<Weight> WindowStream::take(std::size_t count) {
  std::vector<Weight> out;
  while (out.size() < count) {
    auto w = next();
    if (!w) break;
    out.push_back(std::move(*w));
  }
  return out;
}

std::vector<Weight> WindowStream::collect(int up_to_level) {
  std::vector<Weight> out;
  for (;;) {
    while (!pending_.empty()) {
      out.push_back(std::move(pending_.front()));
      pending_.pop_front();
    }
    if (finite_done_ || level_ > up_to_level || level_ > max_level_) break;
    fill_level();
  }
  return out;
}

FineWeightSystem::FineWeightSystem(WeightMonoid lambda, const std::vector<Weight>& reps) : lambda_(std::move(lambda)) {
  std::set<Weight, WeightKeyLess> seen;
  for (const auto& w : reps) {
    if (w.rank() != lambda_.rank()) throw RankMismatch("representative has the wrong dimension");
    const CharacterClass c(w);
    const auto v = lambda_.class_in_group(c);
    if (v == MembershipVerdict::NotMember) throw InputError("representative " + w.str() + " is not in the group of Lambda");
    if (v == MembershipVerdict::Incomplete) throw_class_incomplete(w, lambda_.search_radius());
    if (seen.insert(c.representative()).second) reps_.push_back(c.representative());
  }
}

std::optional<std::size_t> FineWeightSystem::index_of(const Weight& w) const {
  const CharacterClass c(w);
  for (std::size_t i = 0; i < reps_.size(); ++i)
    if (reps_[i] == c.representative()) return i;
  return std::nullopt;
}

}  // namespace logpar

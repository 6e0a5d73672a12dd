#pragma once

#include "logpar/monoid.hpp"
#include "logpar/weightfield.hpp"

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace logpar {

// A point of P^gp (x) R in the basis p_1..p_r.
struct Weight {
  std::vector<WeightFieldElement> coords;

  static Weight zero(int rank);
  static Weight from_lattice(const LatticePoint& p);

  int rank() const { return static_cast<int>(coords.size()); }
  bool is_rational() const;
  bool is_zero() const;

  Weight operator-() const;
  friend Weight operator+(const Weight& a, const Weight& b);
  friend Weight operator-(const Weight& a, const Weight& b);
  friend Weight operator+(const Weight& a, const LatticePoint& p);
  friend Weight operator-(const Weight& a, const LatticePoint& p);
  friend bool operator==(const Weight& a, const Weight& b) { return a.coords == b.coords; }
  friend bool operator!=(const Weight& a, const Weight& b) { return !(a == b); }

  // Integral part and fractional part, coordinatewise.
  LatticePoint floor() const;
  Weight frac() const;

  std::string str() const;
};

// Cheap total order for containers.
struct WeightKeyLess {
  bool operator()(const Weight& a, const Weight& b) const;
};
// Numeric lexicographic order on coordinates.
bool numeric_lex_less(const Weight& a, const Weight& b);

// A weight modulo P^gp, represented with every coordinate in [0,1).
class CharacterClass {
 public:
  CharacterClass() = default;
  explicit CharacterClass(const Weight& w) : rep_(w.frac()) {}
  const Weight& representative() const { return rep_; }
  friend bool operator==(const CharacterClass& a, const CharacterClass& b) { return a.rep_ == b.rep_; }
  friend bool operator<(const CharacterClass& a, const CharacterClass& b) { return WeightKeyLess{}(a.rep_, b.rep_); }

 private:
  Weight rep_;
};

enum class MembershipVerdict { Member, NotMember, Incomplete };

class WindowStream;

// Lambda with P inside Lambda inside P_R, saturated for P^gp. Either (1/n)P or the
// saturation of P together with extra generators in P_R.
class WeightMonoid {
 public:
  enum class Kind { Fraction, Saturated };

  static WeightMonoid fraction(std::shared_ptr<const ToricMonoid> base, int n);
  static WeightMonoid saturated(std::shared_ptr<const ToricMonoid> base, std::vector<Weight> extra,
                                int search_radius = 4);

  Kind kind() const { return kind_; }
  int fraction_order() const { return n_; }
  const std::vector<Weight>& extra_generators() const { return extra_; }
  int search_radius() const { return radius_; }
  const ToricMonoid& base() const { return *base_; }
  const std::shared_ptr<const ToricMonoid>& base_ptr() const { return base_; }
  int rank() const { return base_->rank(); }
  // True when every element of Lambda has rational coordinates.
  bool is_rational() const;

  // Is the class in the image of Lambda, resp. of Lambda^gp, in P_R / P^gp?
  MembershipVerdict class_in_image(const CharacterClass& c) const;
  MembershipVerdict class_in_group(const CharacterClass& c) const;

  MembershipVerdict lambda_member(const Weight& w) const;
  // As lambda_member, throwing Incomplete instead of returning it.
  bool in_lambda(const Weight& w) const;
  bool leq(const Weight& lower, const Weight& upper) const;

  // Minimal lattice points of {x : n_f . x >= b_f} in the P-order, sorted by (phi, lex).
  std::vector<LatticePoint> minimal_points(const std::vector<std::int64_t>& facet_bounds) const;
  // Lattice points of the same polyhedron with phi(x) <= phi_max, sorted by (phi, lex).
  std::vector<LatticePoint> polyhedron_points(const std::vector<std::int64_t>& facet_bounds,
                                              std::int64_t phi_max) const;
  // Facet bounds b_f = ceil(-n_f . w): x satisfies them iff w + x lies in P_R.
  std::vector<std::int64_t> cone_bounds(const Weight& w) const;

  // Minimal elements of Lambda in the class, sorted by (phi, lex); empty if the class is not in the image.
  std::vector<Weight> minimal_elements(const CharacterClass& c) const;
  // All p in P^gp with w - p in Lambda and maximal for the P-order.
  std::vector<LatticePoint> maximal_below(const Weight& w) const;

  WindowStream enumerate_window(const WeightFieldElement& bound) const;

  // Classes of Lambda first reached with exactly `level` irrational generators,
  // as canonical representatives. Rational kinds have every class at level 0.
  std::vector<Weight> classes_at_level(int level) const;

  std::string describe() const;

 private:
  struct Cache;
  struct SaturatedData {
    std::vector<Weight> irrational;
    std::vector<Weight> rational_classes;  // finite group generated by the rational generators
    std::set<Weight, WeightKeyLess> rational_group;
    Mat<Rational> irrational_matrix;  // rows: (coordinate, alpha power); columns: irrational generators
    bool full_rank = true;
  };

  MembershipVerdict class_verdict(const CharacterClass& c, bool allow_negative) const;
  std::vector<Rational> irrational_vector(const Weight& w) const;

  friend class WindowStream;

  Kind kind_ = Kind::Fraction;
  int n_ = 1;
  int radius_ = 4;
  std::shared_ptr<const ToricMonoid> base_;
  std::vector<Weight> extra_;
  std::shared_ptr<const SaturatedData> sat_;
  std::shared_ptr<Cache> cache_;
};

// Elements of Lambda with phi <= bound. Finite kinds come sorted by (phi, lex);
// irrational kinds stream level by level (total count of irrational generators),
// each level sorted by (phi, lex).
class WindowStream {
 public:
  WindowStream(WeightMonoid lambda, WeightFieldElement bound, int max_level = 100000);
  std::optional<Weight> next();
  std::vector<Weight> take(std::size_t count);
  // Drains a finite stream; for irrational kinds stops after the given level.
  std::vector<Weight> collect(int up_to_level);

 private:
  void fill_level();
  std::vector<Weight> coset_window(const Weight& class_rep) const;

  WeightMonoid lambda_;
  WeightFieldElement bound_;
  int max_level_;
  int level_ = 0;
  bool finite_done_ = false;
  std::deque<Weight> pending_;
};

// Finitely many P^gp-orbits of weights, each kept by its canonical class representative.
class FineWeightSystem {
 public:
  FineWeightSystem(WeightMonoid lambda, const std::vector<Weight>& reps);

  const WeightMonoid& lambda() const { return lambda_; }
  const std::vector<Weight>& representatives() const { return reps_; }
  std::size_t size() const { return reps_.size(); }
  // Index of the representative in the class of w, if any.
  std::optional<std::size_t> index_of(const Weight& w) const;

 private:
  WeightMonoid lambda_;
  std::vector<Weight> reps_;
};

}  // namespace logpar

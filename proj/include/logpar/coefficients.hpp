#pragma once

// The coefficient ring A = Q[e]/(e^m) and finitely presented A-modules.
// m = 1 gives A = Q. Every module question is answered over Q after
// restriction of scalars along Q -> A, using the basis 1, e, ..., e^{m-1}.

#include "logpar/linalg.hpp"
#include "logpar/rational.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace logpar {

// An element of Q[e]/(e^m), stored as its m coefficients.
class AElem {
 public:
  AElem() = default;
  explicit AElem(int order) : c_(static_cast<std::size_t>(order)) {}
  AElem(int order, const Rational& constant);

  static AElem epsilon_power(int order, int k);

  int order() const { return static_cast<int>(c_.size()); }
  const Rational& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  Rational& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  bool is_zero() const;
  bool is_unit() const { return !c_.empty() && c_[0] != 0; }
  AElem inverse() const;

  AElem operator-() const;
  AElem& operator+=(const AElem& o);
  AElem& operator-=(const AElem& o);
  friend AElem operator+(AElem a, const AElem& b) { return a += b; }
  friend AElem operator-(AElem a, const AElem& b) { return a -= b; }
  friend AElem operator*(const AElem& a, const AElem& b);
  friend bool operator==(const AElem& a, const AElem& b) { return a.c_ == b.c_; }
  friend bool operator!=(const AElem& a, const AElem& b) { return !(a == b); }

  // "2+3e", "-e^2", "1/2".
  std::string str() const;

 private:
  std::vector<Rational> c_;
};

AElem parse_aelem(std::string_view text, int order);

class CoefficientRing {
 public:
  explicit CoefficientRing(int nilpotency = 1);

  int order() const { return order_; }
  AElem zero() const { return AElem(order_); }
  AElem one() const { return AElem(order_, Rational(1)); }
  AElem constant(const Rational& q) const { return AElem(order_, q); }
  // e^k, which is zero once k >= m.
  AElem epsilon_power(std::int64_t k) const;
  std::string describe() const;

 private:
  int order_;
};

// Dense matrix over A.
class AMatrix {
 public:
  AMatrix() = default;
  AMatrix(int order, Index rows, Index cols);
  static AMatrix identity(int order, Index n);

  int order() const { return order_; }
  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  AElem& operator()(Index i, Index j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const AElem& operator()(Index i, Index j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  bool is_zero() const;
  AMatrix column(Index j) const;

  friend AMatrix operator*(const AMatrix& a, const AMatrix& b);
  friend AMatrix operator+(const AMatrix& a, const AMatrix& b);
  friend AMatrix operator-(const AMatrix& a, const AMatrix& b);
  friend AMatrix operator*(const AElem& s, const AMatrix& m);
  friend bool operator==(const AMatrix& a, const AMatrix& b) = default;

  // (rows*m) x (cols*m) rational matrix of the underlying Q-linear map.
  Mat<Rational> restrict_scalars() const;
  // The same matrix column by column, keeping only nonzero entries.
  std::vector<SpanReducer<Rational>::Sparse> scalar_columns() const;

 private:
  int order_ = 1;
  Index rows_ = 0, cols_ = 0;
  std::vector<AElem> data_;
};

AMatrix hcat(const AMatrix& a, const AMatrix& b);
AMatrix vcat(const AMatrix& a, const AMatrix& b);
AMatrix block_diagonal(const AMatrix& a, const AMatrix& b);
AMatrix kronecker(const AMatrix& a, const AMatrix& b);

// Assembles a matrix column by column from sparse entries.
class ColumnBuilder {
 public:
  ColumnBuilder(int order, Index rows) : order_(order), rows_(rows) {}
  void begin_column() { columns_.emplace_back(); }
  // Adds into the current column.
  void add(Index row, const AElem& value);
  // Removes the current column if every entry vanished.
  void drop_if_zero();
  Index columns() const { return static_cast<Index>(columns_.size()); }
  AMatrix build() const;

 private:
  int order_;
  Index rows_;
  std::vector<std::vector<std::pair<Index, AElem>>> columns_;
};

// Coordinates of A^n over Q turned back into an A-column: entry i collects
// coordinates i*m .. i*m+m-1.
AMatrix from_scalar_column(int order, const Mat<Rational>& column);

// Cokernel of the relation matrix: A^generators / (column span).
class FGModule {
 public:
  FGModule() = default;
  explicit FGModule(AMatrix relations);
  static FGModule free(int order, Index generators);

  int order() const { return relations_.order(); }
  Index generators() const { return relations_.rows(); }
  const AMatrix& relations() const { return relations_; }

  Index dimension() const;  // over Q
  bool is_zero() const { return dimension() == 0; }
  // dim_Q(e^k M) for k = 0..m; these numbers determine M up to isomorphism.
  std::vector<Index> invariants() const;
  // Shape as a sum of cyclic modules, e.g. "A^2 + A/(e)"; "0" for the zero module.
  std::string describe() const;

  // Q-span of the relations inside Q^{generators*m}.
  Mat<Rational> relation_span() const { return relations_.restrict_scalars(); }
  const SpanReducer<Rational>& reducer() const { return *reducer_; }
  Index relation_rank() const { return reducer_->rank(); }

 private:
  AMatrix relations_;
  std::shared_ptr<const SpanReducer<Rational>> reducer_ = std::make_shared<const SpanReducer<Rational>>();
};

FGModule direct_sum(const FGModule& a, const FGModule& b);
FGModule tensor(const FGModule& a, const FGModule& b);
// Target modulo the image of a map into it.
FGModule cokernel(const FGModule& target, const AMatrix& map);

// Homomorphisms between presented modules are matrices on generators.
bool is_homomorphism(const FGModule& source, const FGModule& target, const AMatrix& map);
bool maps_agree(const FGModule& target, const AMatrix& a, const AMatrix& b);
bool is_zero_map(const FGModule& target, const AMatrix& map);
Index kernel_dimension(const FGModule& source, const FGModule& target, const AMatrix& map);
Index image_dimension(const FGModule& source, const FGModule& target, const AMatrix& map);
bool is_isomorphism(const FGModule& source, const FGModule& target, const AMatrix& map);
// True when the columns of the map lie in the A-span of the target relations
// together with the given extra columns.
bool in_span(const FGModule& target, const AMatrix& extra, const AMatrix& vectors);

// Exactness of M' -> M -> M'' at M, plus injectivity / surjectivity flags.
struct ExactnessReport {
  bool composite_zero = false;
  bool injective_left = false;
  bool exact_middle = false;
  bool surjective_right = false;
  Index dim_left = 0, dim_middle = 0, dim_right = 0;
  bool short_exact() const { return composite_zero && injective_left && exact_middle && surjective_right; }
};
ExactnessReport check_short_exact(const FGModule& left, const FGModule& middle, const FGModule& right,
                                  const AMatrix& into, const AMatrix& onto);

}  // namespace logpar

#pragma once

// Exact Gaussian elimination over any field scalar S providing S(0), S(1),
// ==, +, -, *, /. Pivot choice is steered by pivot_cost to limit growth.

#include "logpar/rational.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace logpar {

template <class S>
int pivot_cost(const S&) {
  return 0;
}

inline int pivot_cost(const Rational& q) {
  return static_cast<int>(msb(abs(numerator(q)) + 1) + msb(denominator(q)));
}

template <class S>
struct Echelon {
  Mat<S> matrix;
  std::vector<Index> pivot_columns;
};

template <class S>
Echelon<S> row_echelon(Mat<S> m, bool reduced) {
  const S zero(0);
  std::vector<Index> pivots, support;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index best = -1;
    int best_cost = 0;
    for (Index i = row; i < m.rows(); ++i) {
      if (m(i, col) == zero) continue;
      const int cost = pivot_cost(m(i, col));
      if (best < 0 || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best < 0) continue;
    if (best != row) m.row(best).swap(m.row(row));
    const S inv = S(1) / m(row, col);
    support.clear();
    for (Index j = col; j < m.cols(); ++j)
      if (!(m(row, j) == zero)) {
        m(row, j) = m(row, j) * inv;
        support.push_back(j);
      }
    const Index first = reduced ? 0 : row + 1;
    for (Index i = first; i < m.rows(); ++i) {
      if (i == row || m(i, col) == zero) continue;
      const S factor = m(i, col);
      for (Index j : support) m(i, j) = m(i, j) - factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <class S>
Index rank(const Mat<S>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<Index>(row_echelon<S>(m, false).pivot_columns.size());
}

// Columns spanning {x : m x = 0}.
template <class S>
Mat<S> kernel_basis(const Mat<S>& m) {
  const Index n = m.cols();
  if (m.rows() == 0) return Mat<S>::Identity(n, n);
  const auto e = row_echelon<S>(m, true);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : e.pivot_columns) is_pivot[static_cast<std::size_t>(c)] = true;
  const Index nfree = n - static_cast<Index>(e.pivot_columns.size());
  Mat<S> basis = Mat<S>::Zero(n, nfree);
  Index k = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = S(1);
    for (std::size_t p = 0; p < e.pivot_columns.size(); ++p)
      basis(e.pivot_columns[p], k) = S(0) - e.matrix(static_cast<Index>(p), f);
    ++k;
  }
  return basis;
}

template <class S>
Mat<S> hcat(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

template <class S>
Mat<S> vcat(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() + b.rows(), a.cols());
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

// Some x with a x = b, if one exists.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& a, const Mat<S>& b) {
  const Index n = a.cols();
  Mat<S> x = Mat<S>::Zero(n, b.cols());
  if (b.cols() == 0) return x;
  if (a.rows() == 0) return x;
  const auto e = row_echelon<S>(hcat(a, b), true);
  for (std::size_t p = 0; p < e.pivot_columns.size(); ++p) {
    const Index c = e.pivot_columns[p];
    if (c >= n) return std::nullopt;
    x.row(c) = e.matrix.row(static_cast<Index>(p)).tail(b.cols());
  }
  return x;
}

// True when every column of b lies in the column span of a.
template <class S>
bool in_column_span(const Mat<S>& a, const Mat<S>& b) {
  if (b.cols() == 0) return true;
  if (a.cols() == 0) return rank(b) == 0;
  return rank(hcat(a, b)) == rank(a);
}

// Column span of a matrix, kept as sparse echelon vectors: vector k has a 1
// at its pivot row and nothing above it. Membership and ranks against the
// span then need no new elimination of the span itself.
template <class S>
class SpanReducer {
 public:
  using Sparse = std::vector<std::pair<Index, S>>;

  SpanReducer() = default;
  explicit SpanReducer(const Mat<S>& span) : SpanReducer(span.rows(), sparse_columns(span)) {}
  SpanReducer(Index rows, const std::vector<Sparse>& columns)
      : rows_(rows), pivot_of_(static_cast<std::size_t>(rows), -1) {
    const S zero(0);
    std::vector<S> work(static_cast<std::size_t>(rows_), zero);
    for (const auto& column : columns) {
      std::fill(work.begin(), work.end(), zero);
      for (const auto& [i, x] : column) work[static_cast<std::size_t>(i)] = x;
      reduce(work);
      Index lead = 0;
      while (lead < rows_ && work[static_cast<std::size_t>(lead)] == zero) ++lead;
      if (lead == rows_) continue;
      const S inv = S(1) / work[static_cast<std::size_t>(lead)];
      std::vector<std::pair<Index, S>> vec;
      for (Index i = lead; i < rows_; ++i)
        if (!(work[static_cast<std::size_t>(i)] == zero)) vec.emplace_back(i, work[static_cast<std::size_t>(i)] * inv);
      pivot_of_[static_cast<std::size_t>(lead)] = static_cast<Index>(basis_.size());
      basis_.push_back(std::move(vec));
    }
    free_index_.assign(static_cast<std::size_t>(rows_), -1);
    for (Index i = 0; i < rows_; ++i)
      if (pivot_of_[static_cast<std::size_t>(i)] < 0) free_index_[static_cast<std::size_t>(i)] = free_rows_++;
  }

  Index rows() const { return rows_; }
  Index rank() const { return static_cast<Index>(basis_.size()); }

  // Coordinates of each column modulo the span, on the non-pivot rows.
  Mat<S> residual(const Mat<S>& v) const { return residual(sparse_columns(v)); }
  Mat<S> residual(const std::vector<Sparse>& columns) const {
    const S zero(0);
    Mat<S> out = Mat<S>::Zero(free_rows_, static_cast<Index>(columns.size()));
    std::vector<S> work(static_cast<std::size_t>(rows_), zero);
    for (std::size_t j = 0; j < columns.size(); ++j) {
      std::fill(work.begin(), work.end(), zero);
      for (const auto& [i, x] : columns[j]) work[static_cast<std::size_t>(i)] = x;
      reduce(work);
      for (Index i = 0; i < rows_; ++i) {
        const Index f = free_index_[static_cast<std::size_t>(i)];
        if (f >= 0 && !(work[static_cast<std::size_t>(i)] == zero)) out(f, static_cast<Index>(j)) = work[static_cast<std::size_t>(i)];
      }
    }
    return out;
  }

  static std::vector<Sparse> sparse_columns(const Mat<S>& m) {
    const S zero(0);
    std::vector<Sparse> out(static_cast<std::size_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (!(m(i, j) == zero)) out[static_cast<std::size_t>(j)].emplace_back(i, m(i, j));
    return out;
  }

  bool contains(const Mat<S>& v) const { return contains(sparse_columns(v)); }
  bool contains(const std::vector<Sparse>& columns) const {
    const Mat<S> r = residual(columns);
    const S zero(0);
    for (Index j = 0; j < r.cols(); ++j)
      for (Index i = 0; i < r.rows(); ++i)
        if (!(r(i, j) == zero)) return false;
    return true;
  }

  // Rank of the span together with the columns of v.
  Index rank_with(const Mat<S>& v) const { return rank() + logpar::rank(residual(v)); }
  Index rank_with(const std::vector<Sparse>& columns) const { return rank() + logpar::rank(residual(columns)); }

 private:
  // Clears every pivot row of w, sweeping down so that later pivots see the
  // fill-in of earlier ones.
  void reduce(std::vector<S>& w) const {
    const S zero(0);
    for (Index i = 0; i < rows_; ++i) {
      const Index k = pivot_of_[static_cast<std::size_t>(i)];
      if (k < 0 || w[static_cast<std::size_t>(i)] == zero) continue;
      const S c = w[static_cast<std::size_t>(i)];
      for (const auto& [r, x] : basis_[static_cast<std::size_t>(k)])
        w[static_cast<std::size_t>(r)] = w[static_cast<std::size_t>(r)] - c * x;
    }
  }

  Index rows_ = 0;
  Index free_rows_ = 0;
  std::vector<Index> pivot_of_;  // -1 on rows without a pivot
  std::vector<Index> free_index_;  // -1 on pivot rows
  std::vector<std::vector<std::pair<Index, S>>> basis_;
};

}  // namespace logpar

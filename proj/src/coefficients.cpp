#include "logpar/coefficients.hpp"

#include "logpar/errors.hpp"
#include "logpar/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace logpar {

AElem::AElem(int order, const Rational& constant) : c_(static_cast<std::size_t>(order)) {
  if (order > 0) c_[0] = constant;
}

AElem AElem::epsilon_power(int order, int k) {
  AElem out(order);
  if (k >= 0 && k < order) out[k] = 1;
  return out;
}

bool AElem::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

AElem AElem::inverse() const {
  if (!is_unit()) throw std::domain_error("inverting a non-unit of Q[e]/(e^m)");
  // Solve a * b = 1 coefficient by coefficient.
  const int m = order();
  AElem b(m);
  b[0] = Rational(1) / c_[0];
  for (int k = 1; k < m; ++k) {
    Rational s = 0;
    for (int j = 1; j <= k; ++j) s += c_[static_cast<std::size_t>(j)] * b[k - j];
    b[k] = -s * b[0];
  }
  return b;
}

AElem AElem::operator-() const {
  AElem out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

AElem& AElem::operator+=(const AElem& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

AElem& AElem::operator-=(const AElem& o) {
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

AElem operator*(const AElem& a, const AElem& b) {
  const std::size_t m = a.c_.size();
  AElem out(static_cast<int>(m));
  for (std::size_t i = 0; i < m; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < m; ++j)
      if (b.c_[j] != 0) out.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return out;
}

std::string AElem::str() const {
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& x = c_[k];
    if (x == 0) continue;
    std::string coeff = to_string(abs(x));
    std::string term;
    if (k == 0) term = coeff;
    else {
      term = coeff == "1" ? "" : coeff + (coeff.find('/') == std::string::npos ? "" : "*");
      term += k == 1 ? "e" : "e^" + std::to_string(k);
    }
    if (out.empty()) out = (x < 0 ? "-" : "") + term;
    else out += (x < 0 ? "-" : "+") + term;
  }
  return out.empty() ? "0" : out;
}

AElem parse_aelem(std::string_view text, int order) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("empty coefficient");
  AElem out(order);
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (term.empty()) throw InputError("malformed coefficient '" + std::string(text) + "'");
    Rational coeff = 1;
    int power = 0;
    const auto e = term.find('e');
    if (e == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      std::string head = term.substr(0, e);
      if (!head.empty() && head.back() == '*') head.pop_back();
      if (!head.empty()) coeff = parse_rational(head);
      const std::string tail = term.substr(e + 1);
      if (tail.empty()) power = 1;
      else if (tail.size() > 1 && tail.size() < 8 && tail[0] == '^' &&
               std::all_of(tail.begin() + 1, tail.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        power = std::stoi(tail.substr(1));
      else throw InputError("malformed coefficient '" + std::string(text) + "'");
    }
    if (power < order) out[power] += negative ? -coeff : coeff;
    i = j;
  }
  return out;
}

CoefficientRing::CoefficientRing(int nilpotency) : order_(nilpotency) {
  if (nilpotency < 1) throw InputError("nilpotency order must be at least 1");
}

AElem CoefficientRing::epsilon_power(std::int64_t k) const {
  return AElem::epsilon_power(order_, k < order_ ? static_cast<int>(k) : order_);
}

std::string CoefficientRing::describe() const {
  if (order_ == 1) return "Q";
  return order_ == 2 ? "Q[e]/(e^2)" : "Q[e]/(e^" + std::to_string(order_) + ")";
}

AMatrix::AMatrix(int order, Index rows, Index cols)
    : order_(order), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), AElem(order)) {}

AMatrix AMatrix::identity(int order, Index n) {
  AMatrix out(order, n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = AElem(order, Rational(1));
  return out;
}

bool AMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

AMatrix AMatrix::column(Index j) const {
  AMatrix out(order_, rows_, 1);
  for (Index i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, j);
  return out;
}

AMatrix operator*(const AMatrix& a, const AMatrix& b) {
  if (a.cols_ != b.rows_) throw std::logic_error("AMatrix product shape mismatch");
  AMatrix out(a.order_, a.rows_, b.cols_);
  for (Index i = 0; i < a.rows_; ++i)
    for (Index k = 0; k < a.cols_; ++k) {
      const AElem& x = a(i, k);
      if (x.is_zero()) continue;
      for (Index j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
    }
  return out;
}

AMatrix operator+(const AMatrix& a, const AMatrix& b) {
  AMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

AMatrix operator-(const AMatrix& a, const AMatrix& b) {
  AMatrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

AMatrix operator*(const AElem& s, const AMatrix& m) {
  AMatrix out = m;
  for (auto& x : out.data_) x = s * x;
  return out;
}

std::vector<SpanReducer<Rational>::Sparse> AMatrix::scalar_columns() const {
  const Index m = order_;
  std::vector<SpanReducer<Rational>::Sparse> out(static_cast<std::size_t>(cols_ * m));
  for (Index j = 0; j < cols_; ++j)
    for (Index i = 0; i < rows_; ++i) {
      const AElem& a = (*this)(i, j);
      if (a.is_zero()) continue;
      for (Index l = 0; l < m; ++l)
        for (Index k = l; k < m; ++k) {
          const Rational& x = a[static_cast<int>(k - l)];
          if (x != 0) out[static_cast<std::size_t>(j * m + l)].emplace_back(i * m + k, x);
        }
    }
  return out;
}

Mat<Rational> AMatrix::restrict_scalars() const {
  const Index m = order_;
  Mat<Rational> out = Mat<Rational>::Zero(rows_ * m, cols_ * m);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) {
      const AElem& a = (*this)(i, j);
      if (a.is_zero()) continue;
      // Multiplication by a on the basis 1, e, ..., e^{m-1}.
      for (Index l = 0; l < m; ++l)
        for (Index k = l; k < m; ++k) {
          const Rational& x = a[static_cast<int>(k - l)];
          if (x != 0) out(i * m + k, j * m + l) = x;
        }
    }
  return out;
}

AMatrix hcat(const AMatrix& a, const AMatrix& b) {
  AMatrix out(a.order(), a.rows(), a.cols() + b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (Index j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

AMatrix vcat(const AMatrix& a, const AMatrix& b) {
  AMatrix out(a.order(), a.rows() + b.rows(), a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) out(i, j) = a(i, j);
    for (Index i = 0; i < b.rows(); ++i) out(a.rows() + i, j) = b(i, j);
  }
  return out;
}

AMatrix block_diagonal(const AMatrix& a, const AMatrix& b) {
  AMatrix out(a.order(), a.rows() + b.rows(), a.cols() + b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

AMatrix kronecker(const AMatrix& a, const AMatrix& b) {
  AMatrix out(a.order(), a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

void ColumnBuilder::add(Index row, const AElem& value) {
  if (value.is_zero()) return;
  for (auto& [r, v] : columns_.back())
    if (r == row) {
      v += value;
      return;
    }
  columns_.back().emplace_back(row, value);
}

void ColumnBuilder::drop_if_zero() {
  for (const auto& [r, v] : columns_.back())
    if (!v.is_zero()) return;
  columns_.pop_back();
}

AMatrix ColumnBuilder::build() const {
  AMatrix out(order_, rows_, static_cast<Index>(columns_.size()));
  for (std::size_t j = 0; j < columns_.size(); ++j)
    for (const auto& [r, v] : columns_[j]) out(r, static_cast<Index>(j)) += v;
  return out;
}

AMatrix from_scalar_column(int order, const Mat<Rational>& column) {
  const Index n = column.rows() / order;
  AMatrix out(order, n, 1);
  for (Index i = 0; i < n; ++i)
    for (int k = 0; k < order; ++k) out(i, 0)[k] = column(i * order + k, 0);
  return out;
}

FGModule::FGModule(AMatrix relations)
    : relations_(std::move(relations)),
      reducer_(std::make_shared<const SpanReducer<Rational>>(relations_.rows() * relations_.order(),
                                                             relations_.scalar_columns())) {}

FGModule FGModule::free(int order, Index generators) { return FGModule(AMatrix(order, generators, 0)); }

Index FGModule::dimension() const { return generators() * order() - relation_rank(); }

std::vector<Index> FGModule::invariants() const {
  std::vector<Index> out;
  const Index r = relation_rank();
  for (int k = 0; k <= order(); ++k) {
    // e^k times each basis vector e^j g_i of the free module.
    std::vector<SpanReducer<Rational>::Sparse> powers;
    for (Index i = 0; i < generators(); ++i)
      for (int j = 0; j + k < order(); ++j) powers.push_back({{i * order() + j + k, Rational(1)}});
    out.push_back(reducer_->rank_with(powers) - r);
  }
  return out;
}

std::string FGModule::describe() const {
  const auto d = invariants();
  const int m = order();
  // Summands of length > k number d_k - d_{k+1}.
  std::vector<Index> longer;
  for (int k = 0; k < m; ++k) longer.push_back(d[static_cast<std::size_t>(k)] - d[static_cast<std::size_t>(k + 1)]);
  std::string out;
  for (int len = m; len >= 1; --len) {
    const Index count = longer[static_cast<std::size_t>(len - 1)] - (len < m ? longer[static_cast<std::size_t>(len)] : 0);
    if (count == 0) continue;
    std::string part = len == m ? "A" : (len == 1 ? "A/(e)" : "A/(e^" + std::to_string(len) + ")");
    if (count > 1) part += "^" + std::to_string(count);
    out += (out.empty() ? "" : " + ") + part;
  }
  return out.empty() ? "0" : out;
}

FGModule direct_sum(const FGModule& a, const FGModule& b) {
  return FGModule(block_diagonal(a.relations(), b.relations()));
}

FGModule tensor(const FGModule& a, const FGModule& b) {
  const int m = a.order();
  return FGModule(hcat(kronecker(a.relations(), AMatrix::identity(m, b.generators())),
                       kronecker(AMatrix::identity(m, a.generators()), b.relations())));
}

FGModule cokernel(const FGModule& target, const AMatrix& map) { return FGModule(hcat(target.relations(), map)); }

bool is_homomorphism(const FGModule& source, const FGModule& target, const AMatrix& map) {
  if (map.rows() != target.generators() || map.cols() != source.generators())
    throw std::logic_error("module map has the wrong shape");
  return target.reducer().contains((map * source.relations()).scalar_columns());
}

bool maps_agree(const FGModule& target, const AMatrix& a, const AMatrix& b) { return is_zero_map(target, a - b); }

bool is_zero_map(const FGModule& target, const AMatrix& map) {
  return target.reducer().contains(map.scalar_columns());
}

Index kernel_dimension(const FGModule& source, const FGModule& target, const AMatrix& map) {
  // dim {x : map x in S} = n - rank[map | S] + rank S, then divide out the source relations.
  const auto x = map.scalar_columns();
  const Index n = static_cast<Index>(x.size());
  const Index rank_s = target.relation_rank();
  const Index rank_xs = target.reducer().rank_with(x);
  return n - rank_xs + rank_s - source.relation_rank();
}

Index image_dimension(const FGModule& source, const FGModule& target, const AMatrix& map) {
  return source.dimension() - kernel_dimension(source, target, map);
}

bool is_isomorphism(const FGModule& source, const FGModule& target, const AMatrix& map) {
  if (!is_homomorphism(source, target, map)) return false;
  return kernel_dimension(source, target, map) == 0 && image_dimension(source, target, map) == target.dimension();
}

bool in_span(const FGModule& target, const AMatrix& extra, const AMatrix& vectors) {
  const Mat<Rational> base = logpar::hcat(target.relation_span(), extra.restrict_scalars());
  return in_column_span(base, vectors.restrict_scalars());
}

ExactnessReport check_short_exact(const FGModule& left, const FGModule& middle, const FGModule& right,
                                  const AMatrix& into, const AMatrix& onto) {
  ExactnessReport rep;
  rep.dim_left = left.dimension();
  rep.dim_middle = middle.dimension();
  rep.dim_right = right.dimension();
  rep.composite_zero = is_zero_map(right, onto * into);
  rep.injective_left = kernel_dimension(left, middle, into) == 0;
  rep.exact_middle = kernel_dimension(middle, right, onto) == image_dimension(left, middle, into);
  rep.surjective_right = image_dimension(middle, right, onto) == rep.dim_right;
  return rep;
}

}  // namespace logpar

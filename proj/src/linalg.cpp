#include "bcover/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bcover {

SparseVectorQ normalized(SparseVectorQ v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVectorQ out;
  out.reserve(v.size());
  for (auto& [index, value] : v) {
    if (!out.empty() && out.back().first == index) {
      out.back().second += value;
    } else {
      out.emplace_back(index, std::move(value));
    }
  }
  std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
  return out;
}

SparseVectorQ linear_combination(const Rational& a, const SparseVectorQ& x, const Rational& b,
                                 const SparseVectorQ& y) {
  SparseVectorQ out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      Rational v = a * x[i].second;
      if (sgn(v) != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      Rational v = b * y[j].second;
      if (sgn(v) != 0) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      Rational v = a * x[i].second + b * y[j].second;
      if (sgn(v) != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void SparseMatrixQ::set_column(std::size_t c, SparseVectorQ column) {
  column = normalized(std::move(column));
  if (!column.empty() && column.back().first >= rows_) {
    throw std::out_of_range("SparseMatrixQ::set_column: row index out of range");
  }
  columns_.at(c) = std::move(column);
}

Rational SparseMatrixQ::at(std::size_t r, std::size_t c) const {
  const auto& col = columns_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t row) { return e.first < row; });
  if (it != col.end() && it->first == r) return it->second;
  return 0;
}

std::size_t SparseMatrixQ::nonzeros() const {
  std::size_t n = 0;
  for (const auto& col : columns_) n += col.size();
  return n;
}

bool SparseMatrixQ::is_zero() const { return nonzeros() == 0; }

SparseVectorQ SparseMatrixQ::apply(const SparseVectorQ& x) const {
  SparseVectorQ acc;
  for (const auto& [c, value] : x) {
    for (const auto& [r, entry] : columns_.at(c)) acc.emplace_back(r, value * entry);
  }
  return normalized(std::move(acc));
}

SparseMatrixQ SparseMatrixQ::operator*(const SparseMatrixQ& rhs) const {
  if (cols() != rhs.rows()) throw std::invalid_argument("SparseMatrixQ: shape mismatch");
  SparseMatrixQ out(rows_, rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c) out.columns_[c] = apply(rhs.columns_[c]);
  return out;
}

SparseMatrixQ SparseMatrixQ::select(const std::vector<std::size_t>& rows,
                                    const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> row_map(rows_, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < rows.size(); ++i) row_map.at(rows[i]) = i;
  SparseMatrixQ out(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    SparseVectorQ col;
    for (const auto& [r, v] : columns_.at(cols[j])) {
      if (row_map[r] != static_cast<std::size_t>(-1)) col.emplace_back(row_map[r], v);
    }
    out.columns_[j] = normalized(std::move(col));
  }
  return out;
}

namespace {

// Scales a rational column to a primitive integer vector; returns the scale s
// with integer_column = s * column.
Rational integerize(const SparseVectorQ& column, SparseVectorZ& out) {
  Integer denominators = 1;
  for (const auto& [_, v] : column) {
    mpz_lcm(denominators.get_mpz_t(), denominators.get_mpz_t(), v.get_den_mpz_t());
  }
  out.clear();
  out.reserve(column.size());
  Integer content = 0;
  for (const auto& [r, v] : column) {
    Integer x = v.get_num() * (denominators / v.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    out.emplace_back(r, std::move(x));
  }
  if (content == 0) return 1;
  for (auto& [_, x] : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
  return Rational(denominators, content);
}

// a*x - b*y
SparseVectorZ cross_eliminate(const Integer& a, const SparseVectorZ& x, const Integer& b,
                              const SparseVectorZ& y) {
  SparseVectorZ out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Integer t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -(b * y[j].second));
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (t != 0) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

void accumulate_gcd(Integer& g, const SparseVectorZ& v) {
  for (const auto& [_, x] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
}

void divide_by(SparseVectorZ& v, const Integer& g) {
  for (auto& [_, x] : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Fraction-free column reduction keyed on the lowest nonzero row (largest index).
class ColumnReducer {
 public:
  ColumnReducer(std::size_t rows, bool track) : pivot_of_row_(rows, kNone), track_(track) {}

  // Reduces `column` (with its tracking vector) against the stored pivots.
  // Returns true when the column becomes a new pivot.
  bool reduce(SparseVectorZ column, SparseVectorZ tracking) {
    while (!column.empty()) {
      const std::size_t low = column.back().first;
      const std::size_t p = pivot_of_row_[low];
      if (p == kNone) {
        pivot_of_row_[low] = pivots_.size();
        pivots_.push_back(std::move(column));
        if (track_) pivot_tracks_.push_back(std::move(tracking));
        return true;
      }
      const SparseVectorZ& pivot = pivots_[p];
      Integer g;
      mpz_gcd(g.get_mpz_t(), column.back().second.get_mpz_t(), pivot.back().second.get_mpz_t());
      const Integer a = pivot.back().second / g;
      const Integer b = column.back().second / g;
      column = cross_eliminate(a, column, b, pivot);
      if (track_) tracking = cross_eliminate(a, tracking, b, pivot_tracks_[p]);
      Integer content = 0;
      accumulate_gcd(content, column);
      if (track_ && content != 1) accumulate_gcd(content, tracking);
      if (content > 1) {
        divide_by(column, content);
        if (track_) divide_by(tracking, content);
      }
    }
    last_relation_ = std::move(tracking);
    return false;
  }

  std::size_t rank() const { return pivots_.size(); }
  const SparseVectorZ& last_relation() const { return last_relation_; }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_of_row_;
  std::vector<SparseVectorZ> pivots_;
  std::vector<SparseVectorZ> pivot_tracks_;
  SparseVectorZ last_relation_;
  bool track_;
};

}  // namespace

std::size_t rank(const SparseMatrixQ& m) {
  ColumnReducer reducer(m.rows(), false);
  SparseVectorZ column;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.column(c).empty()) continue;
    integerize(m.column(c), column);
    reducer.reduce(std::move(column), {});
  }
  return reducer.rank();
}

std::vector<SparseVectorQ> kernel_basis(const SparseMatrixQ& m) {
  ColumnReducer reducer(m.rows(), true);
  std::vector<Rational> scales(m.cols());
  std::vector<SparseVectorQ> basis;
  SparseVectorZ column;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    scales[c] = integerize(m.column(c), column);
    SparseVectorZ tracking{{c, Integer(1)}};
    if (reducer.reduce(std::move(column), std::move(tracking))) continue;
    // Relation among integerized columns; undo the per-column scaling.
    SparseVectorQ x;
    for (const auto& [i, t] : reducer.last_relation()) x.emplace_back(i, Rational(t) * scales[i]);
    SparseVectorZ primitive;
    integerize(x, primitive);
    const int sign = sgn(primitive.back().second) < 0 ? -1 : 1;
    SparseVectorQ out;
    out.reserve(primitive.size());
    for (auto& [i, v] : primitive) out.emplace_back(i, Rational(sign * v));
    basis.push_back(std::move(out));
  }
  return basis;
}

std::optional<SparseVectorQ> echelon_coordinates(const std::vector<SparseVectorQ>& basis,
                                                 SparseVectorQ v) {
  std::map<std::size_t, std::size_t> by_lead;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].empty()) throw std::invalid_argument("echelon_coordinates: zero basis vector");
    by_lead.emplace(basis[i].back().first, i);
  }
  SparseVectorQ coordinates;
  while (!v.empty()) {
    auto it = by_lead.find(v.back().first);
    if (it == by_lead.end()) return std::nullopt;
    const SparseVectorQ& b = basis[it->second];
    Rational coefficient = v.back().second / b.back().second;
    v = linear_combination(1, v, -coefficient, b);
    coordinates.emplace_back(it->second, std::move(coefficient));
  }
  return normalized(std::move(coordinates));
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("QMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("QMatrix: shape mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("QMatrix: shape");
  QMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const { return *this + rhs.scaled(-1); }

QMatrix QMatrix::scaled(const Rational& s) const {
  QMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

QMatrix QMatrix::transposed() const {
  QMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("QMatrix::apply: shape mismatch");
  std::vector<Rational> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

bool QMatrix::is_identity() const { return square() && *this == identity(rows_); }

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t QMatrix::rank() const {
  QMatrix copy = *this;
  return rref(copy).size();
}

std::optional<QMatrix> QMatrix::inverse() const {
  if (!square()) return std::nullopt;
  const std::size_t n = rows_;
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = rref(aug);
  if (n > 0 && (pivots.size() < n || pivots[n - 1] != n - 1)) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<std::vector<Rational>> QMatrix::kernel() const {
  QMatrix reduced = *this;
  const auto pivots = rref(reduced);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols_);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

SparseMatrixQ QMatrix::to_sparse() const {
  SparseMatrixQ out(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    SparseVectorQ col;
    for (std::size_t i = 0; i < rows_; ++i)
      if (sgn((*this)(i, j)) != 0) col.emplace_back(i, (*this)(i, j));
    out.set_column(j, std::move(col));
  }
  return out;
}

}  // namespace bcover

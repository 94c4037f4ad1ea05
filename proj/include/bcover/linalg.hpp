#pragma once

// Exact linear algebra over the rationals.
//
// Sparse matrices are stored column-major. Rank and kernel computations run a
// fraction-free column reduction over the integers: every column is scaled to
// a primitive integer vector, and eliminations use cross-multiplication
// followed by division by the content, so no rational arithmetic happens in
// the inner loop.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace bcover {

using Integer = mpz_class;
using Rational = mpq_class;

/// (index, value) pairs, indices strictly increasing, no stored zeros.
template <typename T>
using SparseVector = std::vector<std::pair<std::size_t, T>>;
using SparseVectorQ = SparseVector<Rational>;
using SparseVectorZ = SparseVector<Integer>;

/// Sorts by index, merges duplicates and drops zeros.
SparseVectorQ normalized(SparseVectorQ v);

/// a*x + b*y for sorted sparse vectors.
SparseVectorQ linear_combination(const Rational& a, const SparseVectorQ& x, const Rational& b,
                                 const SparseVectorQ& y);

class SparseMatrixQ {
 public:
  SparseMatrixQ() = default;
  SparseMatrixQ(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }

  const SparseVectorQ& column(std::size_t c) const { return columns_.at(c); }
  void set_column(std::size_t c, SparseVectorQ column);

  Rational at(std::size_t r, std::size_t c) const;
  std::size_t nonzeros() const;
  bool is_zero() const;

  /// Matrix-vector product.
  SparseVectorQ apply(const SparseVectorQ& x) const;
  /// this * rhs
  SparseMatrixQ operator*(const SparseMatrixQ& rhs) const;

  /// Submatrix on the given (sorted) row and column index sets, re-indexed.
  SparseMatrixQ select(const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) const;

  bool operator==(const SparseMatrixQ& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVectorQ> columns_;
};

/// Rank over Q.
std::size_t rank(const SparseMatrixQ& m);

/// Basis of the right kernel {x : m x = 0}. The basis is in column echelon form:
/// the largest index carrying a nonzero entry differs between basis vectors,
/// and vectors are returned in increasing order of that index. Entries are
/// primitive integers (stored as rationals) with positive leading entry.
std::vector<SparseVectorQ> kernel_basis(const SparseMatrixQ& m);

/// Coordinates of v in an echelon basis as returned by kernel_basis, or
/// nullopt if v is not in the span.
std::optional<SparseVectorQ> echelon_coordinates(const std::vector<SparseVectorQ>& basis,
                                                 SparseVectorQ v);

/// Small dense rational matrix (local system transports, representations).
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix operator*(const QMatrix& rhs) const;
  QMatrix operator+(const QMatrix& rhs) const;
  QMatrix operator-(const QMatrix& rhs) const;
  QMatrix scaled(const Rational& s) const;
  QMatrix transposed() const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

  bool operator==(const QMatrix& other) const = default;
  bool is_identity() const;
  bool is_zero() const;

  std::size_t rank() const;
  std::optional<QMatrix> inverse() const;
  /// Kernel basis in reduced echelon form (one vector per free column).
  std::vector<std::vector<Rational>> kernel() const;

  SparseMatrixQ to_sparse() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace bcover

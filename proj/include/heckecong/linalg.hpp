#pragma once

#include "heckecong/arith.hpp"
#include "heckecong/poly.hpp"

#include <cstddef>
#include <vector>

namespace heckecong {

// Dense exact rational matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static QMatrix identity(size_t n);
  // Columns given as vectors of equal length.
  static QMatrix from_columns(const std::vector<std::vector<Rational>>& columns, size_t rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rational& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  QMatrix operator*(const QMatrix& other) const;
  QMatrix operator+(const QMatrix& other) const;
  QMatrix operator-(const QMatrix& other) const;
  QMatrix scaled(const Rational& s) const;
  bool operator==(const QMatrix& other) const;
  bool operator!=(const QMatrix& other) const { return !(*this == other); }

  QMatrix transpose() const;
  std::vector<Rational> column(size_t c) const;
  std::vector<Rational> row(size_t r) const;
  QMatrix columns(const std::vector<size_t>& which) const;
  QMatrix rows_subset(const std::vector<size_t>& which) const;
  // [this | other]
  QMatrix hconcat(const QMatrix& other) const;
  // [this ; other]
  QMatrix vconcat(const QMatrix& other) const;

  bool is_zero() const;
  bool is_identity() const;
  Rational trace() const;

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<size_t> rref();
  size_t rank() const;
  // Basis of the right kernel, as columns.
  QMatrix kernel() const;
  // Basis of the column space, chosen among the original columns.
  QMatrix column_space() const;
  QMatrix inverse() const;
  Rational determinant() const;
  // Monic characteristic polynomial det(x I - A), low degree first.
  QPoly charpoly() const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Evaluate a polynomial at a square matrix (Horner).
QMatrix poly_eval(const QPoly& f, const QMatrix& a);

// A subspace of Q^n given by a full-column-rank basis, with the data needed to
// read off coordinates of vectors known to lie in it.
class SubspaceBasis {
 public:
  SubspaceBasis() = default;
  explicit SubspaceBasis(QMatrix basis);

  const QMatrix& basis() const { return basis_; }
  size_t dimension() const { return basis_.cols(); }
  size_t ambient_dimension() const { return basis_.rows(); }

  // Coordinates of a vector in the span; throws InternalError if v is not in it.
  std::vector<Rational> coordinates(const std::vector<Rational>& v) const;
  // Matrix of an operator (ambient n x n) that preserves the subspace.
  QMatrix restrict(const QMatrix& op) const;
  // Coordinates of every column of m.
  QMatrix coordinates_of_columns(const QMatrix& m) const;

 private:
  QMatrix basis_;
  std::vector<size_t> pivot_rows_;
  QMatrix pivot_inverse_;
};

}  // namespace heckecong

#include "heckecong/linalg.hpp"

#include "heckecong/errors.hpp"

#include <utility>

namespace heckecong {

QMatrix QMatrix::identity(size_t n) {
  QMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<std::vector<Rational>>& columns, size_t rows) {
  QMatrix m(rows, columns.size());
  for (size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidArgument("QMatrix::from_columns: ragged input");
    for (size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& other) const {
  if (cols_ != other.rows_) throw InvalidArgument("QMatrix: dimension mismatch in product");
  QMatrix out(rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (size_t j = 0; j < other.cols_; ++j) {
        const Rational& b = other(k, j);
        if (b != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("QMatrix: dimension mismatch in sum");
  QMatrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("QMatrix: dimension mismatch in difference");
  QMatrix out = *this;
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
  return out;
}

QMatrix QMatrix::scaled(const Rational& s) const {
  QMatrix out = *this;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool QMatrix::operator==(const QMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

std::vector<Rational> QMatrix::column(size_t c) const {
  std::vector<Rational> out(rows_);
  for (size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<Rational> QMatrix::row(size_t r) const {
  return std::vector<Rational>(data_.begin() + static_cast<long>(r * cols_),
                               data_.begin() + static_cast<long>((r + 1) * cols_));
}

QMatrix QMatrix::columns(const std::vector<size_t>& which) const {
  QMatrix out(rows_, which.size());
  for (size_t r = 0; r < rows_; ++r)
    for (size_t j = 0; j < which.size(); ++j) out(r, j) = (*this)(r, which[j]);
  return out;
}

QMatrix QMatrix::rows_subset(const std::vector<size_t>& which) const {
  QMatrix out(which.size(), cols_);
  for (size_t i = 0; i < which.size(); ++i)
    for (size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(which[i], c);
  return out;
}

QMatrix QMatrix::hconcat(const QMatrix& other) const {
  if (rows_ != other.rows_) throw InvalidArgument("QMatrix::hconcat: row mismatch");
  QMatrix out(rows_, cols_ + other.cols_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

QMatrix QMatrix::vconcat(const QMatrix& other) const {
  if (cols_ != other.cols_ && rows_ != 0 && other.rows_ != 0) throw InvalidArgument("QMatrix::vconcat: column mismatch");
  if (rows_ == 0) return other;
  if (other.rows_ == 0) return *this;
  QMatrix out(rows_ + other.rows_, cols_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
  for (size_t r = 0; r < other.rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) out(rows_ + r, c) = other(r, c);
  return out;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool QMatrix::is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

Rational QMatrix::trace() const {
  if (rows_ != cols_) throw InvalidArgument("QMatrix::trace: not square");
  Rational t = 0;
  for (size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

std::vector<size_t> QMatrix::rref() {
  std::vector<size_t> pivots;
  size_t lead_row = 0;
  for (size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
    size_t r = lead_row;
    while (r < rows_ && (*this)(r, c) == 0) ++r;
    if (r == rows_) continue;
    if (r != lead_row) {
      for (size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(lead_row, j));
    }
    Rational inv = 1 / (*this)(lead_row, c);
    for (size_t j = c; j < cols_; ++j) (*this)(lead_row, j) *= inv;
    for (size_t i = 0; i < rows_; ++i) {
      if (i == lead_row) continue;
      Rational f = (*this)(i, c);
      if (f == 0) continue;
      for (size_t j = c; j < cols_; ++j) {
        const Rational& x = (*this)(lead_row, j);
        if (x != 0) (*this)(i, j) -= f * x;
      }
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

size_t QMatrix::rank() const {
  QMatrix m = *this;
  return m.rref().size();
}

QMatrix QMatrix::kernel() const {
  QMatrix m = *this;
  std::vector<size_t> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix k(cols_, free_cols.size());
  for (size_t j = 0; j < free_cols.size(); ++j) {
    size_t f = free_cols[j];
    k(f, j) = 1;
    for (size_t i = 0; i < pivots.size(); ++i) k(pivots[i], j) = -m(i, f);
  }
  return k;
}

QMatrix QMatrix::column_space() const {
  QMatrix m = *this;
  std::vector<size_t> pivots = m.rref();
  return columns(pivots);
}

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidArgument("QMatrix::inverse: not square");
  QMatrix aug = hconcat(identity(rows_));
  std::vector<size_t> pivots = aug.rref();
  if (pivots.size() < rows_ || (rows_ > 0 && pivots[rows_ - 1] != rows_ - 1)) {
    throw InvalidArgument("QMatrix::inverse: singular matrix");
  }
  QMatrix out(rows_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < rows_; ++c) out(r, c) = aug(r, rows_ + c);
  return out;
}

Rational QMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidArgument("QMatrix::determinant: not square");
  QMatrix m = *this;
  Rational det = 1;
  for (size_t c = 0; c < rows_; ++c) {
    size_t r = c;
    while (r < rows_ && m(r, c) == 0) ++r;
    if (r == rows_) return 0;
    if (r != c) {
      for (size_t j = 0; j < cols_; ++j) std::swap(m(r, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (size_t i = c + 1; i < rows_; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

QPoly QMatrix::charpoly() const {
  if (rows_ != cols_) throw InvalidArgument("QMatrix::charpoly: not square");
  const size_t n = rows_;
  QMatrix h = *this;
  // Reduce to upper Hessenberg form by similarity transforms.
  for (size_t m = 1; m + 1 < n; ++m) {
    size_t i = m;
    while (i < n && h(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (size_t c = 0; c < n; ++c) std::swap(h(i, c), h(m, c));
      for (size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, m));
    }
    Rational t = h(m, m - 1);
    for (size_t j = m + 1; j < n; ++j) {
      Rational u = h(j, m - 1) / t;
      if (u == 0) continue;
      for (size_t c = 0; c < n; ++c) h(j, c) -= u * h(m, c);
      for (size_t r = 0; r < n; ++r) h(r, m) += u * h(r, j);
    }
  }
  // Recurrence on leading principal minors; H(i, j) below is 1-indexed.
  auto H = [&h](size_t i, size_t j) -> const Rational& { return h(i - 1, j - 1); };
  std::vector<QPoly> p(n + 1);
  p[0] = {Rational(1)};
  for (size_t m = 1; m <= n; ++m) {
    QPoly next = qpoly::mul({-H(m, m), Rational(1)}, p[m - 1]);
    Rational t = 1;
    for (size_t i = 1; i < m; ++i) {
      t *= H(m - i + 1, m - i);
      Rational coeff = H(m - i, m) * t;
      if (coeff == 0) continue;
      QPoly term = p[m - i - 1];
      for (auto& c : term) c *= -coeff;
      next = qpoly::add(next, term);
    }
    p[m] = std::move(next);
  }
  QPoly out = p[n];
  out.resize(n + 1, Rational(0));
  return out;
}

QMatrix poly_eval(const QPoly& f, const QMatrix& a) {
  size_t n = a.rows();
  QMatrix acc(n, n);
  for (size_t i = f.size(); i-- > 0;) {
    acc = acc * a;
    for (size_t d = 0; d < n; ++d) acc(d, d) += f[i];
  }
  return acc;
}

SubspaceBasis::SubspaceBasis(QMatrix basis) : basis_(std::move(basis)) {
  QMatrix t = basis_.transpose();
  pivot_rows_ = t.rref();
  if (pivot_rows_.size() != basis_.cols()) throw InvalidArgument("SubspaceBasis: basis is not of full column rank");
  pivot_inverse_ = basis_.rows_subset(pivot_rows_).inverse();
}

std::vector<Rational> SubspaceBasis::coordinates(const std::vector<Rational>& v) const {
  size_t d = dimension();
  std::vector<Rational> out(d, Rational(0));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) out[i] += pivot_inverse_(i, j) * v[pivot_rows_[j]];
  for (size_t r = 0; r < basis_.rows(); ++r) {
    Rational s = 0;
    for (size_t j = 0; j < d; ++j) s += basis_(r, j) * out[j];
    if (s != v[r]) throw InternalError("SubspaceBasis::coordinates: vector not in subspace");
  }
  return out;
}

QMatrix SubspaceBasis::coordinates_of_columns(const QMatrix& m) const {
  QMatrix out(dimension(), m.cols());
  for (size_t c = 0; c < m.cols(); ++c) {
    std::vector<Rational> coords = coordinates(m.column(c));
    for (size_t i = 0; i < coords.size(); ++i) out(i, c) = coords[i];
  }
  return out;
}

QMatrix SubspaceBasis::restrict(const QMatrix& op) const { return coordinates_of_columns(op * basis_); }

}  // namespace heckecong

#pragma once

#include "sotangent/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sot {

/// Dense row-major matrix over Q.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix from_rows(const std::vector<QVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QVector row(std::size_t i) const;
  Matrix select_columns(const std::vector<std::size_t>& cols) const;
  QVector apply(const QVector& x) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form and the pivot column of each nonzero row.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Exact Gauss-Jordan elimination. Among candidate pivots in a column the entry with the
/// smallest numerator+denominator bit length wins (lowest row on ties). The reduced form is
/// unique, so the pivot rule only affects intermediate coefficient growth.
Echelon reduce(Matrix m);

std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);

/// Unique solution of A x = b for square nonsingular A; nullopt when A is singular.
std::optional<QVector> solve_square(const Matrix& a, const QVector& b);

/// Lexicographically first set of `rows()` columns whose minor is nonzero, or nullopt when
/// the matrix does not have full row rank.
std::optional<std::vector<std::size_t>> invertible_column_subset(const Matrix& m);

/// An affine subspace of Q^n given by a particular point and a basis of its direction space,
/// or the empty set.
class AffineSubspace {
public:
  static AffineSubspace empty(std::size_t ambient_dim);
  /// Throws ValidationError unless the basis vectors are independent and sized `point.size()`.
  static AffineSubspace make(QVector point, std::vector<QVector> basis);
  static AffineSubspace whole_space(std::size_t ambient_dim);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  bool is_empty() const noexcept { return !point_.has_value(); }
  /// Dimension of the direction space; -1 for the empty set.
  long dimension() const noexcept { return is_empty() ? -1 : static_cast<long>(basis_.size()); }
  const QVector& point() const;
  const std::vector<QVector>& basis() const noexcept { return basis_; }

  bool contains(const QVector& w) const;
  /// point + sum coeffs[i] * basis[i]
  QVector at(const QVector& coeffs) const;

  /// Equality as sets (not as representations).
  friend bool same_set(const AffineSubspace& a, const AffineSubspace& b);
  friend bool operator==(const AffineSubspace& a, const AffineSubspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.point_ == b.point_ && a.basis_ == b.basis_;
  }

private:
  explicit AffineSubspace(std::size_t n) : ambient_dim_(n) {}

  std::size_t ambient_dim_;
  std::optional<QVector> point_;
  std::vector<QVector> basis_;
};

/// Solution set of A x = b in canonical form: the particular point has every free
/// variable set to 0, and each basis vector sets one free variable to 1.
AffineSubspace solve_affine(const Matrix& a, const QVector& b);

} // namespace sot

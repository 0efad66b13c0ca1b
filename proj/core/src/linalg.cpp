#include "sotangent/linalg.hpp"

#include "sotangent/errors.hpp"

#include <utility>

namespace sot {

Matrix Matrix::from_rows(const std::vector<QVector>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ValidationError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QVector Matrix::row(std::size_t i) const {
  return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                 data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const {
  Matrix out(rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols.size(); ++k) out(i, k) = (*this)(i, cols[k]);
  return out;
}

QVector Matrix::apply(const QVector& x) const {
  if (x.size() != cols_) throw ValidationError("matrix-vector dimension mismatch");
  QVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

Echelon reduce(Matrix m) {
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::optional<std::size_t> best;
    std::size_t best_bits = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const std::size_t bits = bit_size(m(i, c));
      if (!best || bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (!best) continue;
    if (*best != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(*best, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return reduce(m).pivot_cols.size(); }

Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("determinant of a non-square matrix");
  Matrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::optional<std::size_t> best;
    std::size_t best_bits = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      const std::size_t bits = bit_size(a(i, c));
      if (!best || bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (!best) return 0;
    if (*best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(*best, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      const Rational factor = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

std::optional<QVector> solve_square(const Matrix& a, const QVector& b) {
  if (a.rows() != a.cols() || b.size() != a.rows()) throw ValidationError("solve_square: shape mismatch");
  const std::size_t n = a.rows();
  Matrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto ech = reduce(std::move(aug));
  if (ech.pivot_cols.size() < n || ech.pivot_cols.back() != n - 1) return std::nullopt;
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = ech.reduced(i, n);
  return x;
}

std::optional<std::vector<std::size_t>> invertible_column_subset(const Matrix& m) {
  std::vector<std::size_t> chosen;
  for (std::size_t c = 0; c < m.cols() && chosen.size() < m.rows(); ++c) {
    auto trial = chosen;
    trial.push_back(c);
    if (rank(m.select_columns(trial)) == trial.size()) chosen = std::move(trial);
  }
  if (chosen.size() < m.rows()) return std::nullopt;
  return chosen;
}

AffineSubspace AffineSubspace::empty(std::size_t ambient_dim) { return AffineSubspace(ambient_dim); }

AffineSubspace AffineSubspace::whole_space(std::size_t ambient_dim) {
  std::vector<QVector> basis;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    QVector e(ambient_dim);
    e[i] = 1;
    basis.push_back(std::move(e));
  }
  return make(QVector(ambient_dim), std::move(basis));
}

AffineSubspace AffineSubspace::make(QVector point, std::vector<QVector> basis) {
  AffineSubspace s(point.size());
  for (const auto& b : basis)
    if (b.size() != point.size()) throw ValidationError("basis vector has the wrong dimension");
  if (!basis.empty() && rank(Matrix::from_rows(basis)) != basis.size())
    throw ValidationError("basis vectors are linearly dependent");
  s.point_ = std::move(point);
  s.basis_ = std::move(basis);
  return s;
}

const QVector& AffineSubspace::point() const {
  if (!point_) throw PreconditionError("empty affine subspace has no point");
  return *point_;
}

bool AffineSubspace::contains(const QVector& w) const {
  if (w.size() != ambient_dim_) throw ValidationError("contains: dimension mismatch");
  if (!point_) return false;
  QVector diff(ambient_dim_);
  for (std::size_t i = 0; i < ambient_dim_; ++i) diff[i] = w[i] - (*point_)[i];
  if (is_zero(diff)) return true;
  if (basis_.empty()) return false;
  auto rows = basis_;
  rows.push_back(std::move(diff));
  return rank(Matrix::from_rows(rows)) == basis_.size();
}

QVector AffineSubspace::at(const QVector& coeffs) const {
  if (coeffs.size() != basis_.size()) throw ValidationError("at: wrong number of coefficients");
  QVector x = point();
  for (std::size_t k = 0; k < basis_.size(); ++k)
    for (std::size_t i = 0; i < ambient_dim_; ++i) x[i] += coeffs[k] * basis_[k][i];
  return x;
}

bool same_set(const AffineSubspace& a, const AffineSubspace& b) {
  if (a.ambient_dim_ != b.ambient_dim_) return false;
  if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
  if (a.basis_.size() != b.basis_.size() || !b.contains(*a.point_)) return false;
  for (const auto& v : a.basis_) {
    QVector p = *b.point_;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += v[i];
    if (!b.contains(p)) return false;
  }
  return true;
}

AffineSubspace solve_affine(const Matrix& a, const QVector& b) {
  const std::size_t n = a.cols();
  if (b.size() != a.rows()) throw ValidationError("solve_affine: right-hand side has the wrong length");
  Matrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto ech = reduce(std::move(aug));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == n) return AffineSubspace::empty(n);

  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  QVector point(n);
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) point[ech.pivot_cols[r]] = ech.reduced(r, n);

  std::vector<QVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    QVector v(n);
    v[f] = 1;
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return AffineSubspace::make(std::move(point), std::move(basis));
}

} // namespace sot

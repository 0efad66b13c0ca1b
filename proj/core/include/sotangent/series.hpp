#pragma once

#include "sotangent/polynomial.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace sot {

/// Scalar power series in t truncated after t^order.
template <class K>
class Series {
public:
  explicit Series(std::size_t order) : coeffs_(order + 1, ScalarTraits<K>::zero()) {}

  static Series constant(std::size_t order, const K& c) {
    Series s(order);
    s.coeffs_[0] = c;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const K& operator[](std::size_t k) const { return coeffs_.at(k); }
  K& operator[](std::size_t k) { return coeffs_.at(k); }
  const std::vector<K>& coeffs() const noexcept { return coeffs_; }

  /// Index of the first nonzero coefficient, or order()+1 when all vanish.
  std::size_t valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!ScalarTraits<K>::is_zero(coeffs_[k])) return k;
    return coeffs_.size();
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series out(std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= out.order(); ++k) out.coeffs_[k] = a.coeffs_[k] + b.coeffs_[k];
    return out;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series out(std::min(a.order(), b.order()));
    const std::size_t va = a.valuation();
    const std::size_t vb = b.valuation();
    for (std::size_t i = va; i <= out.order(); ++i) {
      if (ScalarTraits<K>::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = vb; i + j <= out.order(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }

  friend Series operator*(const K& s, Series a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }

  friend bool operator==(const Series& a, const Series& b) { return a.coeffs_ == b.coeffs_; }

private:
  std::vector<K> coeffs_;
};

/// Vector-valued truncated series: coeffs()[k] is the coefficient vector of t^k.
template <class K>
class TruncatedSeries {
public:
  TruncatedSeries(std::size_t dim, std::size_t order)
      : dim_(dim), coeffs_(order + 1, std::vector<K>(dim, ScalarTraits<K>::zero())) {
    if (dim == 0) throw ValidationError("series dimension must be positive");
  }

  /// The constant series x (used to cross-check composition against evaluation).
  static TruncatedSeries constant(std::size_t order, const std::vector<K>& x) {
    TruncatedSeries s(x.size(), order);
    s.coeffs_[0] = x;
    return s;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t order() const noexcept { return coeffs_.size() - 1; }

  const std::vector<std::vector<K>>& coeffs() const noexcept { return coeffs_; }
  const std::vector<K>& coeff(std::size_t k) const { return coeffs_.at(k); }
  std::vector<K>& coeff(std::size_t k) { return coeffs_.at(k); }

  Series<K> component(std::size_t j) const {
    Series<K> s(order());
    for (std::size_t k = 0; k <= order(); ++k) s[k] = coeffs_[k].at(j);
    return s;
  }

  /// Same series with extra zero coefficients (or truncated) to the requested order.
  TruncatedSeries with_order(std::size_t order) const {
    TruncatedSeries out(dim_, order);
    for (std::size_t k = 0; k <= std::min(order, this->order()); ++k) out.coeffs_[k] = coeffs_[k];
    return out;
  }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.dim_ != b.dim_) throw ValidationError("series dimension mismatch");
    TruncatedSeries out(a.dim_, std::min(a.order(), b.order()));
    for (std::size_t k = 0; k <= out.order(); ++k)
      for (std::size_t j = 0; j < a.dim_; ++j) out.coeffs_[k][j] = a.coeffs_[k][j] + b.coeffs_[k][j];
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
  }

private:
  std::size_t dim_;
  std::vector<std::vector<K>> coeffs_;
};

/// f(s(t)) through t^{s.order()}. Terms whose contribution lies above the truncation are dropped.
template <class K>
Series<K> compose_series(const Polynomial<K>& f, const TruncatedSeries<K>& s) {
  if (s.dim() != f.n_vars())
    throw ValidationError("compose_series: series dimension does not match polynomial variables");
  const std::size_t order = s.order();
  std::vector<std::vector<Series<K>>> powers(f.n_vars());
  Series<K> result(order);
  for (const auto& [e, c] : f.terms()) {
    auto term = Series<K>::constant(order, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Series<K>::constant(order, ScalarTraits<K>::one()));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * s.component(i));
      term = term * pw[e[i]];
    }
    result = result + term;
  }
  return result;
}

} // namespace sot

#pragma once

#include "sotangent/linalg.hpp"
#include "sotangent/series.hpp"
#include "sotangent/tangent_algebra.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sot {

/// Classes of (X, 0, u) on which every algebraic second jet is realized by an arc in X.
enum class SurjectivityClass {
  Smooth,
  HomogeneousCone,
  HypersurfaceNondegenerate,
  CompleteIntersectionNondegenerate,
  None,
};

std::string to_string(SurjectivityClass c);

/// Which surjectivity class applies at (X, 0, u), with data that re-verifies exactly.
///
/// `gradient_matrix` is the Jacobian at 0 for Smooth and the matrix of rows
/// grad (f_i)_{m_i}(u) otherwise; `block_columns` picks the lexicographically first
/// invertible p x p block of it, which the lift solves against.
struct Certificate {
  SurjectivityClass kind = SurjectivityClass::None;
  QVector direction;
  Matrix gradient_matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> block_columns;
  Rational block_determinant;
  std::vector<unsigned> orders; ///< m_i (the homogeneity degrees for a cone)
  std::vector<SurjectivityClass> passing;
  std::vector<std::string> failed_checks;

  bool certified() const noexcept { return kind != SurjectivityClass::None; }
};

/// Runs the checks in the order Smooth, HomogeneousCone, HypersurfaceNondegenerate (p = 1),
/// CompleteIntersectionNondegenerate and returns the first that passes, except that a
/// passing hypersurface check wins for p = 1. All passing classes and every failed check
/// are recorded. Requires u in the generator-level tangent cone.
Certificate classify(const PolySystem& sys, const QVector& u);

/// Recomputes the witness of `cert` from scratch; throws CertificateError on any mismatch.
void verify_certificate(const PolySystem& sys, const Certificate& cert);

/// Per-generator residual of f_i(gamma(t)).
struct ResidualReport {
  std::vector<std::size_t> horizon;                      ///< last order that is exact for the arc
  std::vector<std::optional<std::size_t>> first_nonzero; ///< nullopt: zero through horizon

  bool clean() const;
};

/// Truncated arc gamma(t) = t u + t^2 w / 2 + O(t^3) lying in X to the verified order.
struct JetArc {
  TruncatedSeries<Rational> series;
  QVector u;
  QVector w;
  std::vector<std::size_t> residual_orders;
  Certificate certificate;

  std::size_t order() const noexcept { return series.order(); }
};

inline constexpr std::size_t kDefaultTruncation = 8;

/// Builds gamma(t) = t u + t^2 w / 2 + t^2 (0, s(t)) with s(0) = 0 by order-by-order linear
/// solves against the certificate's invertible block.
///
/// Throws InadmissibleJet if w violates the algebraic system of algebraic_t2, and
/// CertificateError if the block is singular or the finished arc does not verify.
JetArc lift_second_jet(const PolySystem& sys, const Certificate& cert, const QVector& u, const QVector& w,
                       std::size_t order = kDefaultTruncation);

/// Composes every generator with `series` and reports the first nonzero coefficient.
/// For arcs through 0 the horizon is order + m_i - 1, the last coefficient of f_i(gamma)
/// determined by the truncated arc.
ResidualReport verify_arc(const PolySystem& sys, const TruncatedSeries<Rational>& series);

/// As above, and stores the residual orders in `arc`.
ResidualReport verify_arc(const PolySystem& sys, JetArc& arc);

} // namespace sot

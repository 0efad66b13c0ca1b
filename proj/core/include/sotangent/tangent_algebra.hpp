#pragma once

#include "sotangent/linalg.hpp"
#include "sotangent/polynomial.hpp"
#include "sotangent/rational.hpp"

#include <cstddef>
#include <vector>

namespace sot {

/// Generators f_1..f_p of the defining ideal of X near 0, with ambient data.
///
/// Every generator is nonzero and vanishes at the origin. All sets computed from a
/// PolySystem are relative to these generators, not to the full ideal I(X, 0).
class PolySystem {
public:
  PolySystem(std::size_t n, std::vector<Polynomial<Rational>> generators, Field field = Field::RationalExact);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return generators_.size(); }
  Field field() const noexcept { return field_; }
  bool is_complex() const noexcept { return field_ == Field::ComplexFloat; }
  const std::vector<Polynomial<Rational>>& generators() const noexcept { return generators_; }
  const Polynomial<Rational>& operator[](std::size_t i) const { return generators_.at(i); }

private:
  std::size_t n_;
  std::vector<Polynomial<Rational>> generators_;
  Field field_;
};

/// Order m, initial form f^{[*]} and next form f^{[*]+1} of one generator.
struct InitialData {
  unsigned order;
  Polynomial<Rational> initial;
  Polynomial<Rational> next;
};

std::vector<InitialData> initial_data(const PolySystem& sys);

/// True iff f_i^{[*]}(u) = 0 for every generator. Requires u != 0.
bool tangent_cone_membership(const PolySystem& sys, const QVector& u);

/// True iff f_i^{[*]+1}(u) = 0 for every generator; then the affine system defining
/// T^{2,a} is homogeneous and coincides with the jet-space system. Requires u in the
/// generator-level tangent cone.
bool next_form_consistency(const PolySystem& sys, const QVector& u);

/// p x n matrix with rows grad f_i^{[*]}(u).
Matrix initial_gradient_matrix(const PolySystem& sys, const QVector& u);

/// T^{2,a}_{0,u}X: solutions w of 1/2 <grad f_i^{[*]}(u), w> + f_i^{[*]+1}(u) = 0 for all i.
/// EMPTY when the system is inconsistent.
AffineSubspace algebraic_t2(const PolySystem& sys, const QVector& u);

/// Jet-space form: the linear subspace <grad f_i^{[*]}(u), w> = 0 for all i. It is the
/// direction space of algebraic_t2 and equals it whenever next_form_consistency holds.
/// Throws PreconditionError when next_form_consistency fails.
AffineSubspace jet_space_t2(const PolySystem& sys, const QVector& u);

/// The affine equations of algebraic_t2 as (A, b) with A w = b.
std::pair<Matrix, QVector> algebraic_t2_system(const PolySystem& sys, const QVector& u);

} // namespace sot

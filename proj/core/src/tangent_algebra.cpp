#include "sotangent/tangent_algebra.hpp"

#include "sotangent/errors.hpp"

#include <string>
#include <utility>

namespace sot {

PolySystem::PolySystem(std::size_t n, std::vector<Polynomial<Rational>> generators, Field field)
    : n_(n), generators_(std::move(generators)), field_(field) {
  if (n_ == 0) throw ValidationError("ambient dimension must be positive");
  if (generators_.empty()) throw ValidationError("at least one generator is required");
  const QVector origin(n_);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const auto& f = generators_[i];
    if (f.n_vars() != n_)
      throw ValidationError("generator " + std::to_string(i + 1) + " has " + std::to_string(f.n_vars()) +
                            " variables, expected " + std::to_string(n_));
    if (f.is_zero()) throw ValidationError("generator " + std::to_string(i + 1) + " is the zero polynomial");
    if (sgn(evaluate(f, origin)) != 0)
      throw ValidationError("generator " + std::to_string(i + 1) + " does not vanish at the reference point");
  }
}

std::vector<InitialData> initial_data(const PolySystem& sys) {
  std::vector<InitialData> out;
  out.reserve(sys.size());
  for (const auto& f : sys.generators()) out.push_back({*order_of(f), initial_form(f), next_form(f)});
  return out;
}

namespace {

void require_direction(const PolySystem& sys, const QVector& u) {
  if (u.size() != sys.n())
    throw ValidationError("direction has dimension " + std::to_string(u.size()) + ", expected " +
                          std::to_string(sys.n()));
  if (is_zero(u)) throw PreconditionError("direction u must be nonzero");
}

} // namespace

bool tangent_cone_membership(const PolySystem& sys, const QVector& u) {
  require_direction(sys, u);
  for (const auto& f : sys.generators())
    if (sgn(evaluate(initial_form(f), u)) != 0) return false;
  return true;
}

bool next_form_consistency(const PolySystem& sys, const QVector& u) {
  if (!tangent_cone_membership(sys, u))
    throw PreconditionError("next_form_consistency requires u in the tangent cone of the generators");
  for (const auto& f : sys.generators())
    if (sgn(evaluate(next_form(f), u)) != 0) return false;
  return true;
}

Matrix initial_gradient_matrix(const PolySystem& sys, const QVector& u) {
  if (u.size() != sys.n()) throw ValidationError("direction dimension mismatch");
  Matrix m(sys.size(), sys.n());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto grad = evaluate_gradient(initial_form(sys[i]), u);
    for (std::size_t j = 0; j < sys.n(); ++j) m(i, j) = grad[j];
  }
  return m;
}

std::pair<Matrix, QVector> algebraic_t2_system(const PolySystem& sys, const QVector& u) {
  require_direction(sys, u);
  Matrix a = initial_gradient_matrix(sys, u);
  QVector b(sys.size());
  const Rational half(1, 2);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 0; j < sys.n(); ++j) a(i, j) *= half;
    b[i] = -evaluate(next_form(sys[i]), u);
  }
  return {std::move(a), std::move(b)};
}

AffineSubspace algebraic_t2(const PolySystem& sys, const QVector& u) {
  auto [a, b] = algebraic_t2_system(sys, u);
  return solve_affine(a, b);
}

AffineSubspace jet_space_t2(const PolySystem& sys, const QVector& u) {
  require_direction(sys, u);
  if (!next_form_consistency(sys, u))
    throw PreconditionError("jet_space_t2: next forms do not vanish at u, so the jet space is not defined");
  return solve_affine(initial_gradient_matrix(sys, u), QVector(sys.size()));
}

} // namespace sot

#pragma once

// Random certified inputs for the property suites. Coefficients are drawn as p/q with
// |p|, q <= height; forcing u into the cone then rewrites one coefficient per form, whose
// height may exceed that bound.

#include "sotangent/jet_lift.hpp"
#include "sotangent/linalg.hpp"
#include "sotangent/tangent_algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sot::testing {

struct CertifiedCase {
  PolySystem sys;
  QVector u;
  std::string family; // "smooth_ci" or "cone"
};

class RandomSystems {
public:
  explicit RandomSystems(std::uint64_t seed, long height = 10) : rng_(seed), height_(height) {}

  std::mt19937_64& rng() { return rng_; }

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational coefficient() {
    Rational q(integer(-height_, height_), integer(1, height_));
    q.canonicalize();
    return q;
  }

  Rational nonzero_coefficient() {
    for (;;)
      if (auto q = coefficient(); sgn(q) != 0) return q;
  }

  /// Small integer vector, never zero.
  QVector direction(std::size_t n) {
    for (;;) {
      QVector u(n);
      for (auto& c : u) c = integer(-3, 3);
      if (!is_zero(u)) return u;
    }
  }

  Polynomial<Rational> homogeneous(std::size_t n, unsigned degree, std::size_t terms) {
    Polynomial<Rational> f(n);
    for (std::size_t k = 0; k < terms; ++k) {
      Exponent e(n, 0);
      for (unsigned d = 0; d < degree; ++d) ++e[integer(0, static_cast<long>(n) - 1)];
      f.add_term(e, nonzero_coefficient());
    }
    return f;
  }

  /// r - (r(u) / u_j^d) x_j^d for the nonzero u_j of least height: homogeneous of degree d,
  /// zero at u, and only one coefficient moves.
  Polynomial<Rational> vanishing_at(Polynomial<Rational> r, unsigned d, const QVector& u) {
    const Rational ru = evaluate(r, u);
    if (sgn(ru) == 0) return r;
    std::size_t j = u.size();
    for (std::size_t k = 0; k < u.size(); ++k)
      if (sgn(u[k]) != 0 && (j == u.size() || bit_size(u[k]) < bit_size(u[j]))) j = k;
    Exponent e(u.size(), 0);
    e[j] = d;
    Rational uj = 1;
    for (unsigned k = 0; k < d; ++k) uj *= u[j];
    r.add_term(e, -ru / uj);
    return r;
  }

  /// f_i = x_{pivot_i} + sum_j a_ij x_j + q_i + c_i with q_i(u) = 0, so both the Jacobian at 0
  /// and the next forms behave: SMOOTH, and jet_space_t2 = algebraic_t2 at u.
  CertifiedCase smooth_ci(std::size_t n, std::size_t p) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng_);
    const std::vector<std::size_t> pivots(perm.begin(), perm.begin() + static_cast<long>(p));
    const std::vector<std::size_t> free(perm.begin() + static_cast<long>(p), perm.end());

    QVector u(n);
    for (;;) {
      for (auto j : free) u[j] = integer(-3, 3);
      bool nonzero = false;
      for (auto j : free) nonzero = nonzero || sgn(u[j]) != 0;
      if (nonzero) break;
    }

    std::vector<Polynomial<Rational>> gens;
    for (std::size_t i = 0; i < p; ++i) {
      auto f = Polynomial<Rational>::variable(n, pivots[i]);
      Rational at_u = 0;
      for (auto j : free) {
        const Rational a = coefficient();
        f += Polynomial<Rational>::variable(n, j) * a;
        at_u += a * u[j];
      }
      u[pivots[i]] = -at_u;
      gens.push_back(std::move(f));
    }
    for (auto& f : gens) {
      f += vanishing_at(homogeneous(n, 2, 3), 2, u);
      f += homogeneous(n, 3, 2);
    }
    return {PolySystem(n, std::move(gens)), u, "smooth_ci"};
  }

  /// Homogeneous generators of degree 2 or 3 vanishing at u, with independent gradients there.
  CertifiedCase homogeneous_cone(std::size_t n, std::size_t p) {
    for (;;) {
      const QVector u = direction(n);
      std::vector<Polynomial<Rational>> gens;
      for (std::size_t i = 0; i < p; ++i) {
        const auto d = static_cast<unsigned>(integer(2, 3));
        gens.push_back(vanishing_at(homogeneous(n, d, 3), d, u));
      }
      bool usable = true;
      for (const auto& f : gens) usable = usable && !f.is_zero();
      if (!usable) continue;
      PolySystem sys(n, std::move(gens));
      if (rank(initial_gradient_matrix(sys, u)) == p) return {std::move(sys), u, "cone"};
    }
  }

  /// n in 2..5, p in 1..min(3, n-1), alternating families.
  CertifiedCase certified(std::size_t index) {
    const auto n = static_cast<std::size_t>(integer(2, 5));
    const auto p = static_cast<std::size_t>(integer(1, std::min<long>(3, static_cast<long>(n) - 1)));
    return index % 2 == 0 ? smooth_ci(n, p) : homogeneous_cone(n, p);
  }

  /// Random point of a nonempty affine subspace with small rational coordinates.
  QVector point_of(const AffineSubspace& s) {
    QVector a(s.basis().size());
    for (auto& c : a) c = Rational(integer(-5, 5), integer(1, 3));
    for (auto& c : a) c.canonicalize();
    return s.at(a);
  }

private:
  std::mt19937_64 rng_;
  long height_;
};

} // namespace sot::testing

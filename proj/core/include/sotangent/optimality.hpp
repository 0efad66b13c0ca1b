#pragma once

#include "sotangent/jet_lift.hpp"
#include "sotangent/linalg.hpp"
#include "sotangent/sampler.hpp"
#include "sotangent/tangent_algebra.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sot {

/// inf over a set of w of c + <g, w>.
struct Infimum {
  enum class Kind { Finite, NegInfinity, Empty };
  Kind kind = Kind::Empty;
  Rational value; ///< meaningful for Finite only

  static Infimum finite(Rational v) { return {Kind::Finite, std::move(v)}; }
  static Infimum neg_infinity() { return {Kind::NegInfinity, 0}; }
  static Infimum empty() { return {Kind::Empty, 0}; }
};

std::string to_string(Infimum::Kind k);

enum class SetUsed { Algebraic, GeometricCertified, GeometricSampled };
enum class OptimalityVerdict { NecessaryHolds, NecessaryFails, SufficientHolds, Indeterminate };

std::string to_string(SetUsed s);
std::string to_string(OptimalityVerdict v);

/// Closed-form infimum of c + <g, w> over an affine subspace, with a minimizing point
/// (Finite) or a point of value -1 (NegInfinity).
struct AffineInfimum {
  Infimum infimum;
  std::optional<QVector> witness;
};

AffineInfimum affine_infimum(const QVector& g, const Rational& c, const AffineSubspace& s);

/// <grad f(0), u> and whether it vanishes.
struct FirstOrder {
  Rational value;
  bool critical = false;
};

/// The objective lives on the real coordinates: n variables over R, 2n (real parts,
/// then imaginary parts) over C. Directions are rational points of K^n.
std::vector<FirstOrder> first_order_scan(const PolySystem& sys, const Polynomial<Rational>& objective,
                                         const std::vector<QVector>& directions);

struct SampledCandidate {
  QVector w; ///< real coordinates, like the objective
  Verdict verdict = Verdict::Inconclusive;
  Rational value;
};

struct OptimalityReport {
  QVector direction;
  Rational first_order_value;
  bool is_critical = false;
  Rational quadratic_term;
  Infimum infimum;
  SetUsed set_used = SetUsed::Algebraic;
  OptimalityVerdict verdict = OptimalityVerdict::Indeterminate;
  /// False when the verdict rests on sampler evidence.
  bool exact = true;
  std::optional<QVector> witness;
  std::optional<Rational> margin;
  Certificate certificate;
  /// The infimum over T^{2,a}; differs from `infimum` only when sampling was used.
  Infimum algebraic_infimum;
  /// Class NONE with a negative algebraic infimum: T^2 may be strictly smaller than T^{2,a}.
  bool algebraic_inconclusive = false;
  std::vector<SampledCandidate> sampled;
  std::vector<std::string> notes;
};

struct CheckOptions {
  bool corroborate_by_sampling = true;
  DecaySchedule schedule = DecaySchedule::standard();
  std::uint64_t seed = 0;
  /// Extra w (real coordinates) sampled alongside the grid over T^{2,a}.
  std::vector<QVector> candidates_w;
  /// Cap on the grid point + sum a_j b_j, a_j in {-1, 0, 1}.
  std::size_t max_grid_points = 729;
};

/// Second-order necessary condition along a critical direction u in the tangent cone.
/// Certified inputs are decided exactly over T^2 = T^{2,a}. For class NONE an algebraic
/// infimum >= 0 still decides (T^2 is contained in T^{2,a}); a negative one is flagged and,
/// if enabled, checked against sampler MEMBER points.
OptimalityReport necessary_check(const PolySystem& sys, const Polynomial<Rational>& objective, const QVector& u,
                                 const CheckOptions& options = {});

/// Second-order sufficient condition along u: strictly positive infimum (or empty set) over
/// a certified T^2, or over T^{2,a} when parabolic regularity is asserted by the caller.
OptimalityReport sufficient_check(const PolySystem& sys, const Polynomial<Rational>& objective, const QVector& u,
                                  bool parabolic_regularity_asserted);

} // namespace sot

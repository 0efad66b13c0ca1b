#pragma once

#include "sotangent/polynomial.hpp"
#include "sotangent/rational.hpp"
#include "sotangent/tangent_algebra.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sot {

/// Shrinking sequence t_k and the thresholds the verdict fold uses.
struct DecaySchedule {
  std::vector<double> t_values;
  double project_tol = 1e-12;
  double decay_exponent_threshold = 0.5;
  double reject_floor = 1e-3;

  /// t_j = 2^-j for j = 4..20 with the default thresholds.
  static DecaySchedule standard();

  /// Throws ValidationError unless there are >= 6 positive, strictly decreasing t values
  /// and the thresholds are positive.
  void validate() const;
};

enum class Verdict { Member, NotMember, Inconclusive };

std::string to_string(Verdict v);

/// Float image of a PolySystem. Complex systems act on 2n real coordinates
/// (real parts first, then imaginary parts) with 2p real residuals.
class FloatSystem {
public:
  explicit FloatSystem(const PolySystem& sys);
  FloatSystem(std::size_t n, std::vector<Polynomial<double>> generators, bool complex);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return generators_.size(); }
  bool is_complex() const noexcept { return complex_; }
  std::size_t real_dim() const noexcept { return complex_ ? 2 * n_ : n_; }
  std::size_t real_equations() const noexcept { return complex_ ? 2 * size() : size(); }
  const std::vector<Polynomial<double>>& generators() const noexcept { return generators_; }

  /// Real residual vector at a point in real coordinates.
  RVector residual(const RVector& x) const;
  /// Row-major real_equations() x real_dim() Jacobian.
  std::vector<RVector> jacobian(const RVector& x) const;
  /// Size of each f_i near x0: |f_i(x0)| + ||grad f_i(x0)|| max(||x0||, radius).
  /// Residuals are measured relative to this so that convergence means a genuine
  /// drop of |f_i|, independent of how small the sampling scale t is.
  RVector equation_scales(const RVector& x0, double radius) const;
  /// max_i |f_i(x)| / scales[i] (scales of 0 count as 1).
  double scaled_residual(const RVector& x, const RVector& scales) const;
  /// max_i |f_i(x)|.
  double absolute_residual(const RVector& x) const;

  RVector realify(const CVector& z) const;

private:
  CVector complexify(const RVector& x) const;

  std::size_t n_;
  std::vector<Polynomial<double>> generators_;
  std::vector<std::vector<Polynomial<double>>> gradients_;
  bool complex_;
};

struct ProjectionResult {
  RVector x;
  bool converged = false;
  double scaled_residual = 0;
  double absolute_residual = 0;
  std::size_t iterations = 0;
};

/// Levenberg-Marquardt on sum |f_i|^2 (100 iterations) from x0 and 4 perturbed starts, each
/// followed by a minimum-norm Gauss-Newton polish toward the nearest point. Converged iff the
/// residual relative to equation_scales(x0, 1) drops to `tol`; the nearest converged point
/// wins. Non-convergence is reported, not thrown.
ProjectionResult project_to_variety(const FloatSystem& sys, const RVector& x0, double tol = 1e-12,
                                    std::uint64_t seed = 0);

struct DecaySample {
  double t = 0;
  double d = 0;              ///< ||project(x0) - x0|| / t^2 over the best converged seed
  bool converged = false;
  bool feasible = true;      ///< false when no seed got the scaled residual below sqrt(tol)
  double scaled_residual = 0;
  double absolute_residual = 0;
};

/// Numerical evidence for w in T^2_{0,u}X. Never a certificate.
struct MembershipVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<DecaySample> samples;
  double fitted_exponent = 0; ///< slope of log d against log t; +inf if every hit is exact, NaN if unfit
  std::vector<std::string> diagnostics;

  std::vector<std::pair<double, double>> normalized_distances() const;
};

/// Projects tu + t^2 w/2 onto X for each t in the schedule from 5 seeds and folds the
/// normalized distances into a verdict. `seed` drives the seed perturbations.
///
/// u is first scaled to unit length and w by 1/|u|^2, the same jet at unit speed, so the
/// schedule and the absolute thresholds do not depend on how u was scaled. Samples and d
/// refer to that parametrization.
MembershipVerdict t2_membership(const FloatSystem& sys, const RVector& u, const RVector& w,
                                const DecaySchedule& sched = DecaySchedule::standard(), std::uint64_t seed = 0);
MembershipVerdict t2_membership(const FloatSystem& sys, const CVector& u, const CVector& w,
                                const DecaySchedule& sched = DecaySchedule::standard(), std::uint64_t seed = 0);

struct SweepRow {
  RVector w;
  MembershipVerdict result;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Coordinate constraints ("w3 = 0", "w1 >= 0", ...) met by every MEMBER row and
  /// violated somewhere on the grid.
  std::vector<std::string> constraints;
  /// True when those constraints hold on exactly the MEMBER rows among decided rows.
  bool constraints_separate = false;
};

/// t2_membership over a grid of w. For complex systems u and w are real points of C^n.
SweepResult t2_case_sweep(const FloatSystem& sys, const RVector& u, const std::vector<RVector>& w_grid,
                          const DecaySchedule& sched = DecaySchedule::standard(), std::uint64_t seed = 0);

} // namespace sot

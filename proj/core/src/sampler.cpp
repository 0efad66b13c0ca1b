#include "sotangent/sampler.hpp"

#include "sotangent/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace sot {

DecaySchedule DecaySchedule::standard() {
  DecaySchedule s;
  for (int j = 4; j <= 20; ++j) s.t_values.push_back(std::ldexp(1.0, -j));
  return s;
}

void DecaySchedule::validate() const {
  if (t_values.size() < 6) throw ValidationError("decay schedule needs at least 6 t values");
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    if (!(t_values[k] > 0) || !std::isfinite(t_values[k]))
      throw ValidationError("decay schedule t values must be positive and finite");
    if (k > 0 && !(t_values[k] < t_values[k - 1]))
      throw ValidationError("decay schedule t values must be strictly decreasing");
  }
  if (!(project_tol > 0) || !(project_tol < 1)) throw ValidationError("project_tol must lie in (0, 1)");
  if (!(decay_exponent_threshold > 0)) throw ValidationError("decay_exponent_threshold must be positive");
  if (!(reject_floor > 0)) throw ValidationError("reject_floor must be positive");
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Member: return "MEMBER";
  case Verdict::NotMember: return "NOT_MEMBER";
  case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

FloatSystem::FloatSystem(const PolySystem& sys) : n_(sys.n()), complex_(sys.is_complex()) {
  for (const auto& f : sys.generators()) generators_.push_back(to_double(f));
  for (const auto& f : generators_) gradients_.push_back(gradient(f));
}

FloatSystem::FloatSystem(std::size_t n, std::vector<Polynomial<double>> generators, bool complex)
    : n_(n), generators_(std::move(generators)), complex_(complex) {
  if (n == 0 || generators_.empty()) throw ValidationError("float system needs variables and generators");
  for (const auto& f : generators_) {
    if (f.n_vars() != n) throw ValidationError("generator ring does not match n");
    gradients_.push_back(gradient(f));
  }
}

CVector FloatSystem::complexify(const RVector& x) const {
  if (x.size() != real_dim()) throw ValidationError("point has the wrong real dimension");
  CVector z(n_);
  for (std::size_t j = 0; j < n_; ++j) z[j] = complex_ ? Complex(x[j], x[n_ + j]) : Complex(x[j], 0.0);
  return z;
}

RVector FloatSystem::realify(const CVector& z) const {
  if (z.size() != n_) throw ValidationError("point has the wrong dimension");
  RVector x(real_dim());
  for (std::size_t j = 0; j < n_; ++j) {
    if (complex_) {
      x[j] = z[j].real();
      x[n_ + j] = z[j].imag();
    } else {
      if (z[j].imag() != 0) throw ValidationError("complex coordinate given to a real system");
      x[j] = z[j].real();
    }
  }
  return x;
}

RVector FloatSystem::residual(const RVector& x) const {
  RVector r(real_equations());
  if (!complex_) {
    for (std::size_t i = 0; i < size(); ++i) r[i] = evaluate(generators_[i], x);
    return r;
  }
  const CVector z = complexify(x);
  for (std::size_t i = 0; i < size(); ++i) {
    const Complex v = evaluate(generators_[i], z);
    r[i] = v.real();
    r[size() + i] = v.imag();
  }
  return r;
}

std::vector<RVector> FloatSystem::jacobian(const RVector& x) const {
  std::vector<RVector> jac(real_equations(), RVector(real_dim(), 0.0));
  if (!complex_) {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < n_; ++j) jac[i][j] = evaluate(gradients_[i][j], x);
    return jac;
  }
  // Cauchy-Riemann blocks [[Re f', -Im f'], [Im f', Re f']].
  const CVector z = complexify(x);
  const std::size_t p = size();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      const Complex d = evaluate(gradients_[i][j], z);
      jac[i][j] = d.real();
      jac[i][n_ + j] = -d.imag();
      jac[p + i][j] = d.imag();
      jac[p + i][n_ + j] = d.real();
    }
  return jac;
}

namespace {

double norm(const RVector& x) {
  double s = 0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

} // namespace

double FloatSystem::absolute_residual(const RVector& x) const {
  const CVector z = complexify(x);
  double worst = 0;
  for (const auto& f : generators_) worst = std::max(worst, std::abs(evaluate(f, z)));
  return worst;
}

RVector FloatSystem::equation_scales(const RVector& x0, double radius) const {
  const CVector z = complexify(x0);
  const double reach = std::max(norm(x0), radius);
  RVector scales;
  for (std::size_t i = 0; i < size(); ++i) {
    double g = 0;
    for (const auto& d : gradients_[i]) g += std::norm(evaluate(d, z));
    scales.push_back(std::abs(evaluate(generators_[i], z)) + std::sqrt(g) * reach);
  }
  return scales;
}

double FloatSystem::scaled_residual(const RVector& x, const RVector& scales) const {
  if (scales.size() != size()) throw ValidationError("one scale per generator expected");
  const CVector z = complexify(x);
  double worst = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double s = scales[i] > 0 && std::isfinite(scales[i]) ? scales[i] : 1.0;
    worst = std::max(worst, std::abs(evaluate(generators_[i], z)) / s);
  }
  return worst;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd to_eigen(const RVector& v) { return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())); }

RVector from_eigen(const VectorXd& v) { return RVector(v.data(), v.data() + v.size()); }

/// Solves for x = x0 + h v with each equation rescaled by its size near x0, so that
/// residuals of order t^6 or smaller stay well inside double range.
class DisplacementProblem {
public:
  DisplacementProblem(const FloatSystem& sys, const RVector& x0, double h)
      : sys_(sys), x0_(to_eigen(x0)), h_(h), scales_(sys.equation_scales(x0, h)) {
    const std::size_t p = sys.size();
    row_scale_.assign(sys.real_equations(), 1.0);
    for (std::size_t k = 0; k < row_scale_.size(); ++k) {
      const double s = scales_[k % p];
      if (s > 0 && std::isfinite(s)) row_scale_[k] = 1.0 / s;
    }
  }

  RVector point(const VectorXd& v) const { return from_eigen(x0_ + h_ * v); }

  VectorXd residual(const VectorXd& v) const {
    const auto r = sys_.residual(point(v));
    VectorXd out(static_cast<Eigen::Index>(r.size()));
    for (std::size_t k = 0; k < r.size(); ++k) out[static_cast<Eigen::Index>(k)] = r[k] * row_scale_[k];
    return out;
  }

  MatrixXd jacobian(const VectorXd& v) const {
    const auto jac = sys_.jacobian(point(v));
    MatrixXd out(static_cast<Eigen::Index>(jac.size()), static_cast<Eigen::Index>(sys_.real_dim()));
    for (std::size_t k = 0; k < jac.size(); ++k)
      for (std::size_t j = 0; j < jac[k].size(); ++j)
        out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = h_ * jac[k][j] * row_scale_[k];
    return out;
  }

  double scaled(const VectorXd& v) const { return sys_.scaled_residual(point(v), scales_); }
  double absolute(const VectorXd& v) const { return sys_.absolute_residual(point(v)); }

private:
  const FloatSystem& sys_;
  VectorXd x0_;
  double h_;
  RVector scales_;
  std::vector<double> row_scale_;
};

struct Attempt {
  VectorXd v;
  bool converged = false;
  double scaled = std::numeric_limits<double>::infinity();
  double absolute = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
};

constexpr std::size_t kMaxIterations = 100;
constexpr std::size_t kPolishIterations = 30;

Attempt solve(const DisplacementProblem& prob, VectorXd v, double tol) {
  Attempt best;
  auto consider = [&](const VectorXd& cand, double scaled) {
    const bool ok = scaled <= tol;
    if (ok && (!best.converged || cand.norm() < best.v.norm())) {
      best.v = cand;
      best.converged = true;
      best.scaled = scaled;
    } else if (!best.converged && scaled < best.scaled) {
      best.v = cand;
      best.scaled = scaled;
    }
  };

  VectorXd r = prob.residual(v);
  double scaled = prob.scaled(v);
  consider(v, scaled);
  double mu = 1e-3;
  std::size_t it = 0;
  for (; it < kMaxIterations && scaled > tol; ++it) {
    const MatrixXd jac = prob.jacobian(v);
    const MatrixXd jjt = jac * jac.transpose();
    const double trace = jjt.trace();
    if (!(trace > 0) || !std::isfinite(trace)) break;
    const double lambda = mu * trace / static_cast<double>(jjt.rows());
    const MatrixXd damped = jjt + lambda * MatrixXd::Identity(jjt.rows(), jjt.cols());
    const VectorXd step = -jac.transpose() * damped.ldlt().solve(r);
    const VectorXd cand = v + step;
    const VectorXd rc = prob.residual(cand);
    if (rc.allFinite() && rc.norm() < r.norm()) {
      v = cand;
      r = rc;
      scaled = prob.scaled(v);
      consider(v, scaled);
      mu = std::max(mu / 10, 1e-15);
    } else {
      mu *= 10;
      if (mu > 1e12) break;
    }
  }
  best.iterations = it;

  // Minimum-norm Gauss-Newton: v <- J^+ (J v - r) has fixed points on X normal to X,
  // i.e. candidates for the nearest point.
  for (std::size_t k = 0; k < kPolishIterations; ++k) {
    const MatrixXd jac = prob.jacobian(v);
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(jac);
    cod.setThreshold(1e-10);
    const VectorXd next = cod.solve(jac * v - r);
    if (!next.allFinite()) break;
    const double moved = (next - v).norm();
    v = next;
    r = prob.residual(v);
    if (!r.allFinite()) break;
    consider(v, prob.scaled(v));
    if (moved <= 1e-14 * v.norm()) break;
  }
  best.absolute = prob.absolute(best.v);
  return best;
}

} // namespace

std::vector<std::pair<double, double>> MembershipVerdict::normalized_distances() const {
  std::vector<std::pair<double, double>> out;
  for (const auto& s : samples) out.emplace_back(s.t, s.d);
  return out;
}

namespace {

constexpr int kRandomSeeds = 4;
constexpr double kSeedRadius = 0.5;

double fit_exponent(const std::vector<DecaySample>& samples, std::size_t& exact_hits) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  exact_hits = 0;
  for (const auto& s : samples) {
    if (!s.converged) continue;
    if (s.d == 0) {
      ++exact_hits;
      continue;
    }
    const double x = std::log(s.t);
    const double y = std::log(s.d);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return exact_hits > 0 && m == 0 ? std::numeric_limits<double>::infinity()
                                             : std::numeric_limits<double>::quiet_NaN();
  const double mm = static_cast<double>(m);
  const double denom = mm * sxx - sx * sx;
  if (denom == 0) return std::numeric_limits<double>::quiet_NaN();
  return (mm * sxy - sx * sy) / denom;
}

// x0 itself plus kRandomSeeds displacements of length kSeedRadius (in units of h); the
// nearest converged result wins, otherwise the smallest residual.
Attempt best_of_seeds(const DisplacementProblem& prob, std::size_t dim, double tol, std::uint64_t seed,
                      std::size_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;

  std::vector<VectorXd> starts{VectorXd::Zero(static_cast<Eigen::Index>(dim))};
  for (int s = 0; s < kRandomSeeds; ++s) {
    VectorXd dir(static_cast<Eigen::Index>(dim));
    for (auto& c : dir) c = normal(rng);
    starts.push_back(kSeedRadius * dir / dir.norm());
  }

  Attempt best;
  for (const auto& start : starts) {
    auto a = solve(prob, start, tol);
    const bool better = a.converged ? (!best.converged || a.v.norm() < best.v.norm())
                                    : (!best.converged && a.scaled < best.scaled);
    if (better) best = std::move(a);
  }
  return best;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

MembershipVerdict membership_real_coords(const FloatSystem& sys, const RVector& u, const RVector& w,
                                         const DecaySchedule& sched, std::uint64_t seed) {
  sched.validate();
  const double scale = norm(u);
  if (scale == 0) throw PreconditionError("t2_membership requires u != 0");
  const std::size_t dim = sys.real_dim();
  const double tol = sched.project_tol;
  const double feasibility = std::sqrt(tol);

  MembershipVerdict out;
  for (std::size_t k = 0; k < sched.t_values.size(); ++k) {
    const double t = sched.t_values[k];
    const double h = t * t;
    RVector x0(dim);
    // Unit-speed reparametrization: (u, w) -> (u/|u|, w/|u|^2) keeps w in T^2 or out of it.
    for (std::size_t j = 0; j < dim; ++j) x0[j] = t * u[j] / scale + 0.5 * h * w[j] / (scale * scale);
    const DisplacementProblem prob(sys, x0, h);

    const Attempt best = best_of_seeds(prob, dim, tol, seed, k);

    DecaySample sample;
    sample.t = t;
    sample.d = best.v.size() ? best.v.norm() : std::numeric_limits<double>::infinity();
    sample.converged = best.converged;
    sample.feasible = best.converged || best.scaled <= feasibility;
    sample.scaled_residual = best.scaled;
    sample.absolute_residual = best.absolute;
    if (!sample.converged)
      out.diagnostics.push_back("t=" + format_double(t) + ": no seed converged (scaled residual " +
                                format_double(best.scaled) + ")");
    out.samples.push_back(sample);
  }

  std::size_t exact_hits = 0;
  out.fitted_exponent = fit_exponent(out.samples, exact_hits);
  if (exact_hits > 0 && std::isfinite(out.fitted_exponent))
    out.diagnostics.push_back(std::to_string(exact_hits) + " exact hit(s) excluded from the exponent fit");

  const std::size_t total = out.samples.size();
  const std::size_t tail = (total + 2) / 3;
  bool tail_rejects = true;
  for (std::size_t k = total - tail; k < total; ++k) {
    const auto& s = out.samples[k];
    if (!(!s.feasible || (s.converged && s.d >= sched.reject_floor))) tail_rejects = false;
  }
  const auto converged =
      static_cast<std::size_t>(std::count_if(out.samples.begin(), out.samples.end(), [](const auto& s) {
        return s.converged;
      }));

  if (tail_rejects) {
    out.verdict = Verdict::NotMember;
  } else if (converged < 6) {
    out.verdict = Verdict::Inconclusive;
    out.diagnostics.push_back("only " + std::to_string(converged) + " projections converged");
  } else if (converged == total && out.fitted_exponent >= sched.decay_exponent_threshold &&
             out.samples.back().d < 10 * feasibility) {
    out.verdict = Verdict::Member;
  } else {
    out.verdict = Verdict::Inconclusive;
  }
  return out;
}

} // namespace

ProjectionResult project_to_variety(const FloatSystem& sys, const RVector& x0, double tol, std::uint64_t seed) {
  if (x0.size() != sys.real_dim()) throw ValidationError("projection start has the wrong dimension");
  const DisplacementProblem prob(sys, x0, 1.0);
  const auto a = best_of_seeds(prob, x0.size(), tol, seed, 0);
  return {prob.point(a.v), a.converged, a.scaled, a.absolute, a.iterations};
}

MembershipVerdict t2_membership(const FloatSystem& sys, const RVector& u, const RVector& w,
                                const DecaySchedule& sched, std::uint64_t seed) {
  if (u.size() != sys.n() || w.size() != sys.n()) throw ValidationError("u and w must have dimension n");
  if (!sys.is_complex()) return membership_real_coords(sys, u, w, sched, seed);
  return membership_real_coords(sys, sys.realify(CVector(u.begin(), u.end())),
                                sys.realify(CVector(w.begin(), w.end())), sched, seed);
}

MembershipVerdict t2_membership(const FloatSystem& sys, const CVector& u, const CVector& w,
                                const DecaySchedule& sched, std::uint64_t seed) {
  return membership_real_coords(sys, sys.realify(u), sys.realify(w), sched, seed);
}

SweepResult t2_case_sweep(const FloatSystem& sys, const RVector& u, const std::vector<RVector>& w_grid,
                          const DecaySchedule& sched, std::uint64_t seed) {
  SweepResult out;
  for (const auto& w : w_grid) out.rows.push_back({w, t2_membership(sys, u, w, sched, seed)});

  auto is = [](const SweepRow& r, Verdict v) { return r.result.verdict == v; };
  const bool any_member = std::any_of(out.rows.begin(), out.rows.end(), [&](const auto& r) { return is(r, Verdict::Member); });
  if (!any_member) {
    const bool any_decided =
        std::any_of(out.rows.begin(), out.rows.end(), [&](const auto& r) { return is(r, Verdict::NotMember); });
    if (any_decided) out.constraints.push_back("empty");
    out.constraints_separate = any_decided && std::none_of(out.rows.begin(), out.rows.end(), [&](const auto& r) {
                                 return is(r, Verdict::Inconclusive);
                               });
    return out;
  }

  using Test = bool (*)(double);
  const std::pair<const char*, Test> tests[] = {
      {" = 0", [](double x) { return x == 0; }},
      {" >= 0", [](double x) { return x >= 0; }},
      {" <= 0", [](double x) { return x <= 0; }},
  };
  std::vector<std::pair<std::size_t, Test>> chosen;
  for (std::size_t j = 0; j < sys.n(); ++j) {
    for (const auto& [label, test] : tests) {
      bool members_ok = true;
      bool cuts = false;
      for (const auto& r : out.rows) {
        if (is(r, Verdict::Member) && !test(r.w[j])) members_ok = false;
        if (!test(r.w[j])) cuts = true;
      }
      if (members_ok && cuts) {
        out.constraints.push_back("w" + std::to_string(j + 1) + label);
        chosen.emplace_back(j, test);
        break;
      }
    }
  }
  out.constraints_separate = true;
  for (const auto& r : out.rows) {
    if (is(r, Verdict::Inconclusive)) continue;
    const bool predicted =
        std::all_of(chosen.begin(), chosen.end(), [&](const auto& c) { return c.second(r.w[c.first]); });
    if (predicted != is(r, Verdict::Member)) out.constraints_separate = false;
  }
  return out;
}

} // namespace sot

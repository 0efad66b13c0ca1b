#include "sotangent/optimality.hpp"

#include "sotangent/errors.hpp"

#include <algorithm>

namespace sot {

std::string to_string(Infimum::Kind k) {
  switch (k) {
  case Infimum::Kind::Finite: return "finite";
  case Infimum::Kind::NegInfinity: return "neg_inf";
  case Infimum::Kind::Empty: return "empty";
  }
  return "empty";
}

std::string to_string(SetUsed s) {
  switch (s) {
  case SetUsed::Algebraic: return "ALGEBRAIC";
  case SetUsed::GeometricCertified: return "GEOMETRIC_CERTIFIED";
  case SetUsed::GeometricSampled: return "GEOMETRIC_SAMPLED";
  }
  return "ALGEBRAIC";
}

std::string to_string(OptimalityVerdict v) {
  switch (v) {
  case OptimalityVerdict::NecessaryHolds: return "NECESSARY_HOLDS";
  case OptimalityVerdict::NecessaryFails: return "NECESSARY_FAILS";
  case OptimalityVerdict::SufficientHolds: return "SUFFICIENT_HOLDS";
  case OptimalityVerdict::Indeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

AffineInfimum affine_infimum(const QVector& g, const Rational& c, const AffineSubspace& s) {
  if (g.size() != s.ambient_dim()) throw ValidationError("gradient and subspace dimensions differ");
  if (s.is_empty()) return {Infimum::empty(), std::nullopt};
  const Rational at_point = c + dot(g, s.point());
  for (const auto& b : s.basis()) {
    const Rational slope = dot(g, b);
    if (sgn(slope) == 0) continue;
    // Walk along b until the value reaches -1.
    const Rational lambda = (Rational(-1) - at_point) / slope;
    QVector w = s.point();
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += lambda * b[j];
    return {Infimum::neg_infinity(), std::move(w)};
  }
  return {Infimum::finite(at_point), s.point()};
}

namespace {

std::size_t real_dim(const PolySystem& sys) { return sys.is_complex() ? 2 * sys.n() : sys.n(); }

QVector realify(const PolySystem& sys, const QVector& u) {
  if (!sys.is_complex()) return u;
  QVector out(u);
  out.resize(2 * u.size(), Rational(0));
  return out;
}

/// T^{2,a} as a real affine subspace: over C the complex span of each basis vector b
/// contributes b and i b.
AffineSubspace realify(const PolySystem& sys, const AffineSubspace& s) {
  if (!sys.is_complex()) return s;
  const std::size_t n = sys.n();
  if (s.is_empty()) return AffineSubspace::empty(2 * n);
  std::vector<QVector> basis;
  for (const auto& b : s.basis()) basis.push_back(realify(sys, b));
  for (const auto& b : s.basis()) {
    QVector ib(2 * n, Rational(0));
    std::copy(b.begin(), b.end(), ib.begin() + static_cast<long>(n));
    basis.push_back(std::move(ib));
  }
  return AffineSubspace::make(realify(sys, s.point()), std::move(basis));
}

void check_objective(const PolySystem& sys, const Polynomial<Rational>& objective) {
  if (objective.n_vars() != real_dim(sys))
    throw ValidationError("objective must have " + std::to_string(real_dim(sys)) +
                          " variables (real coordinates of the ambient space)");
}

QVector linear_part(const Polynomial<Rational>& f) {
  QVector g(f.n_vars(), Rational(0));
  const auto linear = homogeneous_component(f, 1);
  for (const auto& [e, c] : linear.terms())
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) g[k] = c;
  return g;
}

/// <u, Hess f(0) u> = 2 f_2(u).
Rational quadratic_term(const Polynomial<Rational>& f, const QVector& u) {
  return Rational(2) * evaluate(homogeneous_component(f, 2), u);
}

Rational objective_value(const QVector& g, const Rational& c, const QVector& w) { return c + dot(g, w); }

struct Setup {
  QVector u_real;
  QVector g;
  Rational first_order;
  Rational c;
  Certificate cert;
  AffineSubspace t2a;
};

Setup prepare(const PolySystem& sys, const Polynomial<Rational>& objective, const QVector& u) {
  check_objective(sys, objective);
  if (u.size() != sys.n()) throw ValidationError("direction has the wrong dimension");
  if (!tangent_cone_membership(sys, u))
    throw PreconditionError("direction " + to_string(u) + " is not in the tangent cone of the generators");
  Setup s{realify(sys, u), linear_part(objective), 0, 0, {}, AffineSubspace::empty(real_dim(sys))};
  s.first_order = dot(s.g, s.u_real);
  if (sgn(s.first_order) != 0)
    throw PreconditionError("direction " + to_string(u) + " is not critical: <grad f(0), u> = " +
                            to_string(s.first_order));
  s.c = quadratic_term(objective, s.u_real);
  s.cert = classify(sys, u);
  s.t2a = realify(sys, algebraic_t2(sys, u));
  return s;
}

OptimalityReport base_report(const QVector& u, const Setup& s) {
  OptimalityReport r;
  r.direction = u;
  r.first_order_value = s.first_order;
  r.is_critical = true;
  r.quadratic_term = s.c;
  r.certificate = s.cert;
  return r;
}

bool nonnegative(const Infimum& inf) {
  return inf.kind == Infimum::Kind::Empty || (inf.kind == Infimum::Kind::Finite && sgn(inf.value) >= 0);
}

std::vector<QVector> grid_points(const AffineSubspace& s, std::size_t cap) {
  std::vector<QVector> out;
  if (s.is_empty()) return out;
  const std::size_t k = s.basis().size();
  std::vector<int> digits(k, -1);
  while (out.size() < cap) {
    QVector coeffs;
    for (int d : digits) coeffs.emplace_back(d);
    out.push_back(s.at(coeffs));
    std::size_t j = 0;
    while (j < k && digits[j] == 1) digits[j++] = -1;
    if (j == k) break;
    ++digits[j];
  }
  return out;
}

Verdict sample_membership(const PolySystem& sys, const FloatSystem& fs, const QVector& u, const QVector& w,
                          const CheckOptions& o) {
  if (!sys.is_complex()) return t2_membership(fs, to_double(u), to_double(w), o.schedule, o.seed).verdict;
  const std::size_t n = sys.n();
  CVector uc = to_complex(u);
  CVector wc(n);
  for (std::size_t j = 0; j < n; ++j) wc[j] = Complex(to_double(w[j]), to_double(w[n + j]));
  return t2_membership(fs, uc, wc, o.schedule, o.seed).verdict;
}

} // namespace

std::vector<FirstOrder> first_order_scan(const PolySystem& sys, const Polynomial<Rational>& objective,
                                         const std::vector<QVector>& directions) {
  check_objective(sys, objective);
  const QVector g = linear_part(objective);
  std::vector<FirstOrder> out;
  for (const auto& u : directions) {
    if (u.size() != sys.n()) throw ValidationError("direction has the wrong dimension");
    Rational v = dot(g, realify(sys, u));
    const bool critical = sgn(v) == 0;
    out.push_back({std::move(v), critical});
  }
  return out;
}

OptimalityReport necessary_check(const PolySystem& sys, const Polynomial<Rational>& objective, const QVector& u,
                                 const CheckOptions& options) {
  const Setup s = prepare(sys, objective, u);
  OptimalityReport r = base_report(u, s);
  const auto alg = affine_infimum(s.g, s.c, s.t2a);
  r.algebraic_infimum = alg.infimum;
  r.infimum = alg.infimum;

  if (s.cert.certified()) {
    r.set_used = SetUsed::GeometricCertified;
    r.notes.push_back(to_string(s.cert.kind) + " certificate: T^2 = T^{2,a} along u");
  } else {
    r.set_used = SetUsed::Algebraic;
  }

  if (nonnegative(alg.infimum)) {
    r.verdict = OptimalityVerdict::NecessaryHolds;
    if (alg.infimum.kind == Infimum::Kind::Finite) r.witness = alg.witness;
    if (!s.cert.certified())
      r.notes.push_back("T^2 is contained in T^{2,a}, so a nonnegative algebraic infimum suffices");
    return r;
  }

  if (s.cert.certified()) {
    r.verdict = OptimalityVerdict::NecessaryFails;
    r.witness = alg.witness;
    return r;
  }

  r.algebraic_inconclusive = true;
  r.verdict = OptimalityVerdict::Indeterminate;
  r.notes.push_back("class NONE: a negative infimum over T^{2,a} does not refute the condition on T^2");
  if (!options.corroborate_by_sampling) return r;

  const FloatSystem fs(sys);
  std::vector<QVector> candidates = grid_points(s.t2a, options.max_grid_points);
  for (const auto& w : options.candidates_w) {
    if (w.size() != real_dim(sys)) throw ValidationError("candidate w has the wrong dimension");
    if (std::find(candidates.begin(), candidates.end(), w) == candidates.end()) candidates.push_back(w);
  }

  std::optional<std::size_t> best;
  for (const auto& w : candidates) {
    SampledCandidate sc{w, Verdict::Inconclusive, objective_value(s.g, s.c, w)};
    if (s.t2a.contains(w)) sc.verdict = sample_membership(sys, fs, u, w, options);
    else sc.verdict = Verdict::NotMember; // outside T^{2,a}, hence outside T^2
    r.sampled.push_back(std::move(sc));
    const auto& last = r.sampled.back();
    if (last.verdict == Verdict::Member && (!best || last.value < r.sampled[*best].value))
      best = r.sampled.size() - 1;
  }

  if (!best) {
    r.notes.push_back("no sampled candidate was a numerical member of T^2");
    return r;
  }
  r.set_used = SetUsed::GeometricSampled;
  r.exact = false;
  r.infimum = Infimum::finite(r.sampled[*best].value);
  r.witness = r.sampled[*best].w;
  r.verdict = sgn(r.infimum.value) < 0 ? OptimalityVerdict::NecessaryFails : OptimalityVerdict::NecessaryHolds;
  r.notes.push_back("numerical evidence: minimum over " + std::to_string(r.sampled.size()) +
                    " sampled candidates, MEMBER points only");
  return r;
}

OptimalityReport sufficient_check(const PolySystem& sys, const Polynomial<Rational>& objective, const QVector& u,
                                  bool parabolic_regularity_asserted) {
  const Setup s = prepare(sys, objective, u);
  OptimalityReport r = base_report(u, s);
  const auto alg = affine_infimum(s.g, s.c, s.t2a);
  r.algebraic_infimum = alg.infimum;
  r.infimum = alg.infimum;
  r.witness = alg.witness;

  const bool positive = alg.infimum.kind == Infimum::Kind::Empty ||
                        (alg.infimum.kind == Infimum::Kind::Finite && sgn(alg.infimum.value) > 0);
  if (alg.infimum.kind == Infimum::Kind::Finite) r.margin = alg.infimum.value;

  if (s.cert.certified()) {
    r.set_used = SetUsed::GeometricCertified;
    if (positive)
      r.verdict = OptimalityVerdict::SufficientHolds;
    else if (nonnegative(alg.infimum))
      r.verdict = OptimalityVerdict::NecessaryHolds;
    else
      r.verdict = OptimalityVerdict::NecessaryFails;
    return r;
  }

  r.set_used = SetUsed::Algebraic;
  if (!parabolic_regularity_asserted) {
    r.verdict = OptimalityVerdict::Indeterminate;
    r.notes.push_back("class NONE and parabolic regularity not asserted");
  } else if (positive) {
    r.verdict = OptimalityVerdict::SufficientHolds;
    r.notes.push_back("parabolic regularity asserted by the caller; infimum over T^{2,a} bounds the one over T^2");
  } else {
    r.verdict = OptimalityVerdict::Indeterminate;
    r.algebraic_inconclusive = !nonnegative(alg.infimum);
    r.notes.push_back("infimum over T^{2,a} is not positive; it only bounds the infimum over T^2 from below");
  }
  return r;
}

} // namespace sot

#include "sotangent/jet_lift.hpp"

#include "sotangent/errors.hpp"

#include <algorithm>
#include <string>

namespace sot {

std::string to_string(SurjectivityClass c) {
  switch (c) {
  case SurjectivityClass::Smooth: return "SMOOTH";
  case SurjectivityClass::HomogeneousCone: return "HOMOGENEOUS_CONE";
  case SurjectivityClass::HypersurfaceNondegenerate: return "HYPERSURFACE_NONDEG";
  case SurjectivityClass::CompleteIntersectionNondegenerate: return "CI_NONDEG";
  case SurjectivityClass::None: return "NONE";
  }
  return "NONE";
}

namespace {

Matrix jacobian_at_origin(const PolySystem& sys) {
  Matrix j(sys.size(), sys.n());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const auto linear = homogeneous_component(sys[i], 1);
    for (const auto& [e, c] : linear.terms())
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k]) j(i, k) = c;
  }
  return j;
}

std::vector<unsigned> generator_orders(const PolySystem& sys) {
  std::vector<unsigned> m;
  for (const auto& f : sys.generators()) m.push_back(*order_of(f));
  return m;
}

struct BlockWitness {
  std::size_t rank;
  std::optional<std::vector<std::size_t>> columns;
  Rational det;
};

BlockWitness block_witness(const Matrix& m) {
  BlockWitness b{rank(m), invertible_column_subset(m), 0};
  if (b.columns) b.det = determinant(m.select_columns(*b.columns));
  return b;
}

} // namespace

Certificate classify(const PolySystem& sys, const QVector& u) {
  if (!tangent_cone_membership(sys, u))
    throw PreconditionError("classify requires u in the tangent cone of the generators");

  const std::size_t p = sys.size();
  const auto orders = generator_orders(sys);
  const Matrix jac0 = jacobian_at_origin(sys);
  const Matrix grad_u = initial_gradient_matrix(sys, u);
  const auto jac_block = block_witness(jac0);
  const auto grad_block = block_witness(grad_u);

  Certificate cert;
  cert.direction = u;
  cert.orders = orders;

  struct Candidate {
    SurjectivityClass kind;
    const Matrix* matrix;
    const BlockWitness* block;
  };
  std::vector<Candidate> passed;

  if (jac_block.rank == p)
    passed.push_back({SurjectivityClass::Smooth, &jac0, &jac_block});
  else
    cert.failed_checks.push_back("SMOOTH: Jacobian at 0 has rank " + std::to_string(jac_block.rank) + " < " +
                                 std::to_string(p));

  std::vector<std::size_t> inhomogeneous;
  for (std::size_t i = 0; i < p; ++i)
    if (!sys[i].is_homogeneous()) inhomogeneous.push_back(i + 1);
  if (!inhomogeneous.empty()) {
    std::string which;
    for (auto i : inhomogeneous) which += (which.empty() ? "" : ", ") + std::to_string(i);
    cert.failed_checks.push_back("HOMOGENEOUS_CONE: generator(s) " + which + " not homogeneous");
  } else if (grad_block.rank < p) {
    cert.failed_checks.push_back("HOMOGENEOUS_CONE: gradients at u have rank " + std::to_string(grad_block.rank) +
                                 " < " + std::to_string(p) + " (u lies on a singular ray)");
  } else {
    passed.push_back({SurjectivityClass::HomogeneousCone, &grad_u, &grad_block});
  }

  if (p != 1)
    cert.failed_checks.push_back("HYPERSURFACE_NONDEG: " + std::to_string(p) + " generators");
  else if (grad_block.rank == 0)
    cert.failed_checks.push_back("HYPERSURFACE_NONDEG: grad f^[*](u) = 0");
  else
    passed.push_back({SurjectivityClass::HypersurfaceNondegenerate, &grad_u, &grad_block});

  if (grad_block.rank == p)
    passed.push_back({SurjectivityClass::CompleteIntersectionNondegenerate, &grad_u, &grad_block});
  else
    cert.failed_checks.push_back("CI_NONDEG: initial-form gradients at u have rank " +
                                 std::to_string(grad_block.rank) + " < " + std::to_string(p));

  if (passed.empty()) return cert;
  for (const auto& c : passed) cert.passing.push_back(c.kind);

  // A single generator is reported as a hypersurface even when it is also smooth or a
  // cone; the witness is then grad f^[*](u).
  auto chosen = passed.front();
  for (const auto& c : passed)
    if (c.kind == SurjectivityClass::HypersurfaceNondegenerate) chosen = c;
  cert.kind = chosen.kind;
  cert.gradient_matrix = *chosen.matrix;
  cert.rank = chosen.block->rank;
  cert.block_columns = *chosen.block->columns;
  cert.block_determinant = chosen.block->det;
  return cert;
}

void verify_certificate(const PolySystem& sys, const Certificate& cert) {
  if (!cert.certified()) return;
  const std::size_t p = sys.size();
  const auto& u = cert.direction;
  if (!tangent_cone_membership(sys, u)) throw CertificateError("certificate direction is not in the tangent cone");
  if (cert.orders != generator_orders(sys)) throw CertificateError("generator orders do not match");

  const Matrix expected =
      cert.kind == SurjectivityClass::Smooth ? jacobian_at_origin(sys) : initial_gradient_matrix(sys, u);
  if (!(expected == cert.gradient_matrix)) throw CertificateError("witness matrix does not match recomputation");
  if (rank(expected) != cert.rank || cert.rank != p) throw CertificateError("witness rank is not p");
  if (cert.block_columns.size() != p) throw CertificateError("invertible block has the wrong size");
  const Rational det = determinant(expected.select_columns(cert.block_columns));
  if (sgn(det) == 0 || det != cert.block_determinant) throw CertificateError("block determinant mismatch");

  switch (cert.kind) {
  case SurjectivityClass::HomogeneousCone:
    for (std::size_t i = 0; i < p; ++i)
      if (!sys[i].is_homogeneous() || sys[i].degree() != cert.orders[i])
        throw CertificateError("generator " + std::to_string(i + 1) + " is not homogeneous of the stated degree");
    break;
  case SurjectivityClass::HypersurfaceNondegenerate:
    if (p != 1) throw CertificateError("hypersurface certificate with several generators");
    break;
  default: break;
  }
}

bool ResidualReport::clean() const {
  return std::all_of(first_nonzero.begin(), first_nonzero.end(), [](const auto& o) { return !o.has_value(); });
}

ResidualReport verify_arc(const PolySystem& sys, const TruncatedSeries<Rational>& series) {
  if (series.dim() != sys.n()) throw ValidationError("arc dimension does not match the system");
  const bool through_origin = is_zero(series.coeff(0));
  ResidualReport report;
  for (const auto& f : sys.generators()) {
    const std::size_t m = *order_of(f);
    const std::size_t horizon = through_origin ? series.order() + m - 1 : series.order();
    const auto composed = compose_series(f, series.with_order(horizon));
    const std::size_t v = composed.valuation();
    report.horizon.push_back(horizon);
    report.first_nonzero.push_back(v > horizon ? std::nullopt : std::optional<std::size_t>(v));
  }
  return report;
}

ResidualReport verify_arc(const PolySystem& sys, JetArc& arc) {
  auto report = verify_arc(sys, arc.series);
  arc.residual_orders.clear();
  for (std::size_t i = 0; i < report.horizon.size(); ++i) {
    const auto& nz = report.first_nonzero[i];
    arc.residual_orders.push_back(nz ? (*nz == 0 ? 0 : *nz - 1) : report.horizon[i]);
  }
  return report;
}

JetArc lift_second_jet(const PolySystem& sys, const Certificate& cert, const QVector& u, const QVector& w,
                       std::size_t order) {
  if (!cert.certified()) throw PreconditionError("lift_second_jet requires a certified direction");
  if (order < 2) throw ValidationError("truncation order must be at least 2");
  if (u.size() != sys.n() || w.size() != sys.n()) throw ValidationError("jet dimension does not match the system");
  if (cert.direction != u) throw PreconditionError("certificate was issued for a different direction");

  {
    auto [a, b] = algebraic_t2_system(sys, u);
    const QVector lhs = a.apply(w);
    for (std::size_t i = 0; i < sys.size(); ++i)
      if (lhs[i] != b[i])
        throw InadmissibleJet("w = " + to_string(w) + " violates generator " + std::to_string(i + 1) +
                              ": 1/2 <grad f^[*](u), w> + f^[*]+1(u) = " + to_string(Rational(lhs[i] - b[i])) +
                              " != 0");
  }

  const std::size_t p = sys.size();
  const Matrix block = cert.gradient_matrix.select_columns(cert.block_columns);
  if (sgn(determinant(block)) == 0) throw CertificateError("certificate block is singular");

  TruncatedSeries<Rational> gamma(sys.n(), order);
  gamma.coeff(1) = u;
  for (std::size_t j = 0; j < sys.n(); ++j) gamma.coeff(2)[j] = w[j] / 2;

  const auto orders = generator_orders(sys);
  // s_k enters gamma at t^{k+2} and first moves t^{-m_i} f_i(gamma) at order k+1.
  for (std::size_t k = 1; k + 2 <= order; ++k) {
    QVector rhs(p);
    for (std::size_t i = 0; i < p; ++i) {
      const std::size_t target = orders[i] + k + 1;
      rhs[i] = -compose_series(sys[i], gamma.with_order(target))[target];
    }
    if (is_zero(rhs)) continue;
    auto step = solve_square(block, rhs);
    if (!step) throw CertificateError("certificate block is singular");
    for (std::size_t c = 0; c < p; ++c) gamma.coeff(k + 2)[cert.block_columns[c]] += (*step)[c];
  }

  JetArc arc{std::move(gamma), u, w, {}, cert};
  const auto report = verify_arc(sys, arc);
  if (!report.clean()) throw CertificateError("lifted arc does not annihilate the generators; certificate invalid");
  return arc;
}

} // namespace sot

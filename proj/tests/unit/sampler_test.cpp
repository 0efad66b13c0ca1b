#include "sotangent/jet_lift.hpp"
#include "sotangent/parser.hpp"
#include "sotangent/sampler.hpp"

#include "random_systems.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace sot {
namespace {

PolySystem S(std::vector<const char*> gens, std::size_t n, Field field = Field::RationalExact) {
  std::vector<Polynomial<Rational>> ps;
  for (auto g : gens) ps.push_back(parse_polynomial(g, n));
  return PolySystem(n, std::move(ps), field);
}

const FloatSystem& parabola() {
  static const FloatSystem s(S({"y - x^2"}, 2));
  return s;
}

const FloatSystem& whitney() {
  static const FloatSystem s(S({"z^2 - x^3*y^3"}, 3));
  return s;
}

TEST(DecaySchedule, StandardAndValidation) {
  const auto s = DecaySchedule::standard();
  ASSERT_EQ(s.t_values.size(), 17u);
  EXPECT_EQ(s.t_values.front(), 1.0 / 16);
  EXPECT_EQ(s.t_values.back(), std::ldexp(1.0, -20));
  EXPECT_NO_THROW(s.validate());

  auto bad = s;
  bad.t_values.resize(5);
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = s;
  std::swap(bad.t_values[0], bad.t_values[1]);
  EXPECT_THROW(bad.validate(), ValidationError);
  bad = s;
  bad.reject_floor = 0;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Projection, NearestPointOnParabola) {
  // Closest point to (1, 2) on y = x^2 solves 2x^3 - 3x - 1 = 0, i.e. x = (1 + sqrt 3) / 2.
  const auto r = project_to_variety(parabola(), {1, 2});
  ASSERT_TRUE(r.converged);
  EXPECT_LT(r.absolute_residual, 1e-12);
  EXPECT_NEAR(r.x[0], (1 + std::sqrt(3.0)) / 2, 1e-8);
  EXPECT_NEAR(r.x[1], r.x[0] * r.x[0], 1e-12);
}

TEST(Projection, PointOnVarietyStays) {
  const auto r = project_to_variety(parabola(), {0.5, 0.25});
  ASSERT_TRUE(r.converged);
  EXPECT_EQ(r.x, (RVector{0.5, 0.25}));
}

TEST(Projection, WhitneyNegativeQuadrantFallsToZEqualsZero) {
  // x^3 y^3 < 0 at the start, so the nearest real points have z = 0. They sit on the cusp
  // z^2 = -x^3 y^3 near a coordinate axis, where Gauss-Newton only converges linearly: the
  // residual gets small but not to 1e-12 within the iteration budget.
  const auto r = project_to_variety(whitney(), {1, -1, 0.5});
  EXPECT_NEAR(r.x[2], 0, 1e-3);
  EXPECT_LT(r.absolute_residual, 1e-5);
}

TEST(FloatSystem, ComplexRealification) {
  const FloatSystem c(S({"z^2 - x^3*y^3"}, 3, Field::ComplexFloat));
  EXPECT_EQ(c.real_dim(), 6u);
  EXPECT_EQ(c.real_equations(), 2u);
  // z = i: z^2 = -1, and x = y = 1 gives x^3 y^3 = 1, so f = -2.
  const auto r = c.residual({1, 1, 0, 0, 0, 1});
  EXPECT_NEAR(r[0], -2, 1e-15);
  EXPECT_NEAR(r[1], 0, 1e-15);
  const auto j = c.jacobian({1, 1, 0, 0, 0, 1});
  ASSERT_EQ(j.size(), 2u);
  ASSERT_EQ(j[0].size(), 6u);
  // d Re f / d Im z = -2 Im z for f = z^2; Cauchy-Riemann gives d Im f / d Re z the same.
  EXPECT_NEAR(j[0][5], -2, 1e-15);
  EXPECT_NEAR(j[1][2], 2, 1e-15);
}

TEST(Membership, PublishedExamples) {
  EXPECT_EQ(t2_membership(whitney(), RVector{1, 1, 0}, RVector{5, -3, 0}).verdict, Verdict::Member);
  EXPECT_EQ(t2_membership(whitney(), RVector{1, -1, 0}, RVector{0, 0, 0}).verdict, Verdict::NotMember);
  EXPECT_EQ(t2_membership(whitney(), RVector{1, -1, 0}, RVector{3, 1, 0}).verdict, Verdict::NotMember);
  EXPECT_EQ(t2_membership(whitney(), RVector{1, 1, 0}, RVector{0, 0, 2}).verdict, Verdict::NotMember);
}

TEST(Membership, ComplexWhitney) {
  const FloatSystem c(S({"z^2 - x^3*y^3"}, 3, Field::ComplexFloat));
  const CVector u{1, -1, 0};
  EXPECT_EQ(t2_membership(c, u, CVector{0, 0, 0}).verdict, Verdict::Member);
  EXPECT_EQ(t2_membership(c, u, CVector{Complex(1, 1), -2, 0}).verdict, Verdict::Member);
  EXPECT_EQ(t2_membership(c, u, CVector{0, 0, Complex(0, 1)}).verdict, Verdict::NotMember);
}

TEST(Membership, RecordsEveryScheduleStep) {
  const auto v = t2_membership(parabola(), RVector{1, 0}, RVector{0, 2});
  EXPECT_EQ(v.samples.size(), DecaySchedule::standard().t_values.size());
  EXPECT_EQ(v.normalized_distances().size(), v.samples.size());
  // (t, t^2) lies on the parabola, so every projection is an exact hit.
  EXPECT_TRUE(std::isinf(v.fitted_exponent));
}

TEST(Membership, RejectsZeroDirection) {
  EXPECT_THROW(t2_membership(parabola(), RVector{0, 0}, RVector{0, 2}), PreconditionError);
}

TEST(Sweep, CaseThreeSignLaw) {
  std::vector<RVector> grid{{-1, 0, 0}, {0, 0, 0}, {1, 0, 0}};
  const auto r = t2_case_sweep(whitney(), {0, 1, 0}, grid);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].result.verdict, Verdict::NotMember);
  EXPECT_EQ(r.rows[1].result.verdict, Verdict::Member);
  EXPECT_EQ(r.rows[2].result.verdict, Verdict::Member);
  EXPECT_EQ(r.constraints, (std::vector<std::string>{"w1 >= 0"}));
  EXPECT_TRUE(r.constraints_separate);
}

TEST(Sweep, CaseFourSignLaw) {
  std::vector<RVector> grid{{0, -1, 0}, {0, 0, 0}, {0, 1, 0}};
  const auto r = t2_case_sweep(whitney(), {1, 0, 0}, grid);
  EXPECT_EQ(r.rows[0].result.verdict, Verdict::NotMember);
  EXPECT_EQ(r.rows[1].result.verdict, Verdict::Member);
  EXPECT_EQ(r.rows[2].result.verdict, Verdict::Member);
  EXPECT_EQ(r.constraints, (std::vector<std::string>{"w2 >= 0"}));
}

TEST(Sweep, ParabolaGridMatchesExactSet) {
  std::vector<RVector> grid;
  for (double w1 : {-1.0, 0.0, 1.0})
    for (double w2 : {1.0, 2.0, 3.0}) grid.push_back({w1, w2});
  const auto r = t2_case_sweep(parabola(), {1, 0}, grid);
  for (const auto& row : r.rows)
    EXPECT_EQ(row.result.verdict, row.w[1] == 2 ? Verdict::Member : Verdict::NotMember)
        << "w = (" << row.w[0] << ", " << row.w[1] << ")";
}

TEST(MembershipProperty, MonotoneUnderRefinement) {
  auto coarse = DecaySchedule::standard();
  coarse.t_values.resize(coarse.t_values.size() - 4);
  const auto fine = DecaySchedule::standard();
  struct Case {
    const FloatSystem* sys;
    RVector u, w;
  };
  const std::vector<Case> cases{{&whitney(), {1, 1, 0}, {5, -3, 0}},
                                {&whitney(), {0, 1, 0}, {1, 0, 0}},
                                // d ~ w1 t^3, so w1 stays small enough to settle on the coarse grid.
                                {&parabola(), {1, 0}, {0.25, 2}},
                                {&parabola(), {-1, 0}, {0, 2}}};
  for (const auto& c : cases) {
    const auto a = t2_membership(*c.sys, c.u, c.w, coarse);
    ASSERT_EQ(a.verdict, Verdict::Member) << "case " << (&c - cases.data()) << " exp " << a.fitted_exponent;
    EXPECT_NE(t2_membership(*c.sys, c.u, c.w, fine).verdict, Verdict::NotMember);
  }
}

TEST(MembershipProperty, ExponentStableAlongNullDirections) {
  // The final linearization of the parabola at (t, t^2) is (-2t, 1); (1, 0) is its null direction.
  const auto a = t2_membership(parabola(), RVector{1, 0}, RVector{1, 2});
  const auto b = t2_membership(parabola(), RVector{1, 0}, RVector{2, 2});
  ASSERT_TRUE(std::isfinite(a.fitted_exponent));
  EXPECT_NEAR(a.fitted_exponent, b.fitted_exponent, 0.1);
}

TEST(MembershipProperty, DeterministicForFixedSeed) {
  const auto a = t2_membership(whitney(), RVector{0, 1, 0}, RVector{1, 0, 0}, DecaySchedule::standard(), 17);
  const auto b = t2_membership(whitney(), RVector{0, 1, 0}, RVector{1, 0, 0}, DecaySchedule::standard(), 17);
  EXPECT_EQ(a.normalized_distances(), b.normalized_distances());
}

// An exact CLEAN arc dominates the heuristic: the sampler must agree.
TEST(MembershipProperty, SoundAgainstLifting) {
  testing::RandomSystems gen(31337);
  for (std::size_t i = 0; i < 40; ++i) {
    const auto c = gen.certified(i);
    const auto cert = classify(c.sys, c.u);
    const QVector w = gen.point_of(jet_space_t2(c.sys, c.u));
    const auto arc = lift_second_jet(c.sys, cert, c.u, w);
    ASSERT_TRUE(verify_arc(c.sys, arc.series).clean());
    const auto v = t2_membership(FloatSystem(c.sys), to_double(c.u), to_double(w));
    EXPECT_EQ(v.verdict, Verdict::Member) << "system " << i << " (" << c.family << "), u = " << to_string(c.u)
                                          << ", w = " << to_string(w);
  }
}

} // namespace
} // namespace sot

#include "sotangent/parser.hpp"
#include "sotangent/tangent_algebra.hpp"

#include "random_systems.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace sot {
namespace {

PolySystem S(std::vector<const char*> gens, std::size_t n) {
  std::vector<Polynomial<Rational>> ps;
  for (auto g : gens) ps.push_back(parse_polynomial(g, n));
  return PolySystem(n, std::move(ps));
}

const PolySystem& parabola() {
  static const PolySystem s = S({"y - x^2"}, 2);
  return s;
}

const PolySystem& whitney() {
  static const PolySystem s = S({"z^2 - x^3*y^3"}, 3);
  return s;
}

TEST(PolySystem, RejectsBadGenerators) {
  EXPECT_THROW(S({"x + 1"}, 2), ValidationError);
  EXPECT_THROW(S({"0"}, 2), ValidationError);
  EXPECT_THROW(PolySystem(2, {}), ValidationError);
}

TEST(InitialData, Examples) {
  auto d = initial_data(parabola());
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].order, 1u);
  EXPECT_EQ(d[0].initial, parse_polynomial("y", 2));
  EXPECT_EQ(d[0].next, parse_polynomial("-x^2", 2));

  d = initial_data(whitney());
  EXPECT_EQ(d[0].order, 2u);
  EXPECT_EQ(d[0].initial, parse_polynomial("z^2", 3));
  EXPECT_TRUE(d[0].next.is_zero());

  d = initial_data(S({"x4"}, 4));
  EXPECT_EQ(d[0].order, 1u);
  EXPECT_TRUE(d[0].next.is_zero());
}

TEST(TangentCone, Examples) {
  EXPECT_TRUE(tangent_cone_membership(parabola(), {1, 0}));
  EXPECT_TRUE(tangent_cone_membership(whitney(), {1, 1, 0}));
  EXPECT_FALSE(tangent_cone_membership(whitney(), {0, 0, 1}));
  EXPECT_THROW(tangent_cone_membership(parabola(), {0, 0}), PreconditionError);
}

TEST(NextFormConsistency, Examples) {
  EXPECT_FALSE(next_form_consistency(parabola(), {1, 0}));
  EXPECT_TRUE(next_form_consistency(whitney(), {1, 1, 0}));
  EXPECT_TRUE(next_form_consistency(S({"x3"}, 3), {4, -1, 0}));
  EXPECT_THROW(next_form_consistency(whitney(), {0, 0, 1}), PreconditionError);
}

TEST(AlgebraicT2, Parabola) {
  const auto s = algebraic_t2(parabola(), {1, 0});
  ASSERT_FALSE(s.is_empty());
  EXPECT_EQ(s.point(), (QVector{0, 2}));
  EXPECT_EQ(s.basis(), (std::vector<QVector>{{1, 0}}));
}

TEST(AlgebraicT2, WhitneyIsWholeSpace) {
  for (const QVector& u : {QVector{1, 1, 0}, QVector{1, -1, 0}, QVector{0, 1, 0}, QVector{1, 0, 0}}) {
    const auto s = algebraic_t2(whitney(), u);
    EXPECT_TRUE(same_set(s, AffineSubspace::whole_space(3)));
    EXPECT_EQ(s.point(), (QVector{0, 0, 0}));
  }
}

TEST(AlgebraicT2, CoordinateHyperplane) {
  const auto s = algebraic_t2(S({"x3"}, 3), {1, 2, 0});
  EXPECT_TRUE(same_set(s, AffineSubspace::make({0, 0, 0}, {{1, 0, 0}, {0, 1, 0}})));
}

TEST(AlgebraicT2, InconsistentSystemIsEmpty) {
  // Both generators have initial form y; next forms at u = (1,0) are -1 and +1.
  const auto s = algebraic_t2(S({"y - x^2", "y + x^2"}, 2), {1, 0});
  EXPECT_TRUE(s.is_empty());
}

TEST(JetSpaceT2, Examples) {
  EXPECT_TRUE(same_set(jet_space_t2(whitney(), {1, 1, 0}), AffineSubspace::whole_space(3)));
  EXPECT_TRUE(same_set(jet_space_t2(S({"x3"}, 3), {1, 0, 0}), AffineSubspace::make({0, 0, 0}, {{1, 0, 0}, {0, 1, 0}})));
  const auto ci = S({"x3 - x2^2", "x4 - x2*x3"}, 4);
  EXPECT_TRUE(same_set(jet_space_t2(ci, {1, 0, 0, 0}),
                       AffineSubspace::make({0, 0, 0, 0}, {{1, 0, 0, 0}, {0, 1, 0, 0}})));
  EXPECT_THROW(jet_space_t2(parabola(), {1, 0}), PreconditionError);
  // -x1^2 does not vanish at e1.
  EXPECT_THROW(jet_space_t2(S({"x3 - x1^2", "x4 - x1*x2"}, 4), {1, 0, 0, 0}), PreconditionError);
}

TEST(AlgebraicT2, NotACone) {
  const auto s = algebraic_t2(parabola(), {1, 0});
  EXPECT_TRUE(s.contains({0, 2}));
  EXPECT_FALSE(s.contains({0, 4}));
}

// Random systems, built so the direction u lies on every initial form's zero set.

class TangentProperty : public ::testing::Test {
protected:
  testing::RandomSystems gen{99};
};

TEST_F(TangentProperty, ReturnedSetsSatisfyTheirSystem) {
  for (std::size_t i = 0; i < 100; ++i) {
    const auto c = gen.certified(i);
    const auto [a, b] = algebraic_t2_system(c.sys, c.u);
    const auto s = algebraic_t2(c.sys, c.u);
    ASSERT_FALSE(s.is_empty());
    EXPECT_EQ(a.apply(s.point()), b);
    for (const auto& v : s.basis()) {
      QVector moved = s.point();
      for (std::size_t k = 0; k < v.size(); ++k) moved[k] += v[k];
      EXPECT_EQ(a.apply(moved), b);
    }
  }
}

TEST_F(TangentProperty, JetSpaceEqualsAlgebraicUnderConsistency) {
  for (std::size_t i = 0; i < 100; ++i) {
    const auto c = gen.certified(i);
    ASSERT_TRUE(next_form_consistency(c.sys, c.u));
    EXPECT_TRUE(same_set(algebraic_t2(c.sys, c.u), jet_space_t2(c.sys, c.u)));
  }
}

TEST_F(TangentProperty, GeneratorScalingAndPermutationInvariance) {
  for (std::size_t i = 0; i < 100; ++i) {
    const auto c = gen.certified(i);
    // Shift the system off the jet-space case so the affine part is exercised too.
    std::vector<Polynomial<Rational>> gens = c.sys.generators();
    for (auto& f : gens) {
      const auto m = *order_of(f);
      f += gen.homogeneous(c.sys.n(), m + 1, 2);
    }
    const PolySystem base(c.sys.n(), gens);
    const auto reference = algebraic_t2(base, c.u);

    auto scaled = gens;
    for (auto& f : scaled) f *= gen.nonzero_coefficient();
    EXPECT_TRUE(same_set(algebraic_t2(PolySystem(c.sys.n(), scaled), c.u), reference));

    auto permuted = gens;
    std::shuffle(permuted.begin(), permuted.end(), gen.rng());
    const PolySystem p(c.sys.n(), permuted);
    EXPECT_TRUE(same_set(algebraic_t2(p, c.u), reference));
    EXPECT_EQ(tangent_cone_membership(p, c.u), tangent_cone_membership(base, c.u));
    EXPECT_EQ(next_form_consistency(p, c.u), next_form_consistency(base, c.u));
  }
}

} // namespace
} // namespace sot

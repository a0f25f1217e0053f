#include <gtest/gtest.h>

#include "slicealg/sampling.hpp"
#include "slicealg/star.hpp"
#include "slicealg/stem.hpp"

using namespace slicealg;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SliceError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no SliceError thrown";
  return ErrorKind::Schema;
}

SliceFunction monomial(unsigned d) {
  std::vector<Quaternion> c(d + 1, 0.0);
  c[d] = 1.0;
  return SliceFunction::poly(PolyFunction::univariate(c));
}

StemQuery query_on(SliceFunction f, SliceDomain d1, SliceDomain d2) {
  StemQuery q{std::move(f), std::move(d1), std::move(d2)};
  return q;
}

}  // namespace

TEST(Stem, SquareAlongAPath) {
  const auto q = query_on(monomial(2), SliceDomain::ball({0.0}, 3.0), SliceDomain::ball({0.0}, 3.0));
  const StemVector F = stem_at(q, PLPath({{0.0}, {Complex(1.0, 1.0)}}));
  EXPECT_LE((F - StemVector{0.0, 2.0}).norm(), 1e-14);
}

TEST(Stem, IdentityAndConstant) {
  const auto id = query_on(monomial(1), SliceDomain::full_space(1), SliceDomain::full_space(1));
  const StemVector F = stem_at(id, PLPath({{0.5}, {Complex(0.3, -1.7)}}));
  EXPECT_LE((F - StemVector{0.3, -1.7}).norm(), 1e-14);
  const auto c = query_on(SliceFunction::poly(PolyFunction::constant(1, Quaternion(1.0, 2.0, 3.0, 4.0))),
                          SliceDomain::full_space(1), SliceDomain::full_space(1));
  EXPECT_LE((stem_at(c, PLPath({{0.0}, {Complex(2.0, 1.0)}})) - StemVector{Quaternion(1.0, 2.0, 3.0, 4.0), 0.0}).norm(),
            1e-14);
}

TEST(Stem, RecombinesToTheFunctionValue) {
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const auto f = SliceFunction::poly(random_poly(rng, 2, 3));
    const auto q = query_on(f, SliceDomain::full_space(2), SliceDomain::full_space(2));
    const CPoint z{Complex(uniform(rng, -1, 1), uniform(rng, -1, 1)), Complex(uniform(rng, -1, 1), uniform(rng, -1, 1))};
    const PLPath gamma({{0.0, 0.0}, z});
    const StemVector F = stem_at(q, gamma);
    const ImaginaryUnit I = random_unit(rng);
    EXPECT_LE(distance(F.recombine(I.quat()), eval_along(f, gamma, I)), 1e-12);
  }
}

TEST(Stem, PointFormOnBothSidesOfTheSlice) {
  const auto q = query_on(monomial(2), SliceDomain::ball({0.0}, 3.0), SliceDomain::ball({0.0}, 3.0));
  for (const Quaternion& p : {Quaternion(1.0, 0.0, 2.0, 0.0), Quaternion(1.0, 0.0, -2.0, 0.0)}) {
    const SlicePoint s({p});
    const StemVector F = stem_at_point(q, s);
    // (1 + 2i)^2 = -3 + 4i read in the slice of p.
    EXPECT_LE((F - StemVector{-3.0, 4.0}).norm(), 1e-13);
    EXPECT_LE(distance(F.recombine(s.unit()->quat()), p * p), 1e-13);
  }
}

TEST(Stem, RealPointsHaveZeroSecondComponent) {
  const auto q = query_on(monomial(3), SliceDomain::ball({0.0}, 3.0), SliceDomain::ball({0.0}, 3.0));
  EXPECT_EQ(stem_at_point(q, SlicePoint({Quaternion(-1.5)})), (StemVector{-3.375, 0.0}));
}

TEST(Stem, RouteErrors) {
  const auto q = query_on(monomial(2), SliceDomain::ball({0.0}, 3.0), SliceDomain::ball({0.0}, 3.0));
  const SlicePoint s({Quaternion(1.0, 0.0, 2.0, 0.0)});
  EXPECT_EQ(kind_of([&] { stem_at_point(q, s, PLPath({{0.0}, {Complex(1.0, 1.0)}})); }), ErrorKind::UnitMismatch);
  // A route ending at the slice conjugate is accepted and conjugated.
  const StemVector F = stem_at_point(q, s, PLPath({{0.0}, {Complex(1.0, -2.0)}}));
  EXPECT_LE((F - StemVector{-3.0, 4.0}).norm(), 1e-13);

  const SliceDomain island = SliceDomain::union_of(
      {SliceDomain::ball({0.0}, 1.0), SliceDomain::slice_box(ImaginaryUnit::i(), {{-0.5, 0.5}}, {{2.0, 3.0}})});
  const auto qi = query_on(monomial(2), island, SliceDomain::full_space(1));
  const SlicePoint far({Complex(0.0, 2.5)}, ImaginaryUnit::i());
  EXPECT_EQ(kind_of([&] { stem_at_point(qi, far); }), ErrorKind::RoutingFailed);
  EXPECT_EQ(kind_of([&] { stem_at_point(q, SlicePoint({Quaternion(4.0)})); }), ErrorKind::DomainViolation);
}

TEST(CRResidual, CubeResidualIsExactlyHSquared) {
  // For q^3 the central-difference error is h^2 from d/dx and -I h^2 from d/dy, so the residual is h^2.
  const auto f = monomial(3);
  const SlicePoint q({Quaternion(0.4, 0.0, 0.0, 0.9)});
  for (double h : {1e-2, 1e-3}) EXPECT_NEAR(cr_residual_slice(f, q, h).max_residual, h * h, 1e-12);
  const double ratio = cr_residual_slice(f, q, 2e-2).max_residual / cr_residual_slice(f, q, 1e-2).max_residual;
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(CRResidual, AntiHolomorphicProbeIsRejected) {
  const auto probe = [](const SlicePoint& p) { return p[0].conj(); };
  const CRReport r = cr_residual_slice(probe, SlicePoint({Quaternion(0.3, 0.5, 0.0, 0.0)}), 1e-3, 1e-2);
  EXPECT_NEAR(r.max_residual, 1.0, 1e-8);
  EXPECT_FALSE(r.pass);
}

TEST(CRResidual, PrincipalSqrtAwayFromTheCut) {
  const CRReport r = cr_residual_slice(SliceFunction::sqrt(), SlicePoint({Quaternion(4.0, 0.0, 0.1, 0.0)}), 1e-3);
  EXPECT_LE(r.max_residual, 1e-6);
  EXPECT_EQ(kind_of([] { cr_residual_slice(SliceFunction::sqrt(), SlicePoint({Quaternion(5e-4)}), 1e-3); }),
            ErrorKind::StencilLeavesDomain);
}

TEST(StemHolomorphy, PolynomialStems) {
  const auto q = query_on(monomial(2), SliceDomain::ball({0.0}, 2.0), SliceDomain::ball({0.0}, 3.0));
  const PLPath gamma({{0.0}, {Complex(0.5, 0.7)}});
  EXPECT_LE(stem_holomorphy_check(q, gamma, 1e-3).max_residual, 1e-6);
  const auto c = query_on(SliceFunction::poly(PolyFunction::constant(1, Quaternion(0.0, 1.0, 0.0, 0.0))),
                          SliceDomain::ball({0.0}, 2.0), SliceDomain::ball({0.0}, 3.0));
  EXPECT_EQ(stem_holomorphy_check(c, gamma, 1e-3).max_residual, 0.0);
}

TEST(StemHolomorphy, StepMustFitTheBall) {
  const auto q = query_on(monomial(2), SliceDomain::ball({0.0}, 1.0), SliceDomain::ball({0.0}, 1.0));
  const PLPath gamma({{0.0}, {Complex(0.5, 0.49)}});
  EXPECT_EQ(kind_of([&] { stem_holomorphy_check(q, gamma, 0.5); }), ErrorKind::StencilLeavesBall);
}

TEST(StemHolomorphy, PerPointPairsStillAgreeForPolynomials) {
  Rng rng(42);
  const auto f = SliceFunction::poly(random_poly(rng, 1, 3));
  const auto q = query_on(f, SliceDomain::ball({0.0}, 2.0), SliceDomain::ball({0.0}, 3.0));
  const PLPath gamma({{0.0}, {Complex(0.3, -0.6)}});
  EXPECT_LE(stem_holomorphy_check(q, gamma, 1e-3, 1e-4, PairPolicy::PerPoint).max_residual, 1e-4);
}

TEST(UnitPairCache, DistinctRoutesDoNotAlias) {
  StemQuery q = query_on(SliceFunction::sqrt(SliceDomain::full_space(1)), SliceDomain::full_space(1),
                         SliceDomain::full_space(1));
  const Complex z(1.0, 1.0);
  const PLPath direct({{Complex(1.0)}, {z}});
  const PLPath loop({{Complex(2.0)}, {Complex(0.0, 2.0)}, {Complex(-2.0)}, {Complex(0.0, -2.0)}, {Complex(2.0)}, {z}});
  const StemVector a = stem_at(q, direct);
  const StemVector b = stem_at(q, loop);
  EXPECT_EQ(q.cache->size(), 2u);
  EXPECT_LE((a + b).norm(), 1e-10);
  EXPECT_LE((stem_at(q, direct) - a).norm(), 0.0);
}

TEST(ConjugationRelation, IsNotTrivialForComplexStems) {
  const auto q = query_on(monomial(2), SliceDomain::full_space(1), SliceDomain::full_space(1));
  const PLPath gamma({{0.0}, {Complex(1.0, 1.0)}});
  const StemVector F = stem_at(q, gamma);
  const StemVector Fbar = stem_at(q, conjugate(gamma));
  EXPECT_GT((F - Fbar).norm(), 1.0);
  // F(conj gamma) = (F_1, -F_2) for real-coefficient f.
  EXPECT_LE((Fbar - StemVector{F.f1, -1.0 * F.f2}).norm(), 1e-14);
}

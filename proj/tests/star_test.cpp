#include <gtest/gtest.h>

#include "slicealg/sampling.hpp"
#include "slicealg/star.hpp"

using namespace slicealg;

namespace {

SlicePoint random_point(Rng& rng, std::size_t n, double extent) {
  const ImaginaryUnit I = random_unit(rng);
  std::vector<Complex> z(n);
  for (auto& c : z) c = Complex(uniform(rng, -extent, extent), uniform(rng, -extent, extent));
  return SlicePoint(z, I);
}

unsigned binomial(unsigned n, unsigned k) {
  unsigned r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(StarProduct, PinnedProductOfTwoLinearFactors) {
  // (q - i) * (q - j) = q^2 - q (i + j) + k by convolution of coefficients.
  const PolyFunction f = PolyFunction::univariate({-Quaternion::i(), 1.0});
  const PolyFunction g = PolyFunction::univariate({-Quaternion::j(), 1.0});
  const PolyFunction expected = PolyFunction::univariate({Quaternion::k(), -Quaternion::i() - Quaternion::j(), 1.0});
  const StarProduct prod(SliceFunction::poly(f), SliceFunction::poly(g), SliceDomain::full_space(1));
  Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    const SlicePoint q = random_point(rng, 1, 2.0);
    EXPECT_LE(distance(star_eval(prod, q), expected(q)), 1e-12);
  }
  // Not the pointwise product: at q = j the second factor vanishes but f*g does not.
  const SlicePoint qj({Quaternion::j()});
  EXPECT_LE(distance(star_eval(prod, qj), expected(qj)), 1e-13);
  EXPECT_GT(star_eval(prod, qj).norm(), 1.0);
}

TEST(StarProduct, OracleConvolutionAgreement) {
  Rng rng(52);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + t % 2;
    const PolyFunction f = random_poly(rng, n, 3), g = random_poly(rng, n, 2);
    const PolyFunction oracle = star_poly_oracle(f, g);
    const StarProduct prod(SliceFunction::poly(f), SliceFunction::poly(g), SliceDomain::full_space(n));
    for (int k = 0; k < 10; ++k) {
      const SlicePoint q = random_point(rng, n, 1.0);
      const Quaternion want = oracle(q);
      EXPECT_LE(distance(star_eval(prod, q), want), 1e-10 * (1.0 + want.norm()));
    }
  }
}

TEST(StarProduct, UnitIsNeutralOnTheLeft) {
  Rng rng(53);
  const PolyFunction g = random_poly(rng, 1, 4);
  const StarProduct prod(SliceFunction::poly(PolyFunction::constant(1, 1.0)), SliceFunction::poly(g),
                         SliceDomain::ball({0.0}, 2.0));
  for (int t = 0; t < 20; ++t) {
    const SlicePoint q = random_point(rng, 1, 1.0);
    EXPECT_LE(distance(star_eval(prod, q), g(q)), 1e-12);
  }
}

TEST(StarProduct, RealPointsGiveThePointwiseProduct) {
  Rng rng(54);
  const PolyFunction f = random_poly(rng, 2, 3), g = random_poly(rng, 2, 3);
  const StarProduct prod(SliceFunction::poly(f), SliceFunction::poly(g), SliceDomain::full_space(2));
  const SlicePoint q({Quaternion(0.7), Quaternion(-1.2)});
  EXPECT_EQ(star_eval(prod, q), f(q) * g(q));
}

TEST(StarProduct, RealCoefficientLeftFactorIsPointwise) {
  Rng rng(55);
  const PolyFunction f = PolyFunction::univariate({0.5, -1.0, 2.0});
  const PolyFunction g = random_poly(rng, 1, 3);
  const StarProduct prod(SliceFunction::poly(f), SliceFunction::poly(g), SliceDomain::full_space(1));
  for (int t = 0; t < 20; ++t) {
    const SlicePoint q = random_point(rng, 1, 1.5);
    EXPECT_LE(distance(star_eval(prod, q), f(q) * g(q)), 1e-12);
  }
}

TEST(StarProduct, NestedProductsMatchTheTripleOracle) {
  Rng rng(56);
  const PolyFunction f = random_poly(rng, 1, 2), g = random_poly(rng, 1, 2), h = random_poly(rng, 1, 2);
  const SliceDomain d = SliceDomain::ball({0.0}, 2.0);
  const StarProduct fg(SliceFunction::poly(f, d), SliceFunction::poly(g, d), d);
  const StarProduct fg_h(star_function(fg), SliceFunction::poly(h, d), d);
  const PolyFunction oracle = star_poly_oracle(star_poly_oracle(f, g), h);
  for (int t = 0; t < 20; ++t) {
    const SlicePoint q = random_point(rng, 1, 0.9);
    const Quaternion want = oracle(q);
    EXPECT_LE(distance(star_eval(fg_h, q), want), 1e-10 * (1.0 + want.norm()));
  }
}

TEST(StarProduct, SqrtSquaredOnTheSlitPlane) {
  const StarProduct prod(SliceFunction::sqrt(), SliceFunction::sqrt(), SliceDomain::slit_plane());
  const SlicePoint q({Quaternion(1.0, 0.0, 2.0, 0.0)});
  EXPECT_LE(distance(star_eval(prod, q), q[0]), 1e-12);
  EXPECT_LE(distance(star_eval(prod, SlicePoint({Quaternion(4.0)})), Quaternion(4.0)), 1e-14);
}

TEST(StarProduct, WrongUnitBreaksRegularity) {
  Rng rng(57);
  StarProduct prod(SliceFunction::poly(random_poly(rng, 1, 2)), SliceFunction::poly(random_poly(rng, 1, 2)),
                   SliceDomain::ball({0.0}, 2.0));
  StarRegularityOptions opts;
  opts.samples = 10;
  opts.seed = 5;
  opts.min_room = 0.05;
  EXPECT_LE(verify_star_regularity(prod, opts).max_residual, 1e-4);
  prod.forced_unit = ImaginaryUnit::i();
  EXPECT_GT(verify_star_regularity(prod, opts).max_residual, 1e-2);
}

TEST(StarRegularity, SerialAndParallelAgree) {
  Rng rng(58);
  const StarProduct prod(SliceFunction::poly(random_poly(rng, 2, 2)), SliceFunction::poly(random_poly(rng, 2, 2)),
                         SliceDomain::ball({0.0, 0.0}, 2.0));
  StarRegularityOptions opts;
  opts.samples = 8;
  opts.seed = 9;
  opts.min_room = 0.05;
  const CRReport a = verify_star_regularity(prod, opts);
  opts.exec = Execution{4};
  const CRReport b = verify_star_regularity(prod, opts);
  EXPECT_EQ(a.max_residual, b.max_residual);
  ASSERT_EQ(a.per_point.size(), b.per_point.size());
  for (std::size_t k = 0; k < a.per_point.size(); ++k) EXPECT_EQ(a.per_point[k].residual, b.per_point[k].residual);
}

TEST(RandomPoly, EveryMonomialWithUnitCoefficient) {
  Rng rng(59);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (unsigned d : {0u, 2u, 4u}) {
      const PolyFunction p = random_poly(rng, n, d);
      EXPECT_EQ(p.terms().size(), binomial(static_cast<unsigned>(n) + d, d));
      for (const auto& [k, a] : p.terms()) EXPECT_NEAR(a.norm(), 1.0, 1e-14);
    }
  }
}

TEST(LawReport, MergeKeepsTheWorstWitnessFirst) {
  LawReport a{"assoc", 0, 0.0, 1e-8, {}};
  a.record(1e-12, {"a1", {}, 1e-12});
  a.record(3e-12, {"a2", {}, 3e-12});
  LawReport b{"assoc", 0, 0.0, 1e-8, {}};
  b.record(5e-12, {"b1", {}, 5e-12});
  a.merge(b);
  EXPECT_EQ(a.trials, 3u);
  EXPECT_DOUBLE_EQ(a.max_dev, 5e-12);
  ASSERT_FALSE(a.witnesses.empty());
  EXPECT_EQ(a.witnesses.front().note, "b1");
  EXPECT_TRUE(a.pass());
}

TEST(AlgebraLaws, HoldOnASmallRun) {
  AlgebraLawOptions opts;
  opts.triples = 6;
  opts.points = 4;
  opts.seed = 3;
  for (const auto& r : verify_algebra_laws(SliceDomain::ball({0.0}, 2.0), opts)) EXPECT_TRUE(r.pass()) << r.law;
}

TEST(Monodromy, SlitSquareAndLoopSign) {
  const MonodromyReport r = star_monodromy_square(SliceDomain::slit_plane(), 20, 7);
  EXPECT_LE(r.slit.max_dev, 1e-9);
  EXPECT_LE(r.loop_sign_dev, 1e-10);
}

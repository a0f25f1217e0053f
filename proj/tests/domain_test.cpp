#include <gtest/gtest.h>

#include "slicealg/domain.hpp"

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

SliceDomain box_at_i() { return SliceDomain::slice_box(ImaginaryUnit::i(), {{-1.0, 1.0}}, {{0.5, 2.0}}); }

// Ball(0,1) together with a box in the i-slice reaching up to im 3.
SliceDomain tower() {
  return SliceDomain::union_of(
      {SliceDomain::ball({0.0}, 1.0), SliceDomain::slice_box(ImaginaryUnit::i(), {{-0.5, 0.5}}, {{0.5, 3.0}})});
}

}  // namespace

TEST(SliceDomain, FullSpaceContainsEverything) {
  const SliceDomain d = SliceDomain::full_space(2);
  EXPECT_TRUE(d.contains({Complex(5.0, -3.0), Complex(1e6)}, ImaginaryUnit::k()));
  EXPECT_EQ(d.distance_to_complement({0.0, 0.0}, ImaginaryUnit::i()), kInfiniteRadius);
  EXPECT_EQ(d.anchor(), (CPoint{0.0, 0.0}));
}

TEST(SliceDomain, BallIsTheSameDiscInEverySlice) {
  const SliceDomain d = SliceDomain::ball({1.0}, 2.0);
  for (const auto& u : fibonacci_sphere(16)) {
    EXPECT_TRUE(d.contains({Complex(1.0, 1.9)}, u));
    EXPECT_FALSE(d.contains({Complex(1.0, 2.0)}, u));
    EXPECT_NEAR(d.distance_to_complement({Complex(2.0, 0.0)}, u), 1.0, 1e-15);
  }
  EXPECT_EQ(kind_of([] { SliceDomain::ball({0.0}, 0.0); }), ErrorKind::Schema);
}

TEST(SliceDomain, SliceBoxLivesInOneSlice) {
  const SliceDomain d = box_at_i();
  EXPECT_TRUE(d.contains({Complex(0.0, 1.0)}, ImaginaryUnit::i()));
  EXPECT_FALSE(d.contains({Complex(0.0, 1.0)}, ImaginaryUnit::j()));
  // The slice conjugate reads im -1 in box coordinates.
  EXPECT_FALSE(d.contains({Complex(0.0, 1.0)}, -ImaginaryUnit::i()));
  EXPECT_TRUE(d.contains({Complex(0.0, -1.0)}, -ImaginaryUnit::i()));
  EXPECT_NEAR(d.distance_to_complement({Complex(0.0, 1.0)}, ImaginaryUnit::i()), 0.5, 1e-15);
  EXPECT_FALSE(d.conjugation_stable());
  EXPECT_FALSE(d.anchor().has_value());
  EXPECT_EQ(d.declared_units().size(), 2u);
}

TEST(SliceDomain, SlitPlaneRemovesTheNonPositiveAxis) {
  const SliceDomain d = SliceDomain::slit_plane();
  EXPECT_FALSE(d.contains({Complex(-1.0, 0.0)}, ImaginaryUnit::i()));
  EXPECT_FALSE(d.contains({Complex(0.0, 0.0)}, ImaginaryUnit::i()));
  EXPECT_TRUE(d.contains({Complex(-1.0, 1e-3)}, ImaginaryUnit::i()));
  EXPECT_NEAR(d.distance_to_complement({Complex(-1.0, 0.25)}, ImaginaryUnit::j()), 0.25, 1e-15);
  EXPECT_NEAR(d.distance_to_complement({Complex(3.0, 4.0)}, ImaginaryUnit::j()), 5.0, 1e-15);
}

TEST(SliceDomain, UnionRadiusIsTheBestMember) {
  const SliceDomain d = tower();
  const CPoint z{Complex(0.0, 0.8)};
  const double expected = std::max(0.2, 0.3);
  EXPECT_NEAR(d.distance_to_complement(z, ImaginaryUnit::i()), expected, 1e-15);
  EXPECT_NEAR(d.distance_to_complement(z, ImaginaryUnit::j()), 0.2, 1e-15);
}

TEST(SliceDomain, AnchorsMustBeRealAndInside) {
  EXPECT_EQ(kind_of([] { SliceDomain(domains::AxialBall{{0.0}, 1.0}, CPoint{Complex(3.0)}); }), ErrorKind::Schema);
  EXPECT_EQ(kind_of([] { SliceDomain(domains::FullSpace{1}, CPoint{Complex(0.0, 1.0)}); }), ErrorKind::Schema);
}

TEST(SliceDomain, SampledPointsAreInside) {
  Rng rng(21);
  for (const auto& d : {SliceDomain::ball({0.0, 1.0}, 1.5), SliceDomain::slit_plane(), box_at_i(), tower(),
                        SliceDomain::full_space(3)}) {
    for (int t = 0; t < 200; ++t) EXPECT_TRUE(d.contains(d.sample_point(rng))) << d.kind_name();
  }
}

TEST(SliceUnits, SingleSliceBoxAdmitsOnlyItsUnit) {
  const SliceDomain d = box_at_i();
  const PLPath gamma({{0.0}, {Complex(0.0, 1.0)}});
  const auto units = slice_units_of(d, gamma);
  // The segment starts at the real point 0 which lies in the box closure only; none lift inside.
  EXPECT_TRUE(units.empty());
  const SliceDomain shifted = SliceDomain::slice_box(ImaginaryUnit::i(), {{-1.0, 1.0}}, {{-0.5, 2.0}});
  const auto lifted = slice_units_of(shifted, gamma);
  ASSERT_EQ(lifted.size(), 1u);
  EXPECT_LE(distance(lifted[0], ImaginaryUnit::i()), 1e-12);
}

TEST(SliceUnits, ConjugationStablePrimitivesAreSymmetric) {
  Rng rng(22);
  const SliceDomain stable_box = SliceDomain::slice_box(ImaginaryUnit::j(), {{-1.0, 1.0}}, {{-1.0, 1.0}});
  for (const auto& d : {SliceDomain::ball({0.0}, 2.0), SliceDomain::slit_plane(), stable_box}) {
    for (int t = 0; t < 20; ++t) {
      const SlicePoint q = d.sample_point(rng);
      const auto gamma = route_to(d, q);
      ASSERT_TRUE(gamma.has_value());
      const auto units = slice_units_of(d, *gamma, 32);
      for (const auto& u : units) {
        const bool has_negative =
            std::any_of(units.begin(), units.end(), [&](const ImaginaryUnit& v) { return distance(v, -u) < 1e-12; });
        EXPECT_TRUE(has_negative) << d.kind_name();
      }
    }
  }
}

TEST(SliceUnits, RealPathsLiftEverywhere) {
  const PLPath gamma({{0.0}, {0.5}});
  EXPECT_EQ(slice_units_of(SliceDomain::ball({0.0}, 1.0), gamma, 32).size(), candidate_units(SliceDomain::ball({0.0}, 1.0), 32).size());
}

TEST(Radii, PointRadiusAndErrors) {
  const SliceDomain ball = SliceDomain::ball({0.0}, 2.0);
  const PLPath gamma({{0.0}, {Complex(1.0, 1.0)}});
  EXPECT_NEAR(radius_point(ball, gamma, ImaginaryUnit::k()), 2.0 - std::sqrt(2.0), 1e-15);
  const PLPath outside({{0.0}, {Complex(3.0, 0.0)}});
  EXPECT_EQ(kind_of([&] { radius_point(ball, outside, ImaginaryUnit::i()); }), ErrorKind::NotInDomain);
  EXPECT_EQ(kind_of([&] { radius_pathball(ball, outside); }), ErrorKind::NotInPathSpace);
}

TEST(Radii, PathBallRadiusTakesTheBestUnit) {
  const SliceDomain d = tower();
  const PLPath gamma({{0.0}, {Complex(0.0, 0.8)}});
  EXPECT_NEAR(radius_pathball(d, gamma), 0.3, 1e-12);
}

TEST(Radii, PairRadiusPrefersSeparatedUnits) {
  const SliceDomain ball = SliceDomain::ball({0.0}, 2.0);
  const PLPath gamma({{0.0}, {Complex(0.5, 0.5)}});
  const UnitPair pair = radius_two(ball, gamma);
  EXPECT_NEAR(pair.radius, 2.0 - std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(distance(pair.first, pair.second), 2.0, 1e-12);
}

TEST(Radii, PairUnavailableInASingleSlice) {
  const SliceDomain d = SliceDomain::slice_box(ImaginaryUnit::i(), {{-1.0, 1.0}}, {{-0.5, 2.0}});
  const PLPath gamma({{0.0}, {Complex(0.0, 1.0)}});
  EXPECT_EQ(kind_of([&] { radius_two(d, gamma); }), ErrorKind::StemPairUnavailable);
}

TEST(Routing, AnchorSegmentOrDetour) {
  const SliceDomain d = tower();
  const SlicePoint high({Complex(0.2, 2.5)}, ImaginaryUnit::i());
  const auto gamma = route_to(d, high);
  ASSERT_TRUE(gamma.has_value());
  EXPECT_TRUE(path_in_domain(d, *gamma, ImaginaryUnit::i()));
  EXPECT_EQ(gamma->end(), high.complex_coords(ImaginaryUnit::i()));
  const SlicePoint foreign({Complex(0.2, 2.5)}, ImaginaryUnit::j());
  EXPECT_FALSE(route_to(d, foreign).has_value());
}

TEST(RealPathConnected, ConnectedAndDisconnectedFixtures) {
  const auto connected = check_real_path_connected(tower(), 100, 3);
  EXPECT_EQ(connected.successes, connected.trials);
  EXPECT_DOUBLE_EQ(connected.ratio, 1.0);
  const SliceDomain island = SliceDomain::union_of(
      {SliceDomain::ball({0.0}, 1.0), SliceDomain::slice_box(ImaginaryUnit::i(), {{-0.5, 0.5}}, {{2.0, 3.0}})});
  const auto split = check_real_path_connected(island, 100, 3);
  EXPECT_LT(split.ratio, 1.0);
  EXPECT_FALSE(split.refuted.empty());
  for (const auto& q : split.refuted) EXPECT_GT(q.complex_coords(ImaginaryUnit::i())[0].imag(), 1.9);
}

TEST(RealPathConnected, ParallelMatchesSerial) {
  const auto a = check_real_path_connected(tower(), 64, 9, Execution::serial());
  const auto b = check_real_path_connected(tower(), 64, 9, Execution{4});
  EXPECT_EQ(a.successes, b.successes);
  ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
  for (std::size_t k = 0; k < a.witnesses.size(); ++k) EXPECT_EQ(a.witnesses[k].waypoints(), b.witnesses[k].waypoints());
}

TEST(StemPreserving, AxialTargetsPass) {
  const auto r = check_stem_preserving(tower(), SliceDomain::full_space(1), 40, 5);
  EXPECT_TRUE(r.pass());
  EXPECT_GT(r.pairs_checked, 0u);
  EXPECT_GE(r.min_units, 2u);
  const auto b = check_stem_preserving(SliceDomain::ball({0.0}, 1.0), SliceDomain::ball({0.0}, 2.0), 40, 5);
  EXPECT_TRUE(b.pass());
}

TEST(StemPreserving, SingleSliceTargetFailsConditionOne) {
  // Not conjugation-stable, so points with im > 0.5 lift for i alone.
  const SliceDomain target = SliceDomain::slice_box(ImaginaryUnit::i(), {{-2.0, 2.0}}, {{-0.5, 2.0}});
  const auto r = check_stem_preserving(SliceDomain::ball({0.0}, 1.0), target, 40, 5);
  EXPECT_FALSE(r.pass());
  EXPECT_GT(r.condition_i_failures, 0u);
  ASSERT_TRUE(r.condition_i_witness.has_value());
  EXPECT_LT(slice_units_of(target, *r.condition_i_witness).size(), 2u);
}

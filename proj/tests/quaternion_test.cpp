#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "slicealg/quaternion.hpp"
#include "slicealg/sampling.hpp"

using namespace slicealg;

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Left multiplication by p as a real 4x4 matrix, written out from the Hamilton table.
Mat4 left_matrix(const Quaternion& p) {
  return {{{p.w, -p.x, -p.y, -p.z}, {p.x, p.w, -p.z, p.y}, {p.y, p.z, p.w, -p.x}, {p.z, -p.y, p.x, p.w}}};
}

Quaternion oracle_mul(const Quaternion& p, const Quaternion& q) {
  const Mat4 L = left_matrix(p);
  const std::array<double, 4> v = {q.w, q.x, q.y, q.z};
  std::array<double, 4> r{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) r[i] += L[i][k] * v[k];
  return {r[0], r[1], r[2], r[3]};
}

// Solves the 8x8 real system equivalent to M(I,J) f = b by Gaussian elimination.
StemVector brute_force_solve(const ImaginaryUnit& I, const ImaginaryUnit& J, const StemVector& b) {
  double A[8][9] = {};
  const Mat4 one = left_matrix(1.0);
  const Mat4 LI = left_matrix(I.quat());
  const Mat4 LJ = left_matrix(J.quat());
  const std::array<double, 4> b1 = {b.f1.w, b.f1.x, b.f1.y, b.f1.z};
  const std::array<double, 4> b2 = {b.f2.w, b.f2.x, b.f2.y, b.f2.z};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      A[r][c] = one[r][c];
      A[r][c + 4] = LI[r][c];
      A[r + 4][c] = one[r][c];
      A[r + 4][c + 4] = LJ[r][c];
    }
    A[r][8] = b1[r];
    A[r + 4][8] = b2[r];
  }
  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 8; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    for (int c = 0; c < 9; ++c) std::swap(A[col][c], A[pivot][c]);
    for (int r = 0; r < 8; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      for (int c = col; c < 9; ++c) A[r][c] -= f * A[col][c];
    }
  }
  double x[8];
  for (int r = 0; r < 8; ++r) x[r] = A[r][8] / A[r][r];
  return {{x[0], x[1], x[2], x[3]}, {x[4], x[5], x[6], x[7]}};
}

void expect_near(const Quaternion& a, const Quaternion& b, double tol) {
  EXPECT_LE(distance(a, b), tol) << a << " vs " << b;
}

}  // namespace

TEST(Quaternion, HamiltonTable) {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  EXPECT_EQ(i * j, k);
  EXPECT_EQ(j * k, i);
  EXPECT_EQ(k * i, j);
  EXPECT_EQ(j * i, -k);
  EXPECT_EQ(i * i, Quaternion(-1.0));
  EXPECT_EQ(i * j * k, Quaternion(-1.0));
}

TEST(Quaternion, ProductMatchesMatrixOracle) {
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const Quaternion p = random_quaternion(rng, 3.0), q = random_quaternion(rng, 3.0);
    expect_near(p * q, oracle_mul(p, q), 1e-13);
  }
}

TEST(Quaternion, NormIsMultiplicativeAndConjugationReverses) {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const Quaternion p = random_quaternion(rng, 2.0), q = random_quaternion(rng, 2.0), r = random_quaternion(rng);
    EXPECT_NEAR((p * q).norm(), p.norm() * q.norm(), 1e-12);
    expect_near((p * q).conj(), q.conj() * p.conj(), 1e-13);
    expect_near((p * q) * r, p * (q * r), 1e-12);
    expect_near(p * p.inverse(), 1.0, 1e-13);
  }
}

TEST(ImaginaryUnit, NormalizesAndSquaresToMinusOne) {
  const ImaginaryUnit u(1.0, 2.0, 2.0);
  EXPECT_NEAR(u.quat().norm(), 1.0, 1e-15);
  EXPECT_EQ(u.quat().w, 0.0);
  expect_near(u.quat() * u.quat(), -1.0, 1e-15);
  EXPECT_THROW(ImaginaryUnit(0.0, 0.0, 0.0), SliceError);
}

TEST(ImaginaryUnit, EmbedAndAlong) {
  const ImaginaryUnit j = ImaginaryUnit::j();
  EXPECT_EQ(j.embed({1.0, 2.0}), Quaternion(1.0, 0.0, 2.0, 0.0));
  EXPECT_DOUBLE_EQ(j.along({5.0, 1.0, 3.0, 4.0}), 3.0);
}

TEST(FibonacciSphere, UnitNormEvenAndClosedUnderNegation) {
  for (std::size_t count : {2u, 7u, 64u, 101u}) {
    const auto units = fibonacci_sphere(count);
    EXPECT_EQ(units.size() % 2, 0u);
    EXPECT_GE(units.size(), count);
    for (const auto& u : units) {
      EXPECT_NEAR(u.quat().norm(), 1.0, 1e-14);
      const bool has_negative =
          std::any_of(units.begin(), units.end(), [&](const ImaginaryUnit& v) { return distance(v, -u) < 1e-14; });
      EXPECT_TRUE(has_negative);
    }
  }
}

TEST(SlicePoint, ValidatesCommonSlice) {
  EXPECT_NO_THROW(SlicePoint({Quaternion(1.0, 0.0, 2.0, 0.0), Quaternion(3.0, 0.0, -1.0, 0.0)}));
  EXPECT_NO_THROW(SlicePoint({Quaternion(1.0), Quaternion(0.0, 0.0, 0.0, 2.0)}));
  try {
    SlicePoint({Quaternion::i(), Quaternion::j()});
    FAIL() << "mixed slices accepted";
  } catch (const SliceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainViolation);
  }
}

TEST(SlicePoint, ComplexCoordinatesRoundTrip) {
  const ImaginaryUnit u(0.0, 0.6, 0.8);
  const std::vector<Complex> z = {{1.0, 2.0}, {-0.5, 0.25}};
  const SlicePoint q(z, u);
  const auto back = q.complex_coords(u);
  for (std::size_t l = 0; l < z.size(); ++l) EXPECT_NEAR(std::abs(back[l] - z[l]), 0.0, 1e-15);
  const auto flipped = q.complex_coords(-u);
  EXPECT_NEAR(std::abs(flipped[0] - std::conj(z[0])), 0.0, 1e-15);
}

TEST(FrakI, RealPointsGiveZeroAndConjugationFlips) {
  EXPECT_EQ(frak_i(SlicePoint({Quaternion(2.0), Quaternion(-1.0)})), Quaternion());
  const SlicePoint q({Quaternion(1.0), Quaternion(0.5, 0.0, 3.0, 4.0)});
  expect_near(frak_i(q), Quaternion(0.0, 0.0, 0.6, 0.8), 1e-15);
  const SlicePoint qbar({Quaternion(1.0), Quaternion(0.5, 0.0, -3.0, -4.0)});
  expect_near(frak_i(qbar), -frak_i(q), 1e-15);
  // Below the threshold a coordinate counts as real.
  EXPECT_EQ(frak_i(SlicePoint({Quaternion(1.0, 1e-14, 0.0, 0.0)})), Quaternion());
}

TEST(StemVector, RecombineAndSigma) {
  const StemVector F{2.0, 3.0};
  expect_near(F.recombine(Quaternion::j()), Quaternion(2.0, 0.0, 3.0, 0.0), 0.0);
  EXPECT_EQ(apply_sigma(F), (StemVector{-3.0, 2.0}));
  EXPECT_EQ(apply_sigma(apply_sigma(F)), (-1.0) * F);
}

TEST(StemVector, StarMatchesMatrixForm) {
  Rng rng(3);
  const StemMatrix sigma{0.0, -1.0, 1.0, 0.0};
  for (int t = 0; t < 100; ++t) {
    const StemVector p{random_quaternion(rng), random_quaternion(rng)};
    const StemVector q{random_quaternion(rng), random_quaternion(rng)};
    const auto as_matrix = [&](const StemVector& v) {
      const StemMatrix s{v.f2 * sigma.a, v.f2 * sigma.b, v.f2 * sigma.c, v.f2 * sigma.d};
      return StemMatrix{v.f1 + s.a, s.b, s.c, v.f1 + s.d};
    };
    const StemVector expected = (as_matrix(p) * as_matrix(q)).apply({1.0, 0.0});
    const StemVector got = stem_star(p, q);
    EXPECT_LE((got - expected).norm(), 1e-13);
  }
}

TEST(SliceMatrix, InverseMatchesBruteForceSolve) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto units = random_separated_units(rng, 2, 1e-2);
    const StemVector b{random_quaternion(rng), random_quaternion(rng)};
    const StemVector got = slice_matrix_inverse(units[0], units[1]).apply(b);
    const StemVector expected = brute_force_solve(units[0], units[1], b);
    EXPECT_LE((got - expected).norm(), 1e-10 * (1.0 + expected.norm()));
  }
}

TEST(SliceMatrix, AntipodalPairHasClosedForm) {
  // a = f1 + I f2, b = f1 - I f2 gives f1 = (a+b)/2 and f2 = -I (a-b)/2.
  const ImaginaryUnit I(1.0, -2.0, 0.5);
  const StemMatrix inv = slice_matrix_inverse(I, -I);
  const StemMatrix expected{0.5, 0.5, -0.5 * I.quat(), 0.5 * I.quat()};
  EXPECT_LE(inv.distance_to(expected), 1e-15);
}

TEST(SliceMatrix, InverseIsTwoSidedNearDegeneracy) {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const ImaginaryUnit I = random_unit(rng);
    ImaginaryUnit J = I;
    do {
      J = ImaginaryUnit(I.quat() + uniform(rng, 1e-3, 1e-2) * random_unit(rng).quat());
    } while (distance(I, J) < 1e-3);
    const StemMatrix M = StemMatrix::slice_pair(I, J);
    const StemMatrix Minv = slice_matrix_inverse(I, J);
    EXPECT_LE((Minv * M).distance_to(StemMatrix::identity()), 1e-9);
    EXPECT_LE((M * Minv).distance_to(StemMatrix::identity()), 1e-9);
  }
}

TEST(SliceMatrix, DegeneratePairThrows) {
  const ImaginaryUnit I = ImaginaryUnit::k();
  try {
    slice_matrix_inverse(I, I);
    FAIL() << "degenerate pair accepted";
  } catch (const SliceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSlicePair);
  }
}

TEST(Icic, HoldsForRandomInputs) {
  Rng rng(6);
  for (int t = 0; t < 200; ++t) {
    const Quaternion c = random_quaternion(rng, 5.0);
    const ImaginaryUnit I = random_unit(rng);
    EXPECT_TRUE(icic_check(c, I, 1e-12 * (1.0 + c.norm())));
    EXPECT_LE(icic_deviation(c, I), 1e-12 * (1.0 + c.norm()));
  }
}

TEST(Icic, WorkedExample) {
  // I (c, Ic) = (Ic, -c) and (c, Ic) sigma = (Ic, -c) for c = 1 + j, I = i.
  const Quaternion c(1.0, 0.0, 1.0, 0.0);
  EXPECT_EQ(icic_deviation(c, ImaginaryUnit::i()), 0.0);
}

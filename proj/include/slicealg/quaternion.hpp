#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "slicealg/errors.hpp"

namespace slicealg {

using Complex = std::complex<double>;

/// Imaginary norms below this are treated as exactly real.
inline constexpr double kRealThreshold = 1e-12;
/// Smallest |I - J| accepted when inverting M(I,J) = [[1,I],[1,J]].
inline constexpr double kPairConditioningFloor = 1e-6;

/// Element of H over the basis 1, i, j, k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0.0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }
  Quaternion inverse() const;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Quaternion operator*(double s, const Quaternion& q) {
  return {s * q.w, s * q.x, s * q.y, s * q.z};
}
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }
constexpr Quaternion operator/(const Quaternion& q, double s) {
  return {q.w / s, q.x / s, q.y / s, q.z / s};
}

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

inline Quaternion quat_mul(const Quaternion& p, const Quaternion& q) { return p * q; }

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// A point of the unit 2-sphere of pure imaginary quaternions (I^2 = -1).
/// Normalized on construction; the real part is stored as exact zero.
class ImaginaryUnit {
 public:
  ImaginaryUnit() : u_(Quaternion::i()) {}
  /// Throws DomainViolation for a (numerically) zero vector.
  ImaginaryUnit(double x, double y, double z);
  explicit ImaginaryUnit(const Quaternion& q) : ImaginaryUnit(q.x, q.y, q.z) {}

  static ImaginaryUnit i() { return {}; }
  static ImaginaryUnit j() { return {0.0, 1.0, 0.0}; }
  static ImaginaryUnit k() { return {0.0, 0.0, 1.0}; }

  const Quaternion& quat() const { return u_; }
  operator const Quaternion&() const { return u_; }  // NOLINT(google-explicit-constructor)
  ImaginaryUnit operator-() const { return ImaginaryUnit(-u_.x, -u_.y, -u_.z); }

  /// Embeds a complex number into the slice C_I.
  Quaternion embed(const Complex& c) const { return {c.real(), c.imag() * u_.x, c.imag() * u_.y, c.imag() * u_.z}; }
  /// Coordinate of the imaginary part along this unit.
  double along(const Quaternion& q) const { return q.x * u_.x + q.y * u_.y + q.z * u_.z; }

  friend bool operator==(const ImaginaryUnit& a, const ImaginaryUnit& b) { return a.u_ == b.u_; }

 private:
  Quaternion u_;
};

inline double distance(const ImaginaryUnit& a, const ImaginaryUnit& b) { return distance(a.quat(), b.quat()); }

/// Deterministic near-uniform sample of the unit sphere, closed under I -> -I.
/// The size is rounded up to an even number.
std::vector<ImaginaryUnit> fibonacci_sphere(std::size_t count);

/// An n-tuple of quaternions lying in one common slice C_I^n.
class SlicePoint {
 public:
  /// Validates that all coordinates share a slice; throws DomainViolation otherwise.
  explicit SlicePoint(std::vector<Quaternion> coords);
  /// The image of the complex point z under x+yi -> x+yI.
  SlicePoint(const std::vector<Complex>& z, const ImaginaryUnit& unit);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<Quaternion>& coords() const { return coords_; }
  const Quaternion& operator[](std::size_t l) const { return coords_[l]; }
  /// std::nullopt when every coordinate is real.
  const std::optional<ImaginaryUnit>& unit() const { return unit_; }
  bool is_real() const { return !unit_.has_value(); }

  /// Complex coordinates relative to `unit`: q_l = Re q_l + (Im q_l . unit) unit.
  std::vector<Complex> complex_coords(const ImaginaryUnit& unit) const;

 private:
  std::vector<Quaternion> coords_;
  std::optional<ImaginaryUnit> unit_;
};

/// 0 for real points, else the normalized imaginary part of the first
/// non-real coordinate.
Quaternion frak_i(const SlicePoint& q);

/// Element of H^{2x1}.
struct StemVector {
  Quaternion f1;
  Quaternion f2;

  /// (1, I) F = f1 + I f2.
  Quaternion recombine(const Quaternion& unit) const { return f1 + unit * f2; }
  double norm() const { return std::sqrt(f1.norm2() + f2.norm2()); }

  friend StemVector operator+(const StemVector& a, const StemVector& b) { return {a.f1 + b.f1, a.f2 + b.f2}; }
  friend StemVector operator-(const StemVector& a, const StemVector& b) { return {a.f1 - b.f1, a.f2 - b.f2}; }
  friend StemVector operator*(double s, const StemVector& v) { return {s * v.f1, s * v.f2}; }
  friend bool operator==(const StemVector&, const StemVector&) = default;
};

/// sigma * v with sigma = [[0,-1],[1,0]].
inline StemVector apply_sigma(const StemVector& v) { return {-v.f2, v.f1}; }

/// p*q = (p1 Id + p2 sigma)(q1 Id + q2 sigma) e1 = (p1 q1 - p2 q2, p1 q2 + p2 q1).
StemVector stem_star(const StemVector& p, const StemVector& q);

/// 2x2 quaternionic matrix [[a,b],[c,d]] acting on column vectors from the left.
struct StemMatrix {
  Quaternion a, b, c, d;

  static StemMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
  /// M(I,J) = [[1,I],[1,J]].
  static StemMatrix slice_pair(const ImaginaryUnit& I, const ImaginaryUnit& J) { return {1.0, I.quat(), 1.0, J.quat()}; }

  StemVector apply(const StemVector& v) const { return {a * v.f1 + b * v.f2, c * v.f1 + d * v.f2}; }
  /// Max-abs entry distance.
  double distance_to(const StemMatrix& o) const;

  friend StemMatrix operator*(const StemMatrix& m, const StemMatrix& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
};

/// M(I,J)^{-1}. Throws DegenerateSlicePair when |I - J| < kPairConditioningFloor.
StemMatrix slice_matrix_inverse(const ImaginaryUnit& I, const ImaginaryUnit& J);

/// Checks I (c, Ic) == (c, Ic) sigma with both sides computed independently.
bool icic_check(const Quaternion& c, const ImaginaryUnit& I, double tol = 1e-12);
/// Largest component deviation between the two sides of the identity.
double icic_deviation(const Quaternion& c, const ImaginaryUnit& I);

}  // namespace slicealg

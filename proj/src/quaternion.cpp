#include "slicealg/quaternion.hpp"

#include <algorithm>
#include <numbers>
#include <ostream>

namespace slicealg {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateSlicePair: return "DegenerateSlicePair";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::OutOfBall: return "OutOfBall";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::NotInPathSpace: return "NotInPathSpace";
    case ErrorKind::StemPairUnavailable: return "StemPairUnavailable";
    case ErrorKind::PathRequired: return "PathRequired";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::PathLeavesDomain: return "PathLeavesDomain";
    case ErrorKind::BranchPointHit: return "BranchPointHit";
    case ErrorKind::RoutingFailed: return "RoutingFailed";
    case ErrorKind::UnitMismatch: return "UnitMismatch";
    case ErrorKind::StencilLeavesDomain: return "StencilLeavesDomain";
    case ErrorKind::StencilLeavesBall: return "StencilLeavesBall";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw SliceError(ErrorKind::DomainViolation, "inverse of zero quaternion");
  return conj() / n2;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

ImaginaryUnit::ImaginaryUnit(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > kRealThreshold)) throw SliceError(ErrorKind::DomainViolation, "imaginary unit from a zero vector");
  u_ = {0.0, x / n, y / n, z / n};
}

std::vector<ImaginaryUnit> fibonacci_sphere(std::size_t count) {
  const std::size_t half = (count + 1) / 2;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<ImaginaryUnit> units;
  units.reserve(2 * half);
  for (std::size_t k = 0; k < half; ++k) {
    const double z = 1.0 - (static_cast<double>(k) + 0.5) / static_cast<double>(half);
    const double r = std::sqrt(1.0 - z * z);
    const double phi = golden * static_cast<double>(k);
    units.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  for (std::size_t k = 0; k < half; ++k) units.push_back(-units[k]);
  return units;
}

SlicePoint::SlicePoint(std::vector<Quaternion> coords) : coords_(std::move(coords)) {
  for (const auto& q : coords_) {
    if (q.imag_norm() > kRealThreshold) {
      unit_ = ImaginaryUnit(q);
      break;
    }
  }
  if (!unit_) return;
  for (const auto& q : coords_) {
    const double along = unit_->along(q);
    const Quaternion off = q.imag() - along * unit_->quat();
    if (off.norm() > 1e-9 * (1.0 + q.norm()))
      throw SliceError(ErrorKind::DomainViolation, "coordinates do not share a common slice");
  }
}

SlicePoint::SlicePoint(const std::vector<Complex>& z, const ImaginaryUnit& unit) {
  coords_.reserve(z.size());
  for (const auto& c : z) {
    coords_.push_back(unit.embed(c));
    if (!unit_ && std::abs(c.imag()) > kRealThreshold) unit_ = c.imag() > 0 ? unit : -unit;
  }
}

std::vector<Complex> SlicePoint::complex_coords(const ImaginaryUnit& unit) const {
  std::vector<Complex> z;
  z.reserve(coords_.size());
  for (const auto& q : coords_) z.emplace_back(q.w, unit.along(q));
  return z;
}

Quaternion frak_i(const SlicePoint& q) {
  for (const auto& c : q.coords()) {
    const Quaternion im = c.imag();
    const double n = im.norm();
    if (n > kRealThreshold) return im / n;
  }
  return {};
}

StemVector stem_star(const StemVector& p, const StemVector& q) {
  return {p.f1 * q.f1 - p.f2 * q.f2, p.f1 * q.f2 + p.f2 * q.f1};
}

double StemMatrix::distance_to(const StemMatrix& o) const {
  return std::max({distance(a, o.a), distance(b, o.b), distance(c, o.c), distance(d, o.d)});
}

StemMatrix slice_matrix_inverse(const ImaginaryUnit& I, const ImaginaryUnit& J) {
  const Quaternion diff = I.quat() - J.quat();
  if (diff.norm() < kPairConditioningFloor)
    throw SliceError(ErrorKind::DegenerateSlicePair, "|I - J| below conditioning floor");
  // Left-inverse rows: a + b = 1, aI + bJ = 0, c + d = 0, cI + dJ = 1.
  const Quaternion c = diff.inverse();
  const Quaternion a = -(J.quat() * c);
  return {a, Quaternion(1.0) - a, c, -c};
}

double icic_deviation(const Quaternion& c, const ImaginaryUnit& I) {
  const Quaternion Ic = I.quat() * c;
  // Left side: I applied to each entry of the row (c, Ic).
  const Quaternion lhs0 = I.quat() * c;
  const Quaternion lhs1 = I.quat() * Ic;
  // Right side: row vector times sigma = [[0,-1],[1,0]].
  const Quaternion rhs0 = 0.0 * c + Ic;
  const Quaternion rhs1 = -c + 0.0 * Ic;
  return std::max(distance(lhs0, rhs0), distance(lhs1, rhs1));
}

bool icic_check(const Quaternion& c, const ImaginaryUnit& I, double tol) {
  return icic_deviation(c, I) <= tol * (1.0 + c.norm());
}

}  // namespace slicealg

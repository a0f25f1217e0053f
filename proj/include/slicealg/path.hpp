#pragma once

#include <cstddef>
#include <vector>

#include "slicealg/quaternion.hpp"

namespace slicealg {

/// A point of C^n.
using CPoint = std::vector<Complex>;

inline constexpr std::size_t kDefaultPathSamples = 256;

double distance(const CPoint& a, const CPoint& b);
bool is_real(const CPoint& z, double tol = kRealThreshold);
CPoint conj(const CPoint& z);

/// Piecewise-linear map [0,1] -> C^n through a list of waypoints, parametrized
/// proportionally to arc length. The start point is unconstrained; see PLPath.
class PathFragment {
 public:
  explicit PathFragment(std::vector<CPoint> waypoints);

  std::size_t dim() const { return waypoints_.front().size(); }
  const std::vector<CPoint>& waypoints() const { return waypoints_; }
  const CPoint& start() const { return waypoints_.front(); }
  const CPoint& end() const { return waypoints_.back(); }
  double length() const { return cumulative_.back(); }

  CPoint operator()(double t) const;
  /// `count` uniform parameter samples (including both ends) followed by every waypoint.
  std::vector<CPoint> samples(std::size_t count = kDefaultPathSamples) const;

 private:
  std::vector<CPoint> waypoints_;
  std::vector<double> cumulative_;
};

/// Element of P(C^n): a PL path whose start point is real.
class PLPath : public PathFragment {
 public:
  /// Throws DomainViolation unless waypoints[0] is real and all waypoints share a dimension.
  explicit PLPath(std::vector<CPoint> waypoints);
  /// Constant path at a real point.
  static PLPath constant(const CPoint& real_point) { return PLPath({real_point}); }
};

/// L_z^w(t) = (1-t) z + t w.
PathFragment segment(const CPoint& z, const CPoint& w);

/// gamma followed by tail, reparametrized to [0,1]. Throws EndpointMismatch
/// when |tail(0) - gamma(1)| > 1e-12.
PLPath concat(const PLPath& gamma, const PathFragment& tail);

/// The waypoint-conjugated path.
PLPath conjugate(const PLPath& gamma);

/// gamma^I = Psi_i^I(gamma), sampled lazily.
class LiftedPath {
 public:
  LiftedPath(PathFragment path, ImaginaryUnit unit) : path_(std::move(path)), unit_(unit) {}

  const ImaginaryUnit& unit() const { return unit_; }
  const PathFragment& base() const { return path_; }
  SlicePoint operator()(double t) const { return SlicePoint(path_(t), unit_); }
  SlicePoint end() const { return SlicePoint(path_.end(), unit_); }
  std::vector<SlicePoint> samples(std::size_t count = kDefaultPathSamples) const;

 private:
  PathFragment path_;
  ImaginaryUnit unit_;
};

LiftedPath lift(const PathFragment& gamma, const ImaginaryUnit& unit);

/// B_P(gamma, r): paths gamma o L_{gamma(1)}^z with |z - gamma(1)| < r.
struct PathBall {
  PLPath center;
  double radius;

  bool contains(const CPoint& z) const { return distance(z, center.end()) < radius; }
};

/// L_gamma(z) = gamma o L_{gamma(1)}^z. Throws OutOfBall when z is not strictly inside.
PLPath path_ball_member(const PathBall& ball, const CPoint& z);

/// The same extension without a radius check.
PLPath extend_to(const PLPath& gamma, const CPoint& z);

}  // namespace slicealg

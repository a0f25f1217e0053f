#include "slicealg/path.hpp"

#include <algorithm>

namespace slicealg {

double distance(const CPoint& a, const CPoint& b) {
  double s = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l) s += std::norm(a[l] - b[l]);
  return std::sqrt(s);
}

bool is_real(const CPoint& z, double tol) {
  return std::all_of(z.begin(), z.end(), [tol](const Complex& c) { return std::abs(c.imag()) <= tol; });
}

CPoint conj(const CPoint& z) {
  CPoint out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [](const Complex& c) { return std::conj(c); });
  return out;
}

PathFragment::PathFragment(std::vector<CPoint> waypoints) : waypoints_(std::move(waypoints)) {
  if (waypoints_.empty()) throw SliceError(ErrorKind::DomainViolation, "path needs at least one waypoint");
  const std::size_t n = waypoints_.front().size();
  if (n == 0) throw SliceError(ErrorKind::DomainViolation, "path waypoints must have dimension >= 1");
  cumulative_.reserve(waypoints_.size());
  cumulative_.push_back(0.0);
  for (std::size_t s = 1; s < waypoints_.size(); ++s) {
    if (waypoints_[s].size() != n) throw SliceError(ErrorKind::DomainViolation, "waypoint dimension mismatch");
    cumulative_.push_back(cumulative_.back() + distance(waypoints_[s - 1], waypoints_[s]));
  }
}

CPoint PathFragment::operator()(double t) const {
  t = std::clamp(t, 0.0, 1.0);
  const double total = cumulative_.back();
  if (total == 0.0 || waypoints_.size() == 1) return t < 1.0 ? waypoints_.front() : waypoints_.back();
  if (t == 1.0) return waypoints_.back();
  const double s = t * total;
  // First waypoint with cumulative length > s; segment is [seg-1, seg].
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t seg = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  if (seg >= waypoints_.size()) return waypoints_.back();
  const double span = cumulative_[seg] - cumulative_[seg - 1];
  const double u = span > 0.0 ? (s - cumulative_[seg - 1]) / span : 0.0;
  const CPoint& a = waypoints_[seg - 1];
  const CPoint& b = waypoints_[seg];
  CPoint p(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) p[l] = (1.0 - u) * a[l] + u * b[l];
  return p;
}

std::vector<CPoint> PathFragment::samples(std::size_t count) const {
  std::vector<CPoint> out;
  out.reserve(count + waypoints_.size());
  for (std::size_t k = 0; k < count; ++k) {
    const double t = count > 1 ? static_cast<double>(k) / static_cast<double>(count - 1) : 1.0;
    out.push_back((*this)(t));
  }
  out.insert(out.end(), waypoints_.begin(), waypoints_.end());
  return out;
}

PLPath::PLPath(std::vector<CPoint> waypoints) : PathFragment(std::move(waypoints)) {
  for (const auto& c : start())
    if (c.imag() != 0.0) throw SliceError(ErrorKind::DomainViolation, "path must start at a real point");
}

PathFragment segment(const CPoint& z, const CPoint& w) {
  if (z.size() != w.size()) throw SliceError(ErrorKind::DomainViolation, "segment endpoints differ in dimension");
  return PathFragment({z, w});
}

PLPath concat(const PLPath& gamma, const PathFragment& tail) {
  if (tail.dim() != gamma.dim() || distance(tail.start(), gamma.end()) > 1e-12)
    throw SliceError(ErrorKind::EndpointMismatch, "tail does not start at gamma(1)");
  std::vector<CPoint> pts = gamma.waypoints();
  // The junction point is kept from gamma so the real start is untouched.
  pts.insert(pts.end(), tail.waypoints().begin() + 1, tail.waypoints().end());
  return PLPath(std::move(pts));
}

PLPath conjugate(const PLPath& gamma) {
  std::vector<CPoint> pts;
  pts.reserve(gamma.waypoints().size());
  for (const auto& p : gamma.waypoints()) pts.push_back(conj(p));
  return PLPath(std::move(pts));
}

std::vector<SlicePoint> LiftedPath::samples(std::size_t count) const {
  std::vector<SlicePoint> out;
  for (const auto& z : path_.samples(count)) out.emplace_back(z, unit_);
  return out;
}

LiftedPath lift(const PathFragment& gamma, const ImaginaryUnit& unit) { return {gamma, unit}; }

PLPath extend_to(const PLPath& gamma, const CPoint& z) { return concat(gamma, segment(gamma.end(), z)); }

PLPath path_ball_member(const PathBall& ball, const CPoint& z) {
  if (!ball.contains(z)) throw SliceError(ErrorKind::OutOfBall, "point is not inside the path ball");
  return extend_to(ball.center, z);
}

}  // namespace slicealg

#include "slicealg/stem.hpp"

#include <algorithm>
#include <cstring>

namespace slicealg {

std::string UnitPairCache::key(const PLPath& gamma) {
  std::string k;
  for (const auto& p : gamma.waypoints()) {
    const auto* bytes = reinterpret_cast<const char*>(p.data());
    k.append(bytes, p.size() * sizeof(Complex));
  }
  return k;
}

std::optional<UnitPair> UnitPairCache::find(const PLPath& gamma) const {
  const std::string k = key(gamma);
  std::lock_guard lock(mutex_);
  if (auto it = pairs_.find(k); it != pairs_.end()) return it->second;
  return std::nullopt;
}

void UnitPairCache::store(const PLPath& gamma, const UnitPair& pair) {
  const std::string k = key(gamma);
  std::lock_guard lock(mutex_);
  pairs_.emplace(k, pair);
}

std::size_t UnitPairCache::size() const {
  std::lock_guard lock(mutex_);
  return pairs_.size();
}

UnitPair StemQuery::unit_pair(const PLPath& gamma) const {
  if (cache)
    if (auto hit = cache->find(gamma)) return *hit;
  const UnitPair pair = radius_two(domain2, gamma, sphere_samples, path_samples);
  if (cache) cache->store(gamma, pair);
  return pair;
}

StemVector stem_at_pair(const StemQuery& query, const PLPath& gamma, const ImaginaryUnit& I, const ImaginaryUnit& J) {
  const StemMatrix inv = slice_matrix_inverse(I, J);
  return inv.apply({eval_along(query.f, gamma, I), eval_along(query.f, gamma, J)});
}

StemVector stem_at(const StemQuery& query, const PLPath& gamma) {
  if (is_real(gamma.end(), 0.0) && std::holds_alternative<PolyFunction>(query.f.body))
    return {eval_point(query.f, SlicePoint(gamma.end(), ImaginaryUnit::i())), 0.0};
  try {
    const UnitPair pair = query.unit_pair(gamma);
    return stem_at_pair(query, gamma, pair.first, pair.second);
  } catch (const SliceError& e) {
    // A real endpoint reached by a single admissible lift still has the stem (f, 0).
    if (e.kind() != ErrorKind::StemPairUnavailable || !is_real(gamma.end(), 0.0)) throw;
    const auto units = slice_units_of(query.domain2, gamma, query.sphere_samples, query.path_samples);
    if (units.empty()) throw;
    return {eval_along(query.f, gamma, units.front()), 0.0};
  }
}

PLPath resolve_route(const SliceDomain& domain1, const SlicePoint& q, const std::optional<PLPath>& route,
                     std::size_t path_samples) {
  const ImaginaryUnit unit = routing_unit(q);
  const CPoint z = q.complex_coords(unit);
  if (!route) {
    if (!domain1.anchor()) throw SliceError(ErrorKind::RoutingFailed, "domain has no anchor; supply a route");
    PLPath gamma({*domain1.anchor(), z});
    if (!path_in_domain(domain1, gamma, unit, path_samples))
      throw SliceError(ErrorKind::RoutingFailed, "anchor segment leaves the domain; supply a route");
    return gamma;
  }
  const double tol = 1e-12 * (1.0 + distance(z, CPoint(z.size())));
  PLPath gamma = *route;
  if (distance(gamma.end(), z) > tol) {
    if (distance(gamma.end(), conj(z)) > tol)
      throw SliceError(ErrorKind::UnitMismatch, "route does not lift to the requested point");
    gamma = conjugate(gamma);
  }
  if (!path_in_domain(domain1, gamma, unit, path_samples))
    throw SliceError(ErrorKind::RoutingFailed, "lift of the route leaves the domain");
  return gamma;
}

StemVector stem_at_point(const StemQuery& query, const SlicePoint& q, const std::optional<PLPath>& route) {
  if (!query.domain1.contains(q)) throw SliceError(ErrorKind::DomainViolation, "point is outside domain1");
  if (q.is_real() && query.f.pointwise()) return {eval_point(query.f, q), 0.0};
  return stem_at(query, resolve_route(query.domain1, q, route, query.path_samples));
}

void CRReport::add(CRSample sample) {
  max_residual = std::max(max_residual, sample.residual);
  per_point.push_back(std::move(sample));
  pass = max_residual <= tolerance;
}

void CRReport::merge(const CRReport& other) {
  for (const auto& s : other.per_point) add(s);
}

namespace {

CPoint shifted(CPoint z, std::size_t l, Complex delta) {
  z[l] += delta;
  return z;
}

}  // namespace

double cr_operator_norm(const std::function<Quaternion(const CPoint&)>& f_of_z, const CPoint& z, std::size_t l,
                        const ImaginaryUnit& unit, double h) {
  const Quaternion dx = (f_of_z(shifted(z, l, h)) - f_of_z(shifted(z, l, -h))) / (2.0 * h);
  const Quaternion dy = (f_of_z(shifted(z, l, Complex(0.0, h))) - f_of_z(shifted(z, l, Complex(0.0, -h)))) / (2.0 * h);
  return 0.5 * (dx + unit.quat() * dy).norm();
}

CRReport cr_residual_slice(const std::function<Quaternion(const SlicePoint&)>& f, const SlicePoint& q, double h,
                           double tolerance, std::optional<ImaginaryUnit> unit) {
  const ImaginaryUnit I = unit.value_or(routing_unit(q));
  const CPoint z = q.complex_coords(I);
  CRReport report;
  report.h = h;
  report.tolerance = tolerance;
  const auto f_of_z = [&](const CPoint& w) { return f(SlicePoint(w, I)); };
  for (std::size_t l = 0; l < q.dim(); ++l) report.add({q.coords(), l, cr_operator_norm(f_of_z, z, l, I, h)});
  return report;
}

CRReport cr_residual_slice(const SliceFunction& f, const SlicePoint& q, double h, double tolerance) {
  const ImaginaryUnit I = routing_unit(q);
  const CPoint z = q.complex_coords(I);
  for (std::size_t l = 0; l < z.size(); ++l)
    for (Complex d : {Complex(h), Complex(-h), Complex(0.0, h), Complex(0.0, -h)})
      if (!f.domain.contains(shifted(z, l, d), I))
        throw SliceError(ErrorKind::StencilLeavesDomain, "stencil point outside the declared domain");
  return cr_residual_slice([&f](const SlicePoint& p) { return eval_point(f, p); }, q, h, tolerance, I);
}

CRReport stem_holomorphy_check(const StemQuery& query, const PLPath& gamma, double h, double tolerance,
                               PairPolicy policy) {
  const double r_path = radius_pathball(query.domain1, gamma, query.sphere_samples, query.path_samples);
  const UnitPair pair = query.unit_pair(gamma);
  const double r1 = std::min(pair.radius, r_path);
  if (!(h < r1)) throw SliceError(ErrorKind::StencilLeavesBall, "step exceeds min(r^2_{gamma,Omega2}, r_{gamma,Omega1})");
  const PathBall ball{gamma, r1};

  std::vector<ImaginaryUnit> units;
  if (policy == PairPolicy::PerPoint)
    units = slice_units_of(query.domain2, gamma, query.sphere_samples, query.path_samples);
  std::size_t stencil_index = 0;
  const auto stem_of = [&](const CPoint& z) {
    const PLPath member = path_ball_member(ball, z);
    if (policy == PairPolicy::Fixed) return stem_at_pair(query, member, pair.first, pair.second);
    const std::size_t m = units.size();
    const std::size_t a = (3 * stencil_index) % m;
    std::size_t b = (a + m / 2 + stencil_index) % m;
    if (b == a || distance(units[a], units[b]) < kPairConditioningFloor) b = (a + 1) % m;
    ++stencil_index;
    return stem_at_pair(query, member, units[a], units[b]);
  };

  CRReport report;
  report.h = h;
  report.tolerance = tolerance;
  const CPoint z = gamma.end();
  for (std::size_t l = 0; l < z.size(); ++l) {
    const StemVector dx = 0.5 / h * (stem_of(shifted(z, l, h)) - stem_of(shifted(z, l, -h)));
    const StemVector dy = 0.5 / h * (stem_of(shifted(z, l, Complex(0.0, h))) - stem_of(shifted(z, l, Complex(0.0, -h))));
    const StemVector op = 0.5 * (dx + apply_sigma(dy));
    report.add({SlicePoint(z, pair.first).coords(), l, op.norm()});
  }
  return report;
}

}  // namespace slicealg

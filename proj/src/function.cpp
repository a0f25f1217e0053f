#include "slicealg/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slicealg {

PolyFunction::PolyFunction(std::size_t n, std::map<MultiIndex, Quaternion> terms) : n_(n) {
  for (const auto& [k, a] : terms) add_term(k, a);
}

PolyFunction PolyFunction::univariate(const std::vector<Quaternion>& coeffs) {
  PolyFunction p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term({static_cast<unsigned>(k)}, coeffs[k]);
  return p;
}

PolyFunction PolyFunction::constant(std::size_t n, const Quaternion& c) {
  PolyFunction p(n);
  p.add_term(MultiIndex(n, 0), c);
  return p;
}

void PolyFunction::add_term(const MultiIndex& k, const Quaternion& a) {
  if (k.size() != n_) throw SliceError(ErrorKind::Schema, "multi-index length differs from the number of variables");
  terms_[k] += a;
}

unsigned PolyFunction::degree() const {
  unsigned d = 0;
  for (const auto& [k, a] : terms_) {
    if (a == Quaternion()) continue;
    unsigned s = 0;
    for (unsigned e : k) s += e;
    d = std::max(d, s);
  }
  return d;
}

Quaternion PolyFunction::operator()(const SlicePoint& q) const {
  if (q.dim() != n_) throw SliceError(ErrorKind::DomainViolation, "point dimension differs from the polynomial");
  std::vector<unsigned> max_power(n_, 0);
  for (const auto& [k, a] : terms_)
    for (std::size_t l = 0; l < n_; ++l) max_power[l] = std::max(max_power[l], k[l]);
  std::vector<std::vector<Quaternion>> powers(n_);
  for (std::size_t l = 0; l < n_; ++l) {
    powers[l].reserve(max_power[l] + 1);
    powers[l].push_back(1.0);
    for (unsigned e = 1; e <= max_power[l]; ++e) powers[l].push_back(powers[l].back() * q[l]);
  }
  Quaternion sum;
  for (const auto& [k, a] : terms_) {
    Quaternion mono(1.0);
    for (std::size_t l = 0; l < n_; ++l)
      if (k[l] != 0) mono = mono * powers[l][k[l]];
    sum += mono * a;
  }
  return sum;
}

Complex MonodromyFunction::principal(const Complex& z) const {
  return branch == Branch::Sqrt ? std::sqrt(z) : std::log(z);
}

namespace {

constexpr double kBranchClearance = 1e-9;
constexpr double kMaxArgStep = std::numbers::pi / 4.0;

double segment_distance_to_origin(const Complex& a, const Complex& b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(a);
  const double t = std::clamp(-(a.real() * d.real() + a.imag() * d.imag()) / len2, 0.0, 1.0);
  return std::abs(a + t * d);
}

Complex nearest_branch(MonodromyFunction::Branch branch, const Complex& z, const Complex& prev) {
  if (branch == MonodromyFunction::Branch::Sqrt) {
    const Complex c = std::sqrt(z);
    return std::abs(c - prev) <= std::abs(-c - prev) ? c : -c;
  }
  const Complex c = std::log(z);
  const double turns = std::round((prev.imag() - c.imag()) / (2.0 * std::numbers::pi));
  return c + Complex(0.0, 2.0 * std::numbers::pi * turns);
}

}  // namespace

Complex MonodromyFunction::continue_along(const PathFragment& gamma) const {
  if (gamma.dim() != 1) throw SliceError(ErrorKind::DomainViolation, "monodromy functions are one-variable");
  const Complex start = gamma.start()[0];
  if (!(start.real() > 0.0) || start.imag() != 0.0)
    throw SliceError(ErrorKind::PathLeavesDomain, "continuation must start on the positive real axis");
  Complex value = principal(start);
  const auto& pts = gamma.waypoints();
  for (std::size_t s = 1; s < pts.size(); ++s) {
    const Complex a = pts[s - 1][0];
    const Complex b = pts[s][0];
    if (segment_distance_to_origin(a, b) < kBranchClearance)
      throw SliceError(ErrorKind::BranchPointHit, "path passes through the branch point 0");
    // Walk [a, b] in steps whose endpoints subtend less than pi/4 at the origin.
    double t = 0.0;
    Complex here = a;
    while (t < 1.0) {
      double step = 1.0 - t;
      Complex next = a + (t + step) * (b - a);
      while (std::abs(std::arg(next / here)) >= kMaxArgStep) {
        step *= 0.5;
        next = a + (t + step) * (b - a);
      }
      value = nearest_branch(branch, next, value);
      here = next;
      t += step;
    }
  }
  return value;
}

bool SliceFunction::pointwise() const {
  if (std::holds_alternative<PolyFunction>(body)) return true;
  if (std::holds_alternative<MonodromyFunction>(body))
    return std::holds_alternative<domains::SlitPlane>(domain.kind());
  return static_cast<bool>(std::get<CustomFunction>(body).point);
}

Quaternion eval_point(const SliceFunction& f, const SlicePoint& q) {
  if (q.dim() != f.dim()) throw SliceError(ErrorKind::DomainViolation, "point dimension differs from the function");
  if (!f.domain.contains(q)) throw SliceError(ErrorKind::OutOfDomain, "point is outside the declared domain");
  if (const auto* p = std::get_if<PolyFunction>(&f.body)) return (*p)(q);
  if (!f.pointwise()) throw SliceError(ErrorKind::PathRequired, "value depends on the path; use eval_along");
  if (const auto* m = std::get_if<MonodromyFunction>(&f.body)) {
    // On the slit plane the principal branch is the continuation along any path in the domain.
    const ImaginaryUnit unit = routing_unit(q);
    return unit.embed(m->principal(q.complex_coords(unit)[0]));
  }
  return std::get<CustomFunction>(f.body).point(q);
}

Quaternion eval_along(const SliceFunction& f, const PLPath& gamma, const ImaginaryUnit& unit) {
  if (gamma.dim() != f.dim()) throw SliceError(ErrorKind::DomainViolation, "path dimension differs from the function");
  if (!std::holds_alternative<domains::FullSpace>(f.domain.kind()) && !path_in_domain(f.domain, gamma, unit))
    throw SliceError(ErrorKind::PathLeavesDomain, "lifted path leaves the declared domain");
  if (const auto* p = std::get_if<PolyFunction>(&f.body)) return (*p)(SlicePoint(gamma.end(), unit));
  if (const auto* m = std::get_if<MonodromyFunction>(&f.body)) return unit.embed(m->continue_along(gamma));
  return std::get<CustomFunction>(f.body).along(gamma, unit);
}

}  // namespace slicealg

#include "slicealg/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace slicealg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kUnitMatch = 1e-12;

// +1 / -1 when unit equals +-reference, 0 otherwise.
int unit_sign(const ImaginaryUnit& unit, const ImaginaryUnit& reference) {
  const double d = reference.along(unit.quat());
  if (d > 1.0 - kUnitMatch) return 1;
  if (d < -1.0 + kUnitMatch) return -1;
  return 0;
}

bool in_open(double v, const std::array<double, 2>& range) { return v > range[0] && v < range[1]; }

// Smallest rectangle margin of z read in box coordinates; negative outside.
double box_margin(const domains::SliceBox& box, const CPoint& z, int sign) {
  double margin = kInfiniteRadius;
  for (std::size_t l = 0; l < z.size(); ++l) {
    const double x = z[l].real();
    const double y = sign * z[l].imag();
    margin = std::min({margin, x - box.re[l][0], box.re[l][1] - x, y - box.im[l][0], box.im[l][1] - y});
  }
  return margin;
}

std::optional<CPoint> default_anchor(const SliceDomain::Kind& kind) {
  return std::visit(
      overloaded{
          [](const domains::FullSpace& d) -> std::optional<CPoint> { return CPoint(d.n, Complex(0.0)); },
          [](const domains::AxialBall& d) -> std::optional<CPoint> {
            CPoint c;
            for (double v : d.center) c.emplace_back(v, 0.0);
            return c;
          },
          [](const domains::SliceBox& d) -> std::optional<CPoint> {
            CPoint c;
            for (std::size_t l = 0; l < d.re.size(); ++l) {
              if (!in_open(0.0, d.im[l])) return std::nullopt;
              c.emplace_back(0.5 * (d.re[l][0] + d.re[l][1]), 0.0);
            }
            return c;
          },
          [](const domains::SlitPlane&) -> std::optional<CPoint> { return CPoint{Complex(1.0)}; },
          [](const domains::Union& d) -> std::optional<CPoint> {
            for (const auto& m : d.members)
              if (m.anchor()) return m.anchor();
            return std::nullopt;
          },
      },
      kind);
}

}  // namespace

SliceDomain::SliceDomain(Kind kind, std::optional<CPoint> anchor) : kind_(std::move(kind)) {
  dim_ = std::visit(
      overloaded{
          [](const domains::FullSpace& d) { return d.n; },
          [](const domains::AxialBall& d) { return d.center.size(); },
          [](const domains::SliceBox& d) { return d.re.size(); },
          [](const domains::SlitPlane&) { return std::size_t{1}; },
          [](const domains::Union& d) { return d.members.empty() ? std::size_t{0} : d.members.front().dim(); },
      },
      kind_);
  if (dim_ == 0) throw SliceError(ErrorKind::Schema, "domain dimension must be >= 1");
  if (const auto* ball = std::get_if<domains::AxialBall>(&kind_); ball && !(ball->radius > 0.0))
    throw SliceError(ErrorKind::Schema, "ball radius must be positive");
  if (const auto* box = std::get_if<domains::SliceBox>(&kind_); box && box->im.size() != box->re.size())
    throw SliceError(ErrorKind::Schema, "slice-box needs one re and one im range per coordinate");
  if (const auto* u = std::get_if<domains::Union>(&kind_)) {
    for (const auto& m : u->members)
      if (m.dim() != dim_) throw SliceError(ErrorKind::Schema, "union members differ in dimension");
  }
  anchor_ = anchor ? std::move(anchor) : default_anchor(kind_);
  if (anchor_) {
    if (anchor_->size() != dim_ || !is_real(*anchor_, 0.0))
      throw SliceError(ErrorKind::Schema, "anchor must be a real point of matching dimension");
    if (!contains(*anchor_, ImaginaryUnit::i())) throw SliceError(ErrorKind::Schema, "anchor lies outside the domain");
  }
}

std::string SliceDomain::kind_name() const {
  return std::visit(overloaded{
                        [](const domains::FullSpace&) { return std::string("full-space"); },
                        [](const domains::AxialBall&) { return std::string("axially-symmetric-ball"); },
                        [](const domains::SliceBox&) { return std::string("slice-box"); },
                        [](const domains::SlitPlane&) { return std::string("slit-plane"); },
                        [](const domains::Union&) { return std::string("union"); },
                    },
                    kind_);
}

bool SliceDomain::contains(const CPoint& z, const ImaginaryUnit& unit) const {
  if (z.size() != dim_) return false;
  return std::visit(
      overloaded{
          [](const domains::FullSpace&) { return true; },
          [&](const domains::AxialBall& d) {
            double s = 0.0;
            for (std::size_t l = 0; l < z.size(); ++l) s += std::norm(z[l] - d.center[l]);
            return s < d.radius * d.radius;
          },
          [&](const domains::SliceBox& d) {
            if (is_real(z)) return box_margin(d, z, 1) > 0.0;
            const int sign = unit_sign(unit, d.unit);
            return sign != 0 && box_margin(d, z, sign) > 0.0;
          },
          [&](const domains::SlitPlane&) { return !(std::abs(z[0].imag()) <= kRealThreshold && z[0].real() <= 0.0); },
          [&](const domains::Union& d) {
            return std::any_of(d.members.begin(), d.members.end(),
                               [&](const SliceDomain& m) { return m.contains(z, unit); });
          },
      },
      kind_);
}

bool SliceDomain::contains(const SlicePoint& q) const {
  const ImaginaryUnit unit = routing_unit(q);
  return contains(q.complex_coords(unit), unit);
}

double SliceDomain::distance_to_complement(const CPoint& z, const ImaginaryUnit& unit) const {
  if (!contains(z, unit)) return 0.0;
  return std::visit(
      overloaded{
          [](const domains::FullSpace&) { return kInfiniteRadius; },
          [&](const domains::AxialBall& d) {
            double s = 0.0;
            for (std::size_t l = 0; l < z.size(); ++l) s += std::norm(z[l] - d.center[l]);
            return d.radius - std::sqrt(s);
          },
          [&](const domains::SliceBox& d) {
            // A real point seen from a foreign slice: the trace there is the real
            // segment, which has empty interior.
            const int sign = unit_sign(unit, d.unit);
            return sign == 0 ? 0.0 : std::max(0.0, box_margin(d, z, sign));
          },
          [&](const domains::SlitPlane&) { return z[0].real() > 0.0 ? std::abs(z[0]) : std::abs(z[0].imag()); },
          [&](const domains::Union& d) {
            double best = 0.0;
            for (const auto& m : d.members) best = std::max(best, m.distance_to_complement(z, unit));
            return best;
          },
      },
      kind_);
}

std::vector<ImaginaryUnit> SliceDomain::declared_units() const {
  if (const auto* box = std::get_if<domains::SliceBox>(&kind_)) return {box->unit, -box->unit};
  std::vector<ImaginaryUnit> out;
  if (const auto* u = std::get_if<domains::Union>(&kind_)) {
    for (const auto& m : u->members) {
      const auto units = m.declared_units();
      out.insert(out.end(), units.begin(), units.end());
    }
  }
  return out;
}

bool SliceDomain::conjugation_stable() const {
  return std::visit(overloaded{
                        [](const domains::SliceBox& d) {
                          for (const auto& r : d.im)
                            if (r[0] != -r[1]) return false;
                          return true;
                        },
                        [](const domains::Union& d) {
                          return std::all_of(d.members.begin(), d.members.end(),
                                             [](const SliceDomain& m) { return m.conjugation_stable(); });
                        },
                        [](const auto&) { return true; },
                    },
                    kind_);
}

SlicePoint SliceDomain::sample_point(Rng& rng) const {
  return std::visit(
      overloaded{
          [&](const domains::FullSpace& d) {
            CPoint z(d.n);
            for (auto& c : z) c = Complex(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
            return SlicePoint(z, random_unit(rng));
          },
          [&](const domains::AxialBall& d) {
            CPoint c;
            for (double v : d.center) c.emplace_back(v, 0.0);
            const ImaginaryUnit unit = random_unit(rng);
            return SlicePoint(random_in_ball(rng, c, 0.98 * d.radius), unit);
          },
          [&](const domains::SliceBox& d) {
            CPoint z(d.re.size());
            for (std::size_t l = 0; l < z.size(); ++l) {
              const double mr = 0.01 * (d.re[l][1] - d.re[l][0]);
              const double mi = 0.01 * (d.im[l][1] - d.im[l][0]);
              z[l] = Complex(uniform(rng, d.re[l][0] + mr, d.re[l][1] - mr), uniform(rng, d.im[l][0] + mi, d.im[l][1] - mi));
            }
            return SlicePoint(z, d.unit);
          },
          [&](const domains::SlitPlane&) {
            const double r = uniform(rng, 0.05, 3.0);
            const double theta = uniform(rng, -std::numbers::pi + 0.05, std::numbers::pi - 0.05);
            return SlicePoint(CPoint{std::polar(r, theta)}, random_unit(rng));
          },
          [&](const domains::Union& d) {
            const auto idx = std::uniform_int_distribution<std::size_t>(0, d.members.size() - 1)(rng);
            return d.members[idx].sample_point(rng);
          },
      },
      kind_);
}

bool path_in_domain(const SliceDomain& domain, const PathFragment& gamma, const ImaginaryUnit& unit,
                    std::size_t path_samples) {
  if (gamma.dim() != domain.dim()) return false;
  for (const auto& w : gamma.waypoints())
    if (!domain.contains(w, unit)) return false;
  for (std::size_t k = 0; k < path_samples; ++k) {
    const double t = path_samples > 1 ? static_cast<double>(k) / static_cast<double>(path_samples - 1) : 1.0;
    if (!domain.contains(gamma(t), unit)) return false;
  }
  return true;
}

std::vector<ImaginaryUnit> candidate_units(const SliceDomain& domain, std::size_t sphere_samples) {
  std::vector<ImaginaryUnit> units = fibonacci_sphere(sphere_samples);
  for (const auto& u : domain.declared_units()) {
    const bool present =
        std::any_of(units.begin(), units.end(), [&](const ImaginaryUnit& v) { return distance(u, v) < kUnitMatch; });
    if (!present) units.push_back(u);
  }
  return units;
}

std::vector<ImaginaryUnit> slice_units_of(const SliceDomain& domain, const PLPath& gamma, std::size_t sphere_samples,
                                          std::size_t path_samples) {
  std::vector<ImaginaryUnit> out;
  const auto candidates = candidate_units(domain, sphere_samples);
  if (is_real(gamma.end(), 0.0) && std::all_of(gamma.waypoints().begin(), gamma.waypoints().end(),
                                                 [](const CPoint& p) { return is_real(p, 0.0); })) {
    // A real path has the same lift in every slice.
    if (path_in_domain(domain, gamma, ImaginaryUnit::i(), path_samples)) return candidates;
    return out;
  }
  for (const auto& u : candidates)
    if (path_in_domain(domain, gamma, u, path_samples)) out.push_back(u);
  return out;
}

double radius_point(const SliceDomain& domain, const PLPath& gamma, const ImaginaryUnit& unit) {
  if (!domain.contains(gamma.end(), unit)) throw SliceError(ErrorKind::NotInDomain, "gamma^I(1) is outside the domain");
  return domain.distance_to_complement(gamma.end(), unit);
}

double radius_pathball(const SliceDomain& domain, const PLPath& gamma, std::size_t sphere_samples,
                       std::size_t path_samples) {
  const auto units = slice_units_of(domain, gamma, sphere_samples, path_samples);
  if (units.empty()) throw SliceError(ErrorKind::NotInPathSpace, "no sampled unit lifts gamma into the domain");
  double best = 0.0;
  for (const auto& u : units) best = std::max(best, radius_point(domain, gamma, u));
  return best;
}

UnitPair radius_two(const SliceDomain& domain, const PLPath& gamma, std::size_t sphere_samples,
                    std::size_t path_samples) {
  const auto units = slice_units_of(domain, gamma, sphere_samples, path_samples);
  std::vector<double> radii;
  radii.reserve(units.size());
  for (const auto& u : units) radii.push_back(radius_point(domain, gamma, u));

  double best = -1.0;
  for (std::size_t a = 0; a < units.size(); ++a)
    for (std::size_t b = a + 1; b < units.size(); ++b)
      if (distance(units[a], units[b]) >= kPairConditioningFloor) best = std::max(best, std::min(radii[a], radii[b]));
  if (best < 0.0) throw SliceError(ErrorKind::StemPairUnavailable, "fewer than two sampled units lift gamma inside");

  UnitPair choice;
  double best_sep = -1.0;
  for (std::size_t a = 0; a < units.size(); ++a) {
    for (std::size_t b = a + 1; b < units.size(); ++b) {
      const double sep = distance(units[a], units[b]);
      if (sep < kPairConditioningFloor) continue;
      const double r = std::min(radii[a], radii[b]);
      if (r >= (1.0 - kPairRadiusSlack) * best && sep > best_sep) {
        best_sep = sep;
        choice = {best, units[a], units[b]};
      }
    }
  }
  return choice;
}

ImaginaryUnit routing_unit(const SlicePoint& q) { return q.unit().value_or(ImaginaryUnit::i()); }

namespace {

void collect_anchors(const SliceDomain& domain, std::vector<CPoint>& out) {
  if (domain.anchor()) out.push_back(*domain.anchor());
  if (const auto* u = std::get_if<domains::Union>(&domain.kind()))
    for (const auto& m : u->members) collect_anchors(m, out);
}

CPoint real_projection(const CPoint& z) {
  CPoint r(z.size());
  for (std::size_t l = 0; l < z.size(); ++l) r[l] = Complex(z[l].real(), 0.0);
  return r;
}

std::optional<PLPath> first_contained(const SliceDomain& domain, const std::vector<std::vector<CPoint>>& candidates,
                                      const ImaginaryUnit& unit, std::size_t path_samples) {
  for (const auto& c : candidates) {
    PLPath p(c);
    if (path_in_domain(domain, p, unit, path_samples)) return p;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PLPath> route_to(const SliceDomain& domain, const SlicePoint& q, std::size_t path_samples) {
  const ImaginaryUnit unit = routing_unit(q);
  const CPoint z = q.complex_coords(unit);
  if (!domain.contains(z, unit)) return std::nullopt;
  std::vector<CPoint> starts;
  collect_anchors(domain, starts);
  const CPoint foot = real_projection(z);
  std::vector<std::vector<CPoint>> candidates;
  for (const auto& s : starts) {
    candidates.push_back({s, z});
    candidates.push_back({s, foot, z});
  }
  return first_contained(domain, candidates, unit, path_samples);
}

RealPathConnectedReport check_real_path_connected(const SliceDomain& domain, std::size_t trials, std::uint64_t seed,
                                                  Execution exec) {
  std::vector<std::optional<PLPath>> routes(trials);
  std::vector<std::optional<SlicePoint>> points(trials);
  parallel_for(trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    points[t] = domain.sample_point(rng);
    routes[t] = route_to(domain, *points[t]);
  });
  RealPathConnectedReport report;
  report.trials = trials;
  constexpr std::size_t kMaxWitnesses = 8;
  for (std::size_t t = 0; t < trials; ++t) {
    if (routes[t]) {
      ++report.successes;
      if (report.witnesses.size() < kMaxWitnesses) report.witnesses.push_back(*routes[t]);
    } else {
      report.refuted.push_back(*points[t]);
    }
  }
  report.ratio = trials ? static_cast<double>(report.successes) / static_cast<double>(trials) : 1.0;
  return report;
}

namespace {

struct StemTrial {
  std::size_t paths = 0;
  std::size_t pairs = 0;
  std::size_t min_units = std::numeric_limits<std::size_t>::max();
  std::optional<PLPath> cond_i;
  std::optional<std::array<PLPath, 2>> cond_ii;
  std::size_t cond_i_count = 0;
  std::size_t cond_ii_count = 0;
  std::size_t empty = 0;
};

std::size_t intersection_size(const std::vector<ImaginaryUnit>& a, const std::vector<ImaginaryUnit>& b) {
  std::size_t n = 0;
  for (const auto& u : a)
    if (std::any_of(b.begin(), b.end(), [&](const ImaginaryUnit& v) { return distance(u, v) < kUnitMatch; })) ++n;
  return n;
}

}  // namespace

StemPreservingReport check_stem_preserving(const SliceDomain& domain1, const SliceDomain& domain2, std::size_t trials,
                                           std::uint64_t seed, Execution exec, std::size_t sphere_samples) {
  std::vector<StemTrial> results(trials);
  parallel_for(trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    StemTrial& r = results[t];
    const SlicePoint q = domain1.sample_point(rng);
    const auto alpha = route_to(domain1, q);
    if (!alpha) return;
    const CPoint z = alpha->end();
    // Second route to the same endpoint through a random waypoint of Omega_1.
    const SlicePoint mid = domain1.sample_point(rng);
    const CPoint m = mid.complex_coords(routing_unit(mid));
    std::vector<PLPath> betas;
    for (auto&& wp : {std::vector<CPoint>{alpha->start(), m, z}, std::vector<CPoint>{alpha->start(), conj(z), z}}) {
      PLPath beta(wp);
      if (!slice_units_of(domain1, beta, sphere_samples).empty()) betas.push_back(std::move(beta));
    }

    auto check_i = [&](const PLPath& path) {
      ++r.paths;
      auto units = slice_units_of(domain2, path, sphere_samples);
      r.min_units = std::min(r.min_units, units.size());
      if (units.size() < 2) {
        ++r.cond_i_count;
        if (!r.cond_i) r.cond_i = path;
      }
      return units;
    };
    const auto ua = check_i(*alpha);
    for (const auto& beta : betas) {
      const auto ub = check_i(beta);
      ++r.pairs;
      const std::size_t common = intersection_size(ua, ub);
      if (common == 0) ++r.empty;
      if (common == 1) {
        ++r.cond_ii_count;
        if (!r.cond_ii) r.cond_ii = std::array<PLPath, 2>{*alpha, beta};
      }
    }
  });

  StemPreservingReport report;
  report.min_units = std::numeric_limits<std::size_t>::max();
  for (auto& r : results) {
    report.paths_checked += r.paths;
    report.pairs_checked += r.pairs;
    report.condition_i_failures += r.cond_i_count;
    report.condition_ii_failures += r.cond_ii_count;
    report.empty_intersections += r.empty;
    report.min_units = std::min(report.min_units, r.min_units);
    if (!report.condition_i_witness && r.cond_i) report.condition_i_witness = r.cond_i;
    if (!report.condition_ii_witness && r.cond_ii) report.condition_ii_witness = r.cond_ii;
  }
  if (report.paths_checked == 0) report.min_units = 0;
  return report;
}

}  // namespace slicealg

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "slicealg/parallel.hpp"
#include "slicealg/path.hpp"
#include "slicealg/sampling.hpp"

namespace slicealg {

/// Stand-in for an infinite radius so radius comparisons stay total.
inline constexpr double kInfiniteRadius = 1e12;
inline constexpr std::size_t kDefaultSphereSamples = 64;

class SliceDomain;

namespace domains {

struct FullSpace {
  std::size_t n = 1;
};

/// {q : |q - c| < R} with c real; the same disc in every slice.
struct AxialBall {
  std::vector<double> center;
  double radius = 1.0;
};

/// Product of open rectangles re_l x im_l inside the single slice C_unit^n
/// (read in coordinates x + y*unit).
struct SliceBox {
  ImaginaryUnit unit;
  std::vector<std::array<double, 2>> re;
  std::vector<std::array<double, 2>> im;
};

/// H minus the ray (-inf, 0] (n = 1).
struct SlitPlane {};

struct Union {
  std::vector<SliceDomain> members;
};

}  // namespace domains

/// A slice-open subset of H_s^n built from primitives. Membership and
/// distance-to-complement are exact per slice.
class SliceDomain {
 public:
  using Kind = std::variant<domains::FullSpace, domains::AxialBall, domains::SliceBox, domains::SlitPlane, domains::Union>;

  explicit SliceDomain(Kind kind, std::optional<CPoint> anchor = std::nullopt);

  static SliceDomain full_space(std::size_t n) { return SliceDomain(domains::FullSpace{n}); }
  static SliceDomain ball(std::vector<double> center, double radius) {
    return SliceDomain(domains::AxialBall{std::move(center), radius});
  }
  static SliceDomain slice_box(ImaginaryUnit unit, std::vector<std::array<double, 2>> re,
                               std::vector<std::array<double, 2>> im) {
    return SliceDomain(domains::SliceBox{unit, std::move(re), std::move(im)});
  }
  static SliceDomain slit_plane() { return SliceDomain(domains::SlitPlane{}); }
  static SliceDomain union_of(std::vector<SliceDomain> members, std::optional<CPoint> anchor = std::nullopt) {
    return SliceDomain(domains::Union{std::move(members)}, std::move(anchor));
  }

  const Kind& kind() const { return kind_; }
  std::string kind_name() const;
  std::size_t dim() const { return dim_; }
  /// A real point of the domain used as the start of routed paths.
  const std::optional<CPoint>& anchor() const { return anchor_; }

  /// Whether z^I lies in the domain.
  bool contains(const CPoint& z, const ImaginaryUnit& unit) const;
  bool contains(const SlicePoint& q) const;
  /// Distance from z^I to the complement of the slice Omega_I; 0 outside.
  /// Unions give the max over containing members, a lower bound.
  double distance_to_complement(const CPoint& z, const ImaginaryUnit& unit) const;
  /// Units named by primitives (slice boxes contribute their unit and its negative).
  std::vector<ImaginaryUnit> declared_units() const;
  /// True when every slice is invariant under I -> -I (conjugation-stable).
  bool conjugation_stable() const;

  /// Draws a point of the domain (rejection-free for primitives).
  SlicePoint sample_point(Rng& rng) const;

 private:
  Kind kind_;
  std::optional<CPoint> anchor_;
  std::size_t dim_ = 1;
};

/// gamma^I inside the domain at `path_samples` uniform samples plus all waypoints.
bool path_in_domain(const SliceDomain& domain, const PathFragment& gamma, const ImaginaryUnit& unit,
                    std::size_t path_samples = kDefaultPathSamples);

/// Candidate units: the sampled sphere plus units declared by the domain.
std::vector<ImaginaryUnit> candidate_units(const SliceDomain& domain, std::size_t sphere_samples);

/// Sampled under-approximation of S(Omega, gamma).
std::vector<ImaginaryUnit> slice_units_of(const SliceDomain& domain, const PLPath& gamma,
                                          std::size_t sphere_samples = kDefaultSphereSamples,
                                          std::size_t path_samples = kDefaultPathSamples);

/// r^I_{gamma,Omega}. Throws NotInDomain when gamma^I(1) is outside.
double radius_point(const SliceDomain& domain, const PLPath& gamma, const ImaginaryUnit& unit);

/// Sampled lower bound of r_{gamma,Omega}. Throws NotInPathSpace when no sampled unit lifts inside.
double radius_pathball(const SliceDomain& domain, const PLPath& gamma,
                       std::size_t sphere_samples = kDefaultSphereSamples,
                       std::size_t path_samples = kDefaultPathSamples);

struct UnitPair {
  double radius = 0.0;
  ImaginaryUnit first;
  ImaginaryUnit second;
};

/// Share of the best min-radius within which the most separated pair is preferred.
inline constexpr double kPairRadiusSlack = 0.05;

/// Sampled r^2_{gamma,Omega} with the conditioning-preferred pair (I, J).
/// Throws StemPairUnavailable when fewer than two sampled units qualify.
UnitPair radius_two(const SliceDomain& domain, const PLPath& gamma,
                    std::size_t sphere_samples = kDefaultSphereSamples,
                    std::size_t path_samples = kDefaultPathSamples);

/// Searches for a path gamma with gamma^{frak_i(q)} inside the domain and ending
/// at q: anchor + segment, then two-segment detours through the real
/// projection of q and through member anchors.
std::optional<PLPath> route_to(const SliceDomain& domain, const SlicePoint& q,
                               std::size_t path_samples = kDefaultPathSamples);

/// The unit used to lift routes to q (frak_i(q), or i for real points).
ImaginaryUnit routing_unit(const SlicePoint& q);

struct RealPathConnectedReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double ratio = 0.0;
  std::vector<PLPath> witnesses;   ///< first few successful routes
  std::vector<SlicePoint> refuted;  ///< points with no route found
};

RealPathConnectedReport check_real_path_connected(const SliceDomain& domain, std::size_t trials,
                                                  std::uint64_t seed = 0, Execution exec = {});

struct StemPreservingReport {
  std::size_t paths_checked = 0;
  std::size_t pairs_checked = 0;
  std::size_t condition_i_failures = 0;
  std::size_t condition_ii_failures = 0;
  /// Pairs whose unit sets are disjoint; these pass the literal "!= 1" rule.
  std::size_t empty_intersections = 0;
  std::size_t min_units = 0;
  std::optional<PLPath> condition_i_witness;
  std::optional<std::array<PLPath, 2>> condition_ii_witness;

  bool pass() const { return condition_i_failures == 0 && condition_ii_failures == 0; }
};

StemPreservingReport check_stem_preserving(const SliceDomain& domain1, const SliceDomain& domain2, std::size_t trials,
                                           std::uint64_t seed = 0, Execution exec = {},
                                           std::size_t sphere_samples = kDefaultSphereSamples);

}  // namespace slicealg

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "slicealg/domain.hpp"
#include "slicealg/function.hpp"

namespace slicealg {

/// Remembers the unit pair chosen for a path, keyed by the exact waypoint
/// bytes so distinct routes to the same endpoint never alias.
class UnitPairCache {
 public:
  std::optional<UnitPair> find(const PLPath& gamma) const;
  void store(const PLPath& gamma, const UnitPair& pair);
  std::size_t size() const;

 private:
  static std::string key(const PLPath& gamma);

  mutable std::mutex mutex_;
  std::unordered_map<std::string, UnitPair> pairs_;
};

/// F^f_{Omega_1}: the function lives on domain2, paths live in domain1.
struct StemQuery {
  SliceFunction f;
  SliceDomain domain1;
  SliceDomain domain2;
  std::size_t sphere_samples = kDefaultSphereSamples;
  std::size_t path_samples = kDefaultPathSamples;
  std::shared_ptr<UnitPairCache> cache = std::make_shared<UnitPairCache>();

  /// radius_two on domain2, through the cache.
  UnitPair unit_pair(const PLPath& gamma) const;
};

/// F(gamma) from the conditioning-preferred pair of radius_two.
StemVector stem_at(const StemQuery& query, const PLPath& gamma);
/// F(gamma) = M(I,J)^{-1} (f o gamma^I(1), f o gamma^J(1)) for an explicit pair.
StemVector stem_at_pair(const StemQuery& query, const PLPath& gamma, const ImaginaryUnit& I, const ImaginaryUnit& J);

/// Point form: (f(q), 0) for real q, otherwise F(gamma) for a route gamma whose
/// frak_i(q)-lift stays in domain1 and ends at q. Without a route the anchor of
/// domain1 is joined to q by a segment. A route whose lift ends at the slice
/// conjugate of q is replaced by its conjugate path.
StemVector stem_at_point(const StemQuery& query, const SlicePoint& q, const std::optional<PLPath>& route = std::nullopt);

/// The route actually used by stem_at_point (validated / conjugated / default).
PLPath resolve_route(const SliceDomain& domain1, const SlicePoint& q, const std::optional<PLPath>& route,
                     std::size_t path_samples = kDefaultPathSamples);

struct CRSample {
  std::vector<Quaternion> point;
  std::size_t coordinate = 0;
  double residual = 0.0;
};

struct CRReport {
  double h = 0.0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  std::vector<CRSample> per_point;
  bool pass = true;

  void add(CRSample sample);
  void merge(const CRReport& other);
};

inline constexpr double kDefaultStep = 1e-3;

/// |1/2 (d/dx_l + I d/dy_l) f(z^I)| by central differences, with f given on complex coordinates.
double cr_operator_norm(const std::function<Quaternion(const CPoint&)>& f_of_z, const CPoint& z, std::size_t l,
                        const ImaginaryUnit& unit, double h);

/// Left CR residual of a generic slice evaluator at q in every coordinate.
CRReport cr_residual_slice(const std::function<Quaternion(const SlicePoint&)>& f, const SlicePoint& q, double h,
                           double tolerance, std::optional<ImaginaryUnit> unit = std::nullopt);
/// Same for a slice function; throws StencilLeavesDomain when a stencil point leaves its declared domain.
CRReport cr_residual_slice(const SliceFunction& f, const SlicePoint& q, double h, double tolerance = 1e-6);

enum class PairPolicy {
  Fixed,     ///< one (I,J) for the whole stencil
  PerPoint,  ///< a different sampled pair at each stencil point (diagnostic)
};

/// sigma-twisted CR residual |1/2 (d/dx_l + sigma d/dy_l)(F o L_gamma)| at gamma(1).
/// Throws StencilLeavesBall unless h < min(r^2_{gamma,Omega_2}, r_{gamma,Omega_1}).
CRReport stem_holomorphy_check(const StemQuery& query, const PLPath& gamma, double h = kDefaultStep,
                               double tolerance = 1e-6, PairPolicy policy = PairPolicy::Fixed);

}  // namespace slicealg

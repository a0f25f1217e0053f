#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slicealg/parallel.hpp"
#include "slicealg/stem.hpp"

namespace slicealg {

/// f*g = (f, frak_i f) Fscript^g_{Omega_1} on domain1.
struct StarProduct {
  SliceFunction f;  ///< on domain1
  SliceFunction g;  ///< on domain2
  SliceDomain domain1;
  SliceDomain domain2;
  /// Negative control only: replaces frak_i(q) by this unit in the product formula.
  std::optional<ImaginaryUnit> forced_unit;

  StarProduct(SliceFunction f_, SliceFunction g_, SliceDomain d1, SliceDomain d2);
  /// Both factors on one domain.
  StarProduct(SliceFunction f_, SliceFunction g_, const SliceDomain& d);

  /// Stem machinery for g; sampling sizes are configured here.
  const StemQuery& g_query() const { return g_query_; }
  StemQuery& g_query() { return g_query_; }

 private:
  StemQuery g_query_;
};

/// (f*g)(q). Real q reduces to f(q) g(q). When f is not pointwise its value is
/// continued along the route.
Quaternion star_eval(const StarProduct& prod, const SlicePoint& q, const std::optional<PLPath>& route = std::nullopt);

/// f*g as a slice function on domain1, so products can be nested.
SliceFunction star_function(const StarProduct& prod);

/// Coefficient convolution: sum_m q^m (sum_{k+l=m} a_k b_l), componentwise in
/// the multi-index.
PolyFunction star_poly_oracle(const PolyFunction& f, const PolyFunction& g);

/// Random polynomial with unit-norm coefficients on every monomial of total degree <= max_degree.
PolyFunction random_poly(Rng& rng, std::size_t n, unsigned max_degree);

struct StarRegularityOptions {
  std::size_t samples = 100;
  double h = kDefaultStep;
  double tolerance = 1e-4;
  /// Points need at least max(4h, min_room) of room, so runs at different h share samples.
  double min_room = 0.0;
  /// When positive, only points with every |z_l| <= max_abs are used.
  double max_abs = 0.0;
  std::uint64_t seed = 0;
  Execution exec{};
};

/// CR residual of q -> (f*g)(q) at sampled q = z^I. Stencil points are reached by
/// extending a route to q with a segment, the L_gamma construction.
CRReport verify_star_regularity(const StarProduct& prod, const StarRegularityOptions& options);

struct Witness {
  std::string note;
  std::vector<Quaternion> point;
  double deviation = 0.0;
};

struct LawReport {
  std::string law;
  std::size_t trials = 0;
  double max_dev = 0.0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;

  bool pass() const { return max_dev <= tolerance; }
  /// Folds in another deviation, keeping the worst witness first.
  void record(double deviation, Witness witness);
  /// Combines reports from disjoint trial sets (associative).
  void merge(const LawReport& other);
};

struct AlgebraLawOptions {
  std::size_t triples = 200;
  std::size_t points = 20;
  unsigned max_degree = 3;
  double lambda = 2.5;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  Execution exec{};
};

/// Associativity, both distributive laws, unit and real-scalar centrality on
/// random polynomial triples, all products computed through stems.
std::vector<LawReport> verify_algebra_laws(const SliceDomain& domain, const AlgebraLawOptions& options);

struct MonodromyReport {
  LawReport slit;   ///< (sqrt*sqrt)(q) = q with principal sqrt on the slit plane
  LawReport loop;   ///< same after continuing both factors around 0 first
  double loop_sign_dev = 0.0;  ///< |sqrt after loop + principal sqrt|
};

/// sqrt*sqrt on the slit plane, plus the loop-continued variant.
MonodromyReport star_monodromy_square(const SliceDomain& domain, std::size_t samples, std::uint64_t seed = 0,
                                      Execution exec = {}, double tolerance = 1e-9);

}  // namespace slicealg

#pragma once

// Verification campaigns shared by `slicealg verify` and the acceptance binary.
// Every check is seeded from (seed, check, trial) so reports do not depend on
// the number of jobs.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slicealg/json_io.hpp"
#include "slicealg/star.hpp"

namespace slicealg {

/// One pass/fail line of a report. `relation` reads "value <relation> threshold".
struct CheckResult {
  std::string law;
  std::size_t trials = 0;
  std::string metric = "max_dev";
  double value = 0.0;
  std::string relation = "<=";
  double threshold = 0.0;
  bool pass = false;
  /// Non-gating checks are reported but never fail their suite.
  bool gating = true;
  std::vector<Witness> witnesses;
  std::string note;

  void decide();
};

struct CampaignContext {
  std::uint64_t seed = 0;
  std::size_t sphere_samples = kDefaultSphereSamples;
  std::size_t path_samples = kDefaultPathSamples;
  Execution exec{};

  /// Seed for an independent stream of one check.
  std::uint64_t stream(std::uint64_t tag) const { return derive_seed(seed, tag); }
};

/// A random PL path with a real start in [-1,1]^n and 1..max_segments segments
/// whose waypoints have |re|, |im| <= extent.
PLPath random_path(Rng& rng, std::size_t n, std::size_t max_segments, double extent);

CheckResult check_representation_identity(const CampaignContext& ctx, std::size_t trials, double tolerance);
CheckResult check_pair_independence(const CampaignContext& ctx, std::size_t trials, double tolerance);
CheckResult check_conjugation_relation(const CampaignContext& ctx, std::size_t trials, double tolerance);
CheckResult check_icic(const CampaignContext& ctx, std::size_t trials, double tolerance);
/// Both products M^{-1}M and MM^{-1}; half the pairs are nearly parallel (|I-J| in [1e-3, 1e-2]).
CheckResult check_matrix_inverse(const CampaignContext& ctx, std::size_t trials, double tolerance);

/// Stem-based star_eval against the convolution oracle on ball(0,2), n = 1.
CheckResult check_oracle_agreement(const CampaignContext& ctx, std::size_t pairs, std::size_t points, double tolerance);
/// (q-i)*(q-j): oracle coefficients, value 0 at i and 2k at j.
CheckResult check_pinned_product(double tolerance);

struct StarRegularityPlan {
  std::size_t pairs = 20;
  std::size_t points = 20;
  unsigned min_degree = 2;
  unsigned max_degree = 3;
  double h = kDefaultStep;
  double coarse_h = 1e-2;
  double tolerance = 1e-4;
  double ratio_low = 50.0;
  double ratio_high = 200.0;
  /// Polynomial pairs are sampled in ball(0,2) restricted to |z| <= max_abs.
  double max_abs = 1.0;
  /// Replace frak_i(q) by a fixed unit in every product (negative control).
  bool wrong_unit = false;
};

/// Polynomial pairs, the sqrt x polynomial fixture, and the h^2 scaling ratio.
std::vector<CheckResult> check_star_regularity(const CampaignContext& ctx, const StarRegularityPlan& plan);

/// sigma-twisted CR residual of F o L_gamma for random (g, gamma) inside ball domains.
CheckResult check_stem_holomorphy(const CampaignContext& ctx, std::size_t fixtures, double h, double tolerance);

std::vector<CheckResult> check_algebra_laws(const CampaignContext& ctx, std::size_t triples, std::size_t points,
                                            double tolerance);

/// Loop sign flip, sqrt*sqrt on the slit plane, and the loop-continued product (descriptive).
std::vector<CheckResult> check_monodromy(const CampaignContext& ctx, std::size_t samples, double sign_tolerance,
                                         double square_tolerance);

/// r^I, r_{gamma,Omega}, r^2 > 0 on the radius fixtures, plus the union lower bound.
std::vector<CheckResult> check_radii(const CampaignContext& ctx, std::size_t trials);

/// Anti-holomorphic probe and wrong-unit star product; pass when residual >= threshold.
std::vector<CheckResult> check_negative_controls(const CampaignContext& ctx, std::size_t trials, double threshold);

/// CR residual of each (function, domain) fixture at sampled points with room for the stencil.
CheckResult check_fixture_regularity(const CampaignContext& ctx, const SliceFunction& f, const std::string& label,
                                     std::size_t points, double h, double tolerance);

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;

  bool pass() const;
};

struct Fixture {
  std::string label;
  SliceFunction function;
};

struct RunConfig {
  std::uint64_t seed = 20240611;
  std::size_t sphere_samples = kDefaultSphereSamples;
  std::size_t path_samples = kDefaultPathSamples;
  /// When nonzero, caps every trial count.
  std::size_t trials = 0;
  /// Per-check trial counts overriding the defaults.
  std::map<std::string, std::size_t> counts;
  /// Per-check tolerances; the key "default" applies to every max_dev check not listed.
  std::map<std::string, double> tolerances;
  std::vector<std::string> suites;
  std::vector<Fixture> fixtures;
  bool negative_control = false;
  int jobs = 1;

  std::size_t count(const std::string& key, std::size_t fallback) const;
  double tolerance(const std::string& key, double fallback) const;
};

const std::vector<std::string>& all_suites();

/// Reads a RunConfig document. SLICEALG_SEED, when set, replaces the seed.
/// Throws SliceError(Schema) on unknown keys or suites and malformed values.
RunConfig config_from_json(const io::Json& j);
/// Echo of the config as it affects results (jobs is omitted).
io::Json to_json(const RunConfig& config);

std::vector<SuiteResult> run_suites(const RunConfig& config);

io::Json to_json(const CheckResult& check);
io::Json report_json(const RunConfig& config, const std::vector<SuiteResult>& suites);

/// Writes text to path through a temporary file and rename.
void write_atomically(const std::string& path, const std::string& text);

}  // namespace slicealg

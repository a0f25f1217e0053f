#include "slicealg/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>

namespace slicealg {

namespace {

// Stream tags; one per check so adding a check never shifts another's samples.
enum Tag : std::uint64_t {
  kRepresentation = 1,
  kPairIndependence,
  kConjugation,
  kIcic,
  kMatrixInverse,
  kOracle,
  kStarPoly,
  kStarSqrt,
  kHolomorphy,
  kAlgebra,
  kMonodromy,
  kRadii,
  kProbe,
  kWrongUnit,
  kFixture,
};

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

struct Sample {
  double deviation = 0.0;
  std::vector<Quaternion> point;
};

/// Runs trial(rng, t) for every t and folds the deviations in index order.
template <class Trial>
CheckResult run_trials(const std::string& law, std::size_t trials, std::uint64_t seed, Execution exec,
                       double tolerance, Trial&& trial) {
  std::vector<Sample> samples(trials);
  parallel_for(trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    samples[t] = trial(rng, t);
  });
  LawReport report;
  for (std::size_t t = 0; t < trials; ++t)
    report.record(samples[t].deviation, {"trial " + std::to_string(t), samples[t].point, 0.0});
  CheckResult r;
  r.law = law;
  r.trials = trials;
  r.value = report.max_dev;
  r.threshold = tolerance;
  r.witnesses = std::move(report.witnesses);
  r.decide();
  return r;
}

CheckResult from_law(const LawReport& report) {
  CheckResult r;
  r.law = report.law;
  r.trials = report.trials;
  r.value = report.max_dev;
  r.threshold = report.tolerance;
  r.witnesses = report.witnesses;
  r.decide();
  return r;
}

/// Worst CR samples first, as witnesses.
std::vector<Witness> cr_witnesses(const std::vector<CRSample>& samples, std::size_t keep = 4) {
  std::vector<CRSample> sorted = samples;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CRSample& a, const CRSample& b) { return a.residual > b.residual; });
  std::vector<Witness> out;
  for (std::size_t i = 0; i < std::min(keep, sorted.size()); ++i)
    out.push_back({"coordinate " + std::to_string(sorted[i].coordinate), sorted[i].point, sorted[i].residual});
  return out;
}

/// Frobenius norm of m - identity.
double frobenius_from_identity(const StemMatrix& m) {
  return std::sqrt((m.a - 1.0).norm2() + m.b.norm2() + m.c.norm2() + (m.d - 1.0).norm2());
}

std::vector<double> zeros(std::size_t n) { return std::vector<double>(n, 0.0); }

StemQuery make_query(const CampaignContext& ctx, SliceFunction f, SliceDomain d1, SliceDomain d2) {
  StemQuery q{std::move(f), std::move(d1), std::move(d2)};
  q.sphere_samples = ctx.sphere_samples;
  q.path_samples = ctx.path_samples;
  return q;
}

void configure(StarProduct& prod, const CampaignContext& ctx) {
  prod.g_query().sphere_samples = ctx.sphere_samples;
  prod.g_query().path_samples = ctx.path_samples;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

}  // namespace

void CheckResult::decide() {
  if (relation == "<=")
    pass = value <= threshold;
  else if (relation == ">=")
    pass = value >= threshold;
  else
    pass = value > threshold;
}

PLPath random_path(Rng& rng, std::size_t n, std::size_t max_segments, double extent) {
  std::vector<CPoint> pts;
  CPoint start(n);
  for (auto& c : start) c = Complex(uniform(rng, -1.0, 1.0), 0.0);
  pts.push_back(start);
  const std::size_t segments = uniform_index(rng, 1, max_segments);
  for (std::size_t s = 0; s < segments; ++s) {
    CPoint w(n);
    for (auto& c : w) c = Complex(uniform(rng, -extent, extent), uniform(rng, -extent, extent));
    pts.push_back(std::move(w));
  }
  return PLPath(std::move(pts));
}

CheckResult check_representation_identity(const CampaignContext& ctx, std::size_t trials, double tolerance) {
  auto r = run_trials("representation-identity", trials, ctx.stream(kRepresentation), ctx.exec, tolerance,
                      [&](Rng& rng, std::size_t) {
                        const std::size_t n = uniform_index(rng, 1, 2);
                        const auto deg = static_cast<unsigned>(uniform_index(rng, 1, 5));
                        const PolyFunction p = random_poly(rng, n, deg);
                        const PLPath gamma = random_path(rng, n, 4, 1.5);
                        const auto units = random_separated_units(rng, 3, 1e-2);
                        const SliceDomain full = SliceDomain::full_space(n);
                        const StemQuery query = make_query(ctx, SliceFunction::poly(p), full, full);
                        const StemVector F = stem_at_pair(query, gamma, units[0], units[1]);
                        const Quaternion direct = eval_along(query.f, gamma, units[2]);
                        return Sample{distance(F.recombine(units[2].quat()), direct) / (1.0 + direct.norm()),
                                      SlicePoint(gamma.end(), units[2]).coords()};
                      });
  r.metric = "max_rel_dev";
  return r;
}

CheckResult check_pair_independence(const CampaignContext& ctx, std::size_t trials, double tolerance) {
  return run_trials("pair-independence", trials, ctx.stream(kPairIndependence), ctx.exec, tolerance,
                    [&](Rng& rng, std::size_t) {
                      const std::size_t n = uniform_index(rng, 1, 2);
                      const auto deg = static_cast<unsigned>(uniform_index(rng, 1, 5));
                      const PolyFunction p = random_poly(rng, n, deg);
                      const PLPath gamma = random_path(rng, n, 4, 1.5);
                      const auto units = random_separated_units(rng, 4, 1e-2);
                      const SliceDomain full = SliceDomain::full_space(n);
                      const StemQuery query = make_query(ctx, SliceFunction::poly(p), full, full);
                      const StemVector a = stem_at_pair(query, gamma, units[0], units[1]);
                      const StemVector b = stem_at_pair(query, gamma, units[2], units[3]);
                      return Sample{(a - b).norm(), SlicePoint(gamma.end(), units[0]).coords()};
                    });
}

CheckResult check_conjugation_relation(const CampaignContext& ctx, std::size_t trials, double tolerance) {
  return run_trials("conjugation-relation", trials, ctx.stream(kConjugation), ctx.exec, tolerance,
                    [&](Rng& rng, std::size_t) {
                      const std::size_t n = uniform_index(rng, 1, 2);
                      const auto deg = static_cast<unsigned>(uniform_index(rng, 1, 5));
                      const PolyFunction p = random_poly(rng, n, deg);
                      const PLPath gamma = random_path(rng, n, 4, 1.5);
                      const Quaternion c = random_quaternion(rng);
                      const ImaginaryUnit I = random_unit(rng);
                      const SliceDomain full = SliceDomain::full_space(n);
                      const StemQuery query = make_query(ctx, SliceFunction::poly(p), full, full);
                      const StemVector F = stem_at(query, gamma);
                      const StemVector Fbar = stem_at(query, conjugate(gamma));
                      const Quaternion lhs = c * F.f1 + I.quat() * c * F.f2;
                      const Quaternion rhs = c * Fbar.f1 - I.quat() * c * Fbar.f2;
                      return Sample{distance(lhs, rhs), SlicePoint(gamma.end(), I).coords()};
                    });
}

CheckResult check_icic(const CampaignContext& ctx, std::size_t trials, double tolerance) {
  return run_trials("icic-identity", trials, ctx.stream(kIcic), ctx.exec, tolerance, [&](Rng& rng, std::size_t) {
    const Quaternion c = random_quaternion(rng);
    const ImaginaryUnit I = random_unit(rng);
    return Sample{icic_deviation(c, I), {c, I.quat()}};
  });
}

CheckResult check_matrix_inverse(const CampaignContext& ctx, std::size_t trials, double tolerance) {
  auto r = run_trials("matrix-inverse", trials, ctx.stream(kMatrixInverse), ctx.exec, tolerance,
                      [&](Rng& rng, std::size_t t) {
                        ImaginaryUnit I = random_unit(rng);
                        ImaginaryUnit J = -I;
                        if (t % 2 == 0) {
                          const auto units = random_separated_units(rng, 2, 1e-3);
                          I = units[0];
                          J = units[1];
                        } else {
                          do {
                            const double delta = uniform(rng, 1e-3, 1e-2);
                            J = ImaginaryUnit(I.quat() + delta * random_unit(rng).quat());
                          } while (distance(I, J) < 1e-3);
                        }
                        const StemMatrix M = StemMatrix::slice_pair(I, J);
                        const StemMatrix Minv = slice_matrix_inverse(I, J);
                        const double left = frobenius_from_identity(Minv * M);
                        const double right = frobenius_from_identity(M * Minv);
                        return Sample{std::max(left, right), {I.quat(), J.quat()}};
                      });
  r.metric = "max_frobenius_dev";
  return r;
}

CheckResult check_oracle_agreement(const CampaignContext& ctx, std::size_t pairs, std::size_t points, double tolerance) {
  const SliceDomain ball = SliceDomain::ball({0.0}, 2.0);
  auto r = run_trials("oracle-agreement", pairs, ctx.stream(kOracle), ctx.exec, tolerance, [&](Rng& rng, std::size_t) {
    const PolyFunction pf = random_poly(rng, 1, static_cast<unsigned>(uniform_index(rng, 1, 5)));
    const PolyFunction pg = random_poly(rng, 1, static_cast<unsigned>(uniform_index(rng, 1, 5)));
    StarProduct prod(SliceFunction::poly(pf), SliceFunction::poly(pg), ball);
    configure(prod, ctx);
    const PolyFunction oracle = star_poly_oracle(pf, pg);
    Sample worst;
    for (std::size_t p = 0; p < points; ++p) {
      const SlicePoint q = ball.sample_point(rng);
      const Quaternion expected = oracle(q);
      const double dev = distance(star_eval(prod, q), expected) / (1.0 + expected.norm());
      if (dev >= worst.deviation) worst = {dev, q.coords()};
    }
    return worst;
  });
  r.metric = "max_rel_dev";
  r.trials = pairs * points;
  return r;
}

CheckResult check_pinned_product(double tolerance) {
  const PolyFunction f = PolyFunction::univariate({-Quaternion::i(), 1.0});
  const PolyFunction g = PolyFunction::univariate({-Quaternion::j(), 1.0});
  const PolyFunction expected = PolyFunction::univariate({Quaternion::k(), -(Quaternion::i() + Quaternion::j()), 1.0});
  const PolyFunction oracle = star_poly_oracle(f, g);
  LawReport report;
  report.law = "pinned-product";
  report.tolerance = tolerance;
  double coeff_dev = 0.0;
  std::set<MultiIndex> keys;
  for (const auto& [k, a] : oracle.terms()) keys.insert(k);
  for (const auto& [k, a] : expected.terms()) keys.insert(k);
  for (const auto& k : keys) {
    const auto find = [&](const PolyFunction& p) {
      const auto it = p.terms().find(k);
      return it == p.terms().end() ? Quaternion{} : it->second;
    };
    coeff_dev = std::max(coeff_dev, distance(find(oracle), find(expected)));
  }
  report.record(coeff_dev, {"oracle coefficients vs q^2 - q(i+j) + k", {}, 0.0});
  const StarProduct prod(SliceFunction::poly(f), SliceFunction::poly(g), SliceDomain::full_space(1));
  const SlicePoint at_i({Quaternion::i()});
  const SlicePoint at_j({Quaternion::j()});
  report.record(star_eval(prod, at_i).norm(), {"(f*g)(i) = 0", at_i.coords(), 0.0});
  report.record(distance(star_eval(prod, at_j), 2.0 * Quaternion::k()), {"(f*g)(j) = 2k", at_j.coords(), 0.0});
  return from_law(report);
}

namespace {

struct RegularityRun {
  CRReport fine;
  CRReport coarse;
};

RegularityRun run_regularity(const StarProduct& prod, const StarRegularityPlan& plan, std::size_t samples,
                             double min_room, double max_abs, std::uint64_t seed, Execution exec) {
  StarRegularityOptions options;
  options.samples = samples;
  options.h = plan.h;
  options.tolerance = plan.tolerance;
  options.min_room = min_room;
  options.max_abs = max_abs;
  options.seed = seed;
  options.exec = exec;
  RegularityRun run;
  run.fine = verify_star_regularity(prod, options);
  options.h = plan.coarse_h;
  run.coarse = verify_star_regularity(prod, options);
  return run;
}

// Points are kept this far from the boundary so the coarse and fine stencils use the same samples.
constexpr double kRegularityRoom = 0.05;
constexpr double kSqrtRoom = 0.5;

}  // namespace

std::vector<CheckResult> check_star_regularity(const CampaignContext& ctx, const StarRegularityPlan& plan) {
  const std::string suffix = plan.wrong_unit ? " (wrong unit)" : "";
  const ImaginaryUnit wrong = ImaginaryUnit::i();
  std::vector<RegularityRun> runs;
  std::vector<std::string> labels;

  for (std::size_t p = 0; p < plan.pairs; ++p) {
    Rng rng(derive_seed(ctx.stream(kStarPoly), p));
    const std::size_t n = 1 + p % 2;
    const SliceDomain ball = SliceDomain::ball(zeros(n), 2.0);
    const auto deg_f = static_cast<unsigned>(uniform_index(rng, plan.min_degree, plan.max_degree));
    const auto deg_g = static_cast<unsigned>(uniform_index(rng, plan.min_degree, plan.max_degree));
    StarProduct prod(SliceFunction::poly(random_poly(rng, n, deg_f)), SliceFunction::poly(random_poly(rng, n, deg_g)),
                     ball);
    configure(prod, ctx);
    if (plan.wrong_unit) prod.forced_unit = wrong;
    runs.push_back(run_regularity(prod, plan, plan.points, kRegularityRoom, plan.max_abs, rng(), ctx.exec));
    labels.push_back("pair " + std::to_string(p) + " (n=" + std::to_string(n) + ", deg " + std::to_string(deg_f) +
                     "x" + std::to_string(deg_g) + ")");
  }

  Rng rng(ctx.stream(kStarSqrt));
  const SliceDomain slit = SliceDomain::slit_plane();
  StarProduct sqrt_prod(SliceFunction::sqrt(slit), SliceFunction::poly(random_poly(rng, 1, plan.max_degree)), slit,
                        SliceDomain::full_space(1));
  configure(sqrt_prod, ctx);
  if (plan.wrong_unit) sqrt_prod.forced_unit = wrong;
  const RegularityRun sqrt_run = run_regularity(sqrt_prod, plan, plan.points, kSqrtRoom, 0.0, rng(), ctx.exec);

  CheckResult poly;
  poly.law = "star-regularity (polynomial pairs)" + suffix;
  poly.metric = "max_residual";
  poly.threshold = plan.tolerance;
  std::vector<CRSample> all;
  for (const auto& run : runs) {
    poly.trials += run.fine.per_point.size();
    poly.value = std::max(poly.value, run.fine.max_residual);
    all.insert(all.end(), run.fine.per_point.begin(), run.fine.per_point.end());
  }
  poly.witnesses = cr_witnesses(all);
  poly.note = "h=" + format_double(plan.h) + ", degrees " + std::to_string(plan.min_degree) + ".." +
              std::to_string(plan.max_degree) + " per factor, |z_l| <= " + format_double(plan.max_abs) +
              " in ball(0,2)";
  poly.decide();

  CheckResult sq;
  sq.law = "star-regularity (sqrt x polynomial)" + suffix;
  sq.metric = "max_residual";
  sq.threshold = plan.tolerance;
  sq.trials = sqrt_run.fine.per_point.size();
  sq.value = sqrt_run.fine.max_residual;
  sq.witnesses = cr_witnesses(sqrt_run.fine.per_point);
  sq.note = "sqrt on the slit plane, polynomial on full space, distance to the cut > " + format_double(kSqrtRoom);
  sq.decide();

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  std::string lo_label, hi_label;
  const auto fold = [&](const RegularityRun& run, const std::string& label) {
    const double ratio = run.coarse.max_residual / run.fine.max_residual;
    if (!(ratio >= lo)) lo_label = label;
    if (!(ratio <= hi)) hi_label = label;
    lo = std::isnan(ratio) || std::isnan(lo) ? std::numeric_limits<double>::quiet_NaN() : std::min(lo, ratio);
    hi = std::isnan(ratio) || std::isnan(hi) ? std::numeric_limits<double>::quiet_NaN() : std::max(hi, ratio);
  };
  for (std::size_t i = 0; i < runs.size(); ++i) fold(runs[i], labels[i]);
  fold(sqrt_run, "sqrt x polynomial");

  CheckResult ratio_lo;
  ratio_lo.law = "h^2 scaling, lowest ratio" + suffix;
  ratio_lo.metric = "residual(h=" + format_double(plan.coarse_h) + ") / residual(h=" + format_double(plan.h) + ")";
  ratio_lo.relation = ">=";
  ratio_lo.threshold = plan.ratio_low;
  ratio_lo.trials = runs.size() + 1;
  ratio_lo.value = lo;
  ratio_lo.note = lo_label;
  ratio_lo.decide();

  CheckResult ratio_hi = ratio_lo;
  ratio_hi.law = "h^2 scaling, highest ratio" + suffix;
  ratio_hi.relation = "<=";
  ratio_hi.threshold = plan.ratio_high;
  ratio_hi.value = hi;
  ratio_hi.note = hi_label;
  ratio_hi.decide();

  return {poly, sq, ratio_lo, ratio_hi};
}

CheckResult check_stem_holomorphy(const CampaignContext& ctx, std::size_t fixtures, double h, double tolerance) {
  struct Out {
    CRReport report;
  };
  std::vector<Out> out(fixtures);
  parallel_for(fixtures, ctx.exec, [&](std::size_t t) {
    Rng rng(derive_seed(ctx.stream(kHolomorphy), t));
    const std::size_t n = uniform_index(rng, 1, 2);
    const auto deg = static_cast<unsigned>(uniform_index(rng, 1, 3));
    const SliceDomain omega1 = SliceDomain::ball(zeros(n), 2.0);
    const SliceDomain omega2 = SliceDomain::ball(zeros(n), 3.0);
    const ImaginaryUnit i = ImaginaryUnit::i();
    std::optional<PLPath> gamma;
    while (!gamma) {
      PLPath candidate = random_path(rng, n, 3, 1.2);
      if (path_in_domain(omega1, candidate, i, ctx.path_samples) &&
          omega1.distance_to_complement(candidate.end(), i) > 0.05)
        gamma = std::move(candidate);
    }
    const StemQuery query = make_query(ctx, SliceFunction::poly(random_poly(rng, n, deg)), omega1, omega2);
    out[t].report = stem_holomorphy_check(query, *gamma, h, tolerance, PairPolicy::Fixed);
  });
  CheckResult r;
  r.law = "stem-holomorphy";
  r.metric = "max_residual";
  r.threshold = tolerance;
  r.trials = fixtures;
  std::vector<CRSample> all;
  for (const auto& o : out) {
    r.value = std::max(r.value, o.report.max_residual);
    all.insert(all.end(), o.report.per_point.begin(), o.report.per_point.end());
  }
  r.witnesses = cr_witnesses(all);
  r.note = "fixed pair, h=" + format_double(h) + ", Omega1=ball(0,2), Omega2=ball(0,3)";
  r.decide();
  return r;
}

std::vector<CheckResult> check_algebra_laws(const CampaignContext& ctx, std::size_t triples, std::size_t points,
                                            double tolerance) {
  // Half the triples in one variable, half in two, both on ball(0,2).
  std::vector<LawReport> merged;
  const std::size_t half = triples / 2;
  for (std::size_t n : {1, 2}) {
    AlgebraLawOptions options;
    options.triples = n == 1 ? triples - half : half;
    options.points = points;
    options.tolerance = tolerance;
    options.seed = derive_seed(ctx.stream(kAlgebra), n);
    options.exec = ctx.exec;
    const auto reports = verify_algebra_laws(SliceDomain::ball(zeros(n), 2.0), options);
    if (merged.empty())
      merged = reports;
    else
      for (std::size_t i = 0; i < reports.size(); ++i) merged[i].merge(reports[i]);
  }
  std::vector<CheckResult> out;
  for (const auto& report : merged) {
    out.push_back(from_law(report));
    out.back().note = "ball(0,2), n = 1 and 2, degree <= 3, lambda = 2.5";
  }
  return out;
}

std::vector<CheckResult> check_monodromy(const CampaignContext& ctx, std::size_t samples, double sign_tolerance,
                                         double square_tolerance) {
  const MonodromyReport report =
      star_monodromy_square(SliceDomain::slit_plane(), samples, ctx.stream(kMonodromy), ctx.exec, square_tolerance);
  CheckResult sign;
  sign.law = "sqrt loop sign flip";
  sign.trials = samples;
  sign.value = report.loop_sign_dev;
  sign.threshold = sign_tolerance;
  sign.note = "one turn around 0 gives minus the principal value";
  sign.decide();

  CheckResult slit = from_law(report.slit);
  CheckResult loop = from_law(report.loop);
  loop.gating = false;
  loop.note = "descriptive: both factors continued around 0";
  return {sign, slit, loop};
}

namespace {

struct RadiusFixture {
  std::string label;
  SliceDomain domain;
};

std::vector<RadiusFixture> radius_fixtures() {
  return {
      {"ball n=1", SliceDomain::ball({0.0}, 2.0)},
      {"ball n=2", SliceDomain::ball({0.0, 0.0}, 1.5)},
      {"full-space n=2", SliceDomain::full_space(2)},
      {"slit-plane", SliceDomain::slit_plane()},
      {"union", SliceDomain::union_of({SliceDomain::ball({0.0}, 1.0),
                                       SliceDomain::slice_box(ImaginaryUnit::i(), {{-0.5, 0.5}}, {{0.5, 3.0}})})},
  };
}

struct RadiusSample {
  bool routed = false;
  bool two_units = false;
  double r_point = 0.0;
  double r_path = 0.0;
  double r_two = 0.0;
  std::vector<Quaternion> point;
};

}  // namespace

std::vector<CheckResult> check_radii(const CampaignContext& ctx, std::size_t trials) {
  const auto fixtures = radius_fixtures();
  CheckResult point, path, two;
  point.law = "r^I > 0";
  path.law = "r_{gamma,Omega} > 0";
  two.law = "r^2 > 0";
  for (CheckResult* c : {&point, &path, &two}) {
    c->metric = "min_radius";
    c->relation = ">";
    c->threshold = 0.0;
    c->value = std::numeric_limits<double>::infinity();
  }
  std::string point_note, path_note, two_note;

  for (std::size_t f = 0; f < fixtures.size(); ++f) {
    const SliceDomain& domain = fixtures[f].domain;
    std::vector<RadiusSample> samples(trials);
    parallel_for(trials, ctx.exec, [&](std::size_t t) {
      Rng rng(derive_seed(ctx.stream(kRadii + 100 * f), t));
      const SlicePoint q = domain.sample_point(rng);
      RadiusSample& s = samples[t];
      s.point = q.coords();
      const auto gamma = route_to(domain, q, ctx.path_samples);
      if (!gamma) return;
      s.routed = true;
      s.r_point = radius_point(domain, *gamma, routing_unit(q));
      s.r_path = radius_pathball(domain, *gamma, ctx.sphere_samples, ctx.path_samples);
      if (slice_units_of(domain, *gamma, ctx.sphere_samples, ctx.path_samples).size() >= 2) {
        s.two_units = true;
        s.r_two = radius_two(domain, *gamma, ctx.sphere_samples, ctx.path_samples).radius;
      }
    });
    double min_point = std::numeric_limits<double>::infinity(), min_path = min_point, min_two = min_point;
    std::size_t routed = 0, paired = 0;
    for (const auto& s : samples) {
      if (!s.routed) continue;
      ++routed;
      const auto fold = [&](CheckResult& c, double v, double& fixture_min) {
        ++c.trials;
        fixture_min = std::min(fixture_min, v);
        if (v < c.value) {
          c.value = v;
          c.witnesses = {{fixtures[f].label, s.point, v}};
        }
      };
      fold(point, s.r_point, min_point);
      fold(path, s.r_path, min_path);
      if (s.two_units) {
        ++paired;
        fold(two, s.r_two, min_two);
      }
    }
    const auto entry = [&](double v, std::size_t count) {
      return fixtures[f].label + ": " + std::to_string(count) + " points, min " + format_double(v) + "; ";
    };
    point_note += entry(min_point, routed);
    path_note += entry(min_path, routed);
    two_note += entry(min_two, paired);
  }
  point.note = point_note;
  path.note = path_note;
  two.note = two_note + "points with fewer than two sampled units are outside the hypothesis";
  for (CheckResult* c : {&point, &path, &two}) c->decide();

  // The union radius is the max over members containing the point and a true
  // lower bound: a circle of 0.999 r around the point stays inside the union.
  const SliceDomain& uni = fixtures.back().domain;
  const auto& members = std::get<domains::Union>(uni.kind()).members;
  std::vector<double> violations(trials, 0.0);
  std::vector<std::vector<Quaternion>> where(trials);
  parallel_for(trials, ctx.exec, [&](std::size_t t) {
    Rng rng(derive_seed(ctx.stream(kRadii + 1000), t));
    const SlicePoint q = uni.sample_point(rng);
    const ImaginaryUnit I = routing_unit(q);
    const CPoint z = q.complex_coords(I);
    where[t] = q.coords();
    const double r = uni.distance_to_complement(z, I);
    double best = 0.0;
    for (const auto& m : members)
      if (m.contains(z, I)) best = std::max(best, m.distance_to_complement(z, I));
    if (r != best || !(r > 0.0)) violations[t] += 1.0;
    constexpr int kCircle = 64;
    for (int k = 0; k < kCircle; ++k) {
      CPoint w = z;
      w[0] += std::polar(0.999 * r, 2.0 * std::numbers::pi * k / kCircle);
      if (!uni.contains(w, I)) violations[t] += 1.0;
    }
  });
  CheckResult lower;
  lower.law = "union lower bound";
  lower.metric = "violations";
  lower.trials = trials;
  lower.threshold = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    if (violations[t] > 0.0 && lower.witnesses.size() < 4) lower.witnesses.push_back({"trial " + std::to_string(t), where[t], violations[t]});
    lower.value += violations[t];
  }
  lower.note = "r equals the max over containing members; 64 points at 0.999 r stay inside";
  lower.decide();
  return {point, path, two, lower};
}

std::vector<CheckResult> check_negative_controls(const CampaignContext& ctx, std::size_t trials, double threshold) {
  const auto probe = [](const SlicePoint& p) { return p[0].conj(); };
  CheckResult anti;
  anti.law = "anti-holomorphic probe detected";
  anti.metric = "min_residual";
  anti.relation = ">=";
  anti.threshold = threshold;
  anti.trials = trials;
  anti.value = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(ctx.stream(kProbe), t));
    const SlicePoint q({Quaternion(uniform(rng, -2.0, 2.0), 0.0, 0.0, 0.0) +
                        random_unit(rng).embed(Complex(0.0, uniform(rng, 0.1, 2.0)))});
    const double res = cr_residual_slice(probe, q, kDefaultStep, threshold).max_residual;
    if (res < anti.value) {
      anti.value = res;
      anti.witnesses = {{"f(x+yI) = x-yI", q.coords(), res}};
    }
  }
  anti.decide();

  CheckResult wrong;
  wrong.law = "wrong-unit star product detected";
  wrong.metric = "min over pairs of max_residual";
  wrong.relation = ">=";
  wrong.threshold = threshold;
  wrong.trials = trials;
  wrong.value = std::numeric_limits<double>::infinity();
  const SliceDomain ball = SliceDomain::ball({0.0}, 2.0);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(ctx.stream(kWrongUnit), t));
    StarProduct prod(SliceFunction::poly(random_poly(rng, 1, 3)), SliceFunction::poly(random_poly(rng, 1, 3)), ball);
    configure(prod, ctx);
    prod.forced_unit = ImaginaryUnit::i();
    StarRegularityOptions options;
    options.samples = 10;
    options.min_room = kRegularityRoom;
    options.seed = rng();
    options.exec = ctx.exec;
    const CRReport report = verify_star_regularity(prod, options);
    if (report.max_residual < wrong.value) {
      wrong.value = report.max_residual;
      wrong.witnesses = cr_witnesses(report.per_point, 1);
    }
  }
  wrong.note = "frak_i(q) replaced by i";
  wrong.decide();
  return {anti, wrong};
}

CheckResult check_fixture_regularity(const CampaignContext& ctx, const SliceFunction& f, const std::string& label,
                                     std::size_t points, double h, double tolerance) {
  CheckResult r;
  r.law = "fixture regularity: " + label;
  r.metric = "max_residual";
  r.threshold = tolerance;
  if (!f.pointwise()) {
    r.gating = false;
    r.note = "skipped: values depend on the path, no pointwise evaluator";
    r.decide();
    return r;
  }
  constexpr int kMaxAttempts = 2000;
  std::vector<CRReport> parts(points);
  parallel_for(points, ctx.exec, [&](std::size_t p) {
    Rng rng(derive_seed(ctx.stream(kFixture), p));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const SlicePoint q = f.domain.sample_point(rng);
      const ImaginaryUnit I = routing_unit(q);
      if (!(f.domain.distance_to_complement(q.complex_coords(I), I) > 4.0 * h)) continue;
      parts[p] = cr_residual_slice(f, q, h, tolerance);
      return;
    }
  });
  std::vector<CRSample> all;
  for (const auto& part : parts) {
    r.trials += part.per_point.size();
    r.value = std::max(r.value, part.max_residual);
    all.insert(all.end(), part.per_point.begin(), part.per_point.end());
  }
  r.witnesses = cr_witnesses(all);
  r.note = "h=" + format_double(h);
  r.decide();
  return r;
}

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass || !c.gating; });
}

std::size_t RunConfig::count(const std::string& key, std::size_t fallback) const {
  if (auto it = counts.find(key); it != counts.end()) return it->second;
  return trials > 0 ? std::min(trials, fallback) : fallback;
}

double RunConfig::tolerance(const std::string& key, double fallback) const {
  if (auto it = tolerances.find(key); it != tolerances.end()) return it->second;
  if (auto it = tolerances.find("default"); it != tolerances.end()) return it->second;
  return fallback;
}

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> suites = {"stem-consistency", "stem-holomorphy", "star-regularity",
                                                  "algebra-laws",     "monodromy",       "radii-positivity",
                                                  "negative-controls"};
  return suites;
}

namespace {

[[noreturn]] void schema(const std::string& what) { throw SliceError(ErrorKind::Schema, what); }

std::size_t positive_count(const io::Json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema(key + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    schema("SLICEALG_SEED must be an unsigned integer, got \"" + text + "\"");
  }
}

}  // namespace

RunConfig config_from_json(const io::Json& j) {
  if (!j.is_object()) schema("config must be an object");
  static const std::set<std::string> known = {"seed",   "sphere_samples", "path_samples",     "trials", "counts",
                                              "tolerances", "suites",     "fixtures", "negative_control", "jobs"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) schema("unknown config key \"" + key + "\"");
  RunConfig c;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<std::int64_t>() < 0) schema("seed must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("sphere_samples")) c.sphere_samples = positive_count(j["sphere_samples"], "sphere_samples");
  if (j.contains("path_samples")) c.path_samples = positive_count(j["path_samples"], "path_samples");
  if (c.sphere_samples < 2 || c.path_samples < 2) schema("sphere_samples and path_samples must be at least 2");
  if (j.contains("trials")) c.trials = positive_count(j["trials"], "trials");
  if (j.contains("jobs")) c.jobs = static_cast<int>(positive_count(j["jobs"], "jobs"));
  if (j.contains("counts")) {
    if (!j["counts"].is_object()) schema("counts must be an object");
    for (const auto& [key, value] : j["counts"].items()) c.counts[key] = positive_count(value, "counts." + key);
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) schema("tolerances must be an object");
    for (const auto& [key, value] : j["tolerances"].items()) {
      if (!value.is_number() || !(value.get<double>() >= 0.0)) schema("tolerance " + key + " must be a number >= 0");
      c.tolerances[key] = value.get<double>();
    }
  }
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) schema("suites must be an array of names");
    for (const auto& s : j["suites"]) {
      if (!s.is_string()) schema("suite names must be strings");
      const std::string name = s.get<std::string>();
      if (std::find(all_suites().begin(), all_suites().end(), name) == all_suites().end())
        schema("unknown suite \"" + name + "\"");
      c.suites.push_back(name);
    }
  } else {
    c.suites = all_suites();
  }
  if (j.contains("negative_control")) {
    if (!j["negative_control"].is_boolean()) schema("negative_control must be a boolean");
    c.negative_control = j["negative_control"].get<bool>();
  }
  if (j.contains("fixtures")) {
    if (!j["fixtures"].is_array()) schema("fixtures must be an array");
    for (std::size_t i = 0; i < j["fixtures"].size(); ++i) {
      const io::Json& fx = j["fixtures"][i];
      if (!fx.is_object() || !fx.contains("function")) schema("fixture needs a \"function\"");
      io::Json fn = fx["function"];
      if (fx.contains("domain")) fn["domain"] = fx["domain"];
      std::string label = "fixture " + std::to_string(i);
      if (fx.contains("label")) {
        if (!fx["label"].is_string()) schema("fixture label must be a string");
        label = fx["label"].get<std::string>();
      }
      c.fixtures.push_back({label, io::function_from_json(fn)});
    }
  }
  if (const char* env = std::getenv("SLICEALG_SEED"); env && *env) c.seed = parse_seed(env);
  return c;
}

io::Json to_json(const RunConfig& c) {
  io::Json fixtures = io::Json::array();
  for (const auto& f : c.fixtures) {
    io::Json fx = {{"label", f.label}, {"domain", io::to_json(f.function.domain)}};
    if (const auto* p = std::get_if<PolyFunction>(&f.function.body)) fx["function"] = io::to_json(*p);
    fixtures.push_back(std::move(fx));
  }
  return {{"seed", c.seed},
          {"sphere_samples", c.sphere_samples},
          {"path_samples", c.path_samples},
          {"trials", c.trials},
          {"counts", c.counts},
          {"tolerances", c.tolerances},
          {"suites", c.suites},
          {"negative_control", c.negative_control},
          {"fixtures", fixtures}};
}

std::vector<SuiteResult> run_suites(const RunConfig& c) {
  CampaignContext ctx;
  ctx.seed = c.seed;
  ctx.sphere_samples = c.sphere_samples;
  ctx.path_samples = c.path_samples;
  ctx.exec = Execution{c.jobs};

  std::vector<SuiteResult> out;
  for (const auto& name : c.suites) {
    SuiteResult suite{name, {}};
    auto& checks = suite.checks;
    const auto add = [&](std::vector<CheckResult> more) {
      for (auto& m : more) checks.push_back(std::move(m));
    };
    if (name == "stem-consistency") {
      checks.push_back(check_representation_identity(ctx, c.count("representation-identity", 500),
                                                     c.tolerance("representation-identity", 1e-9)));
      checks.push_back(check_pair_independence(ctx, c.count("pair-independence", 200),
                                               c.tolerance("pair-independence", 1e-8)));
      checks.push_back(check_conjugation_relation(ctx, c.count("conjugation-relation", 200),
                                                  c.tolerance("conjugation-relation", 1e-10)));
      checks.push_back(check_icic(ctx, c.count("icic", 200), c.tolerance("icic", 1e-12)));
      checks.push_back(check_matrix_inverse(ctx, c.count("matrix-inverse", 1000), c.tolerance("matrix-inverse", 1e-9)));
    } else if (name == "stem-holomorphy") {
      checks.push_back(check_stem_holomorphy(ctx, c.count("stem-holomorphy", 50), kDefaultStep,
                                             c.tolerance("stem-holomorphy", 1e-4)));
      for (const auto& fx : c.fixtures)
        checks.push_back(check_fixture_regularity(ctx, fx.function, fx.label, c.count("fixture-points", 20),
                                                  kDefaultStep, c.tolerance("fixture-regularity", 1e-4)));
    } else if (name == "star-regularity") {
      checks.push_back(check_oracle_agreement(ctx, c.count("oracle-pairs", 200), c.count("oracle-points", 50),
                                              c.tolerance("oracle-agreement", 1e-8)));
      checks.push_back(check_pinned_product(c.tolerance("pinned-product", 1e-12)));
      StarRegularityPlan plan;
      plan.pairs = c.count("star-pairs", 20);
      plan.points = c.count("star-points", 20);
      plan.tolerance = c.tolerance("star-regularity", 1e-4);
      if (auto it = c.tolerances.find("ratio-low"); it != c.tolerances.end()) plan.ratio_low = it->second;
      if (auto it = c.tolerances.find("ratio-high"); it != c.tolerances.end()) plan.ratio_high = it->second;
      plan.wrong_unit = c.negative_control;
      add(check_star_regularity(ctx, plan));
    } else if (name == "algebra-laws") {
      auto laws = check_algebra_laws(ctx, c.count("algebra-triples", 200), c.count("algebra-points", 20), 1e-8);
      for (auto& law : laws) {
        law.threshold = c.tolerance(law.law, law.law == "unit" || law.law == "real-centrality" ? 1e-10 : 1e-8);
        law.decide();
      }
      add(std::move(laws));
    } else if (name == "monodromy") {
      add(check_monodromy(ctx, c.count("monodromy", 200), c.tolerance("monodromy-sign", 1e-10),
                          c.tolerance("monodromy-square", 1e-9)));
    } else if (name == "radii-positivity") {
      add(check_radii(ctx, c.count("radii", 100)));
    } else if (name == "negative-controls") {
      const auto it = c.tolerances.find("negative-control");
      add(check_negative_controls(ctx, c.count("negative-controls", 5), it == c.tolerances.end() ? 1e-2 : it->second));
    }
    out.push_back(std::move(suite));
  }
  return out;
}

io::Json to_json(const CheckResult& r) {
  io::Json ws = io::Json::array();
  for (const auto& w : r.witnesses) {
    io::Json point = io::Json::array();
    for (const auto& c : w.point) point.push_back(io::to_json(c));
    ws.push_back({{"note", w.note}, {"point", point}, {"deviation", w.deviation}});
  }
  const auto finite = [](double v) -> io::Json {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  };
  io::Json j = {{"law", r.law},        {"trials", r.trials},   {"metric", r.metric},
                {"value", finite(r.value)}, {"relation", r.relation}, {"threshold", r.threshold},
                {"pass", r.pass},      {"gating", r.gating},   {"witnesses", ws}};
  if (r.metric == "max_dev") j["max_dev"] = finite(r.value);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

io::Json report_json(const RunConfig& config, const std::vector<SuiteResult>& suites) {
  io::Json arr = io::Json::array();
  bool all = true;
  for (const auto& s : suites) {
    io::Json checks = io::Json::array();
    for (const auto& c : s.checks) checks.push_back(to_json(c));
    arr.push_back({{"name", s.name}, {"pass", s.pass()}, {"checks", checks}});
    all = all && s.pass();
  }
  return {{"config", to_json(config)}, {"suites", arr}, {"pass", all}};
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw SliceError(ErrorKind::Schema, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw SliceError(ErrorKind::Schema, "failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace slicealg

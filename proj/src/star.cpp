#include "slicealg/star.hpp"

#include <algorithm>
#include <memory>

namespace slicealg {

StarProduct::StarProduct(SliceFunction f_, SliceFunction g_, SliceDomain d1, SliceDomain d2)
    : f(std::move(f_)), g(std::move(g_)), domain1(std::move(d1)), domain2(std::move(d2)),
      g_query_{g, domain1, domain2} {
  if (f.dim() != domain1.dim() || g.dim() != domain2.dim() || domain1.dim() != domain2.dim())
    throw SliceError(ErrorKind::DomainViolation, "star product factors and domains differ in dimension");
}

StarProduct::StarProduct(SliceFunction f_, SliceFunction g_, const SliceDomain& d)
    : StarProduct(std::move(f_), std::move(g_), d, d) {}

namespace {

Quaternion combine(const Quaternion& fq, const Quaternion& unit, const StemVector& G) {
  return fq * G.f1 + unit * fq * G.f2;
}

}  // namespace

Quaternion star_eval(const StarProduct& prod, const SlicePoint& q, const std::optional<PLPath>& route) {
  if (!prod.domain1.contains(q)) throw SliceError(ErrorKind::DomainViolation, "point is outside domain1");
  const Quaternion unit = prod.forced_unit ? prod.forced_unit->quat() : frak_i(q);
  Quaternion fq;
  if (prod.f.pointwise()) {
    fq = eval_point(prod.f, q);
  } else {
    const PLPath gamma = resolve_route(prod.domain1, q, route, prod.g_query().path_samples);
    fq = eval_along(prod.f, gamma, routing_unit(q));
  }
  return combine(fq, unit, stem_at_point(prod.g_query(), q, route));
}

SliceFunction star_function(const StarProduct& prod) {
  auto shared = std::make_shared<const StarProduct>(prod);
  CustomFunction fn;
  fn.label = "star";
  fn.along = [shared](const PLPath& gamma, const ImaginaryUnit& I) {
    if (!path_in_domain(shared->domain1, gamma, I, shared->g_query().path_samples))
      throw SliceError(ErrorKind::PathLeavesDomain, "lift leaves the domain of the product");
    const Quaternion unit = shared->forced_unit ? shared->forced_unit->quat() : I.quat();
    return combine(eval_along(shared->f, gamma, I), unit, stem_at(shared->g_query(), gamma));
  };
  if (prod.f.pointwise() && prod.g.pointwise())
    fn.point = [shared](const SlicePoint& q) { return star_eval(*shared, q); };
  return {std::move(fn), prod.domain1};
}

PolyFunction star_poly_oracle(const PolyFunction& f, const PolyFunction& g) {
  if (f.dim() != g.dim()) throw SliceError(ErrorKind::DomainViolation, "oracle factors differ in dimension");
  PolyFunction out(f.dim());
  for (const auto& [k, a] : f.terms()) {
    for (const auto& [l, b] : g.terms()) {
      MultiIndex m(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) m[i] = k[i] + l[i];
      out.add_term(m, a * b);
    }
  }
  return out;
}

namespace {

void monomials(std::size_t n, unsigned max_degree, MultiIndex& current, std::size_t pos, unsigned used,
               std::vector<MultiIndex>& out) {
  if (pos == n) {
    out.push_back(current);
    return;
  }
  for (unsigned e = 0; e + used <= max_degree; ++e) {
    current[pos] = e;
    monomials(n, max_degree, current, pos + 1, used + e, out);
  }
}

}  // namespace

PolyFunction random_poly(Rng& rng, std::size_t n, unsigned max_degree) {
  std::vector<MultiIndex> all;
  MultiIndex current(n, 0);
  monomials(n, max_degree, current, 0, 0, all);
  PolyFunction p(n);
  for (const auto& k : all) p.add_term(k, random_unit_quaternion(rng));
  return p;
}

void LawReport::record(double deviation, Witness witness) {
  ++trials;
  if (deviation > max_dev || witnesses.empty()) {
    max_dev = std::max(max_dev, deviation);
    witness.deviation = deviation;
    witnesses.insert(witnesses.begin(), std::move(witness));
    if (witnesses.size() > 4) witnesses.pop_back();
  }
}

void LawReport::merge(const LawReport& other) {
  trials += other.trials;
  if (other.witnesses.empty()) return;
  if (witnesses.empty() || other.max_dev > max_dev) witnesses.insert(witnesses.begin(), other.witnesses.front());
  max_dev = std::max(max_dev, other.max_dev);
  if (witnesses.size() > 4) witnesses.pop_back();
}

CRReport verify_star_regularity(const StarProduct& prod, const StarRegularityOptions& options) {
  constexpr int kMaxAttempts = 2000;
  std::vector<CRReport> parts(options.samples);
  parallel_for(options.samples, options.exec, [&](std::size_t s) {
    Rng rng(derive_seed(options.seed, s));
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const SlicePoint q = prod.domain1.sample_point(rng);
      const ImaginaryUnit I = routing_unit(q);
      const CPoint z = q.complex_coords(I);
      // The stencil must stay inside both Omega_1 and the declared domain of f.
      const double room = std::min(prod.domain1.distance_to_complement(z, I), prod.f.domain.distance_to_complement(z, I));
      if (!(room > std::max(4.0 * options.h, options.min_room))) continue;
      if (options.max_abs > 0.0 &&
          std::any_of(z.begin(), z.end(), [&](const Complex& c) { return std::abs(c) > options.max_abs; }))
        continue;
      const auto gamma = route_to(prod.domain1, q, prod.g_query().path_samples);
      if (!gamma) continue;
      const auto f_of_z = [&](const CPoint& w) { return star_eval(prod, SlicePoint(w, I), extend_to(*gamma, w)); };
      CRReport& part = parts[s];
      part.h = options.h;
      part.tolerance = options.tolerance;
      for (std::size_t l = 0; l < z.size(); ++l) part.add({q.coords(), l, cr_operator_norm(f_of_z, z, l, I, options.h)});
      return;
    }
    throw SliceError(ErrorKind::RoutingFailed, "could not sample a routable point with room for the stencil");
  });
  CRReport report;
  report.h = options.h;
  report.tolerance = options.tolerance;
  for (const auto& p : parts) report.merge(p);
  return report;
}

std::vector<LawReport> verify_algebra_laws(const SliceDomain& domain, const AlgebraLawOptions& options) {
  const std::vector<std::string> names = {"associativity", "left-distributivity", "right-distributivity", "unit",
                                          "real-centrality"};
  std::vector<std::vector<LawReport>> parts(options.triples, std::vector<LawReport>(names.size()));
  const std::size_t n = domain.dim();
  const SliceFunction one = SliceFunction::poly(PolyFunction::constant(n, 1.0));

  parallel_for(options.triples, options.exec, [&](std::size_t t) {
    Rng rng(derive_seed(options.seed, t));
    const PolyFunction pf = random_poly(rng, n, options.max_degree);
    const PolyFunction pg = random_poly(rng, n, options.max_degree);
    const PolyFunction ph = random_poly(rng, n, options.max_degree);
    PolyFunction g_plus_h = pg;
    for (const auto& [k, a] : ph.terms()) g_plus_h.add_term(k, a);
    PolyFunction f_plus_g = pf;
    for (const auto& [k, a] : pg.terms()) f_plus_g.add_term(k, a);
    PolyFunction lf(n), lg(n);
    for (const auto& [k, a] : pf.terms()) lf.add_term(k, options.lambda * a);
    for (const auto& [k, a] : pg.terms()) lg.add_term(k, options.lambda * a);

    const auto F = SliceFunction::poly(pf);
    const auto G = SliceFunction::poly(pg);
    const auto H = SliceFunction::poly(ph);
    const StarProduct fg(F, G, domain);
    const StarProduct gh(G, H, domain);
    const StarProduct fg_h(star_function(fg), H, domain);
    const StarProduct f_gh(F, star_function(gh), domain);
    const StarProduct f_gplush(F, SliceFunction::poly(g_plus_h), domain);
    const StarProduct fh(F, H, domain);
    const StarProduct fplusg_h(SliceFunction::poly(f_plus_g), H, domain);
    const StarProduct g_h(G, H, domain);
    const StarProduct one_f(one, F, domain);
    const StarProduct f_one(F, one, domain);
    const StarProduct lf_g(SliceFunction::poly(lf), G, domain);
    const StarProduct f_lg(F, SliceFunction::poly(lg), domain);

    auto& laws = parts[t];
    for (std::size_t p = 0; p < options.points; ++p) {
      const SlicePoint q = domain.sample_point(rng);
      const auto gamma = route_to(domain, q);
      if (!gamma) continue;
      const auto at = [&](const StarProduct& prod) { return star_eval(prod, q, gamma); };
      const std::string tag = "triple " + std::to_string(t) + " point " + std::to_string(p);

      laws[0].record(distance(at(fg_h), at(f_gh)), {tag, q.coords(), 0.0});
      const Quaternion fgv = at(fg);
      laws[1].record(distance(at(f_gplush), fgv + at(fh)), {tag, q.coords(), 0.0});
      laws[2].record(distance(at(fplusg_h), at(fh) + at(g_h)), {tag, q.coords(), 0.0});
      const Quaternion fq = eval_point(F, q);
      laws[3].record(std::max(distance(at(one_f), fq), distance(at(f_one), fq)), {tag, q.coords(), 0.0});
      const Quaternion scaled = options.lambda * fgv;
      laws[4].record(std::max(distance(at(lf_g), scaled), distance(at(f_lg), scaled)), {tag, q.coords(), 0.0});
    }
  });

  std::vector<LawReport> reports(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    reports[i].law = names[i];
    reports[i].tolerance = options.tolerance;
  }
  for (const auto& part : parts)
    for (std::size_t i = 0; i < names.size(); ++i) reports[i].merge(part[i]);
  return reports;
}

MonodromyReport star_monodromy_square(const SliceDomain& domain, std::size_t samples, std::uint64_t seed,
                                      Execution exec, double tolerance) {
  const StarProduct slit(SliceFunction::sqrt(domain), SliceFunction::sqrt(domain), domain);
  const SliceDomain plane = SliceDomain::full_space(1);
  const StarProduct looped(SliceFunction::sqrt(plane), SliceFunction::sqrt(plane), plane);
  const SliceFunction principal = SliceFunction::sqrt(domain);

  struct Sample {
    std::vector<Quaternion> point;
    double slit_dev = 0.0;
    double loop_dev = 0.0;
    double sign_dev = 0.0;
  };
  std::vector<Sample> out(samples);
  parallel_for(samples, exec, [&](std::size_t s) {
    Rng rng(derive_seed(seed, s));
    const SlicePoint q = domain.sample_point(rng);
    const ImaginaryUnit I = routing_unit(q);
    const Complex z = q.complex_coords(I)[0];
    // One counter-clockwise turn around 0, back to the positive axis, then the anchor segment to z.
    const double rho = 2.0 * std::abs(z) + 2.0;
    const PLPath loop({{Complex(rho)}, {Complex(0.0, rho)}, {Complex(-rho)}, {Complex(0.0, -rho)}, {Complex(rho)},
                       {Complex(1.0)}, {z}});
    Sample& r = out[s];
    r.point = q.coords();
    r.slit_dev = distance(star_eval(slit, q), q[0]);
    r.loop_dev = distance(star_eval(looped, q, loop), q[0]);
    r.sign_dev = distance(eval_along(looped.f, loop, I), -eval_point(principal, q));
  });

  MonodromyReport report;
  report.slit.law = "sqrt*sqrt=id (slit)";
  report.loop.law = "sqrt*sqrt=id (loop-continued)";
  report.slit.tolerance = report.loop.tolerance = tolerance;
  for (const auto& r : out) {
    report.slit.record(r.slit_dev, {"slit", r.point, 0.0});
    report.loop.record(r.loop_dev, {"loop", r.point, 0.0});
    report.loop_sign_dev = std::max(report.loop_sign_dev, r.sign_dev);
  }
  return report;
}

}  // namespace slicealg

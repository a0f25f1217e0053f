// slicealg {eval|stem|star|domain-check|verify}
//
// Exit codes: 0 ok, 1 verify failure, 2 schema or usage error, 3 domain
// violation or refuted certification, 4 internal error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicealg/campaign.hpp"
#include "slicealg/json_io.hpp"

namespace {

using namespace slicealg;
using io::Json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInternal = 4;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("SLICEALG_SEED"); env && *env) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw SliceError(ErrorKind::Schema, "SLICEALG_SEED must be an unsigned integer");
  }
  return seed;
}

/// Function document, with --domain (when given) replacing its declared domain.
SliceFunction load_function(const std::string& fn, const std::string& domain) {
  Json j = io::load_document(fn);
  if (!domain.empty()) {
    if (!j.is_object()) throw SliceError(ErrorKind::Schema, "function must be an object");
    j["domain"] = io::load_document(domain);
  }
  return io::function_from_json(j);
}

SliceDomain load_domain(const std::string& doc) { return io::domain_from_json(io::load_document(doc)); }

std::optional<PLPath> load_path(const std::string& doc) {
  if (doc.empty()) return std::nullopt;
  return io::path_from_json(io::load_document(doc));
}

struct EvalArgs {
  std::string fn, domain, point, path, unit;
};

int cmd_eval(const EvalArgs& a) {
  const SliceFunction f = load_function(a.fn, a.domain);
  if (!a.path.empty()) {
    const ImaginaryUnit unit = a.unit.empty() ? ImaginaryUnit::i() : io::unit_from_string(a.unit);
    const PLPath gamma = *load_path(a.path);
    const Quaternion v = eval_along(f, gamma, unit);
    emit({{"value", io::to_json(v)}, {"unit", io::to_json(unit)}, {"endpoint", io::to_json(SlicePoint(gamma.end(), unit))}});
    return 0;
  }
  if (a.point.empty()) throw SliceError(ErrorKind::Schema, "eval needs --point or --path");
  emit({{"value", io::to_json(eval_point(f, io::point_from_json(io::load_document(a.point))))}});
  return 0;
}

struct StemArgs {
  std::string fn, domain1, domain2, point, path, route;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  std::size_t sphere_samples = kDefaultSphereSamples;
};

/// Refuses when the sampled certification of Omega_2 against Omega_1 fails.
bool certify(const SliceDomain& d1, const SliceDomain& d2, std::size_t trials, std::uint64_t seed,
             std::size_t sphere_samples, Json& out) {
  const StemPreservingReport report = check_stem_preserving(d1, d2, trials, seed, Execution::serial(), sphere_samples);
  out["certification"] = io::to_json(report);
  return report.pass();
}

int cmd_stem(const StemArgs& a) {
  const SliceFunction f = load_function(a.fn, a.domain2);
  const SliceDomain d1 = a.domain1.empty() ? f.domain : load_domain(a.domain1);
  Json out;
  if (!certify(d1, f.domain, a.trials, effective_seed(a.seed), a.sphere_samples, out)) {
    emit(out);
    return kExitDomain;
  }
  StemQuery query{f, d1, f.domain};
  query.sphere_samples = a.sphere_samples;
  if (!a.path.empty()) {
    const PLPath gamma = *load_path(a.path);
    if (!slice_units_of(d1, gamma, a.sphere_samples).size())
      throw SliceError(ErrorKind::NotInPathSpace, "path has no sampled lift inside domain1");
    out["stem"] = io::to_json(stem_at(query, gamma));
    out["route"] = io::to_json(gamma);
  } else {
    if (a.point.empty()) throw SliceError(ErrorKind::Schema, "stem needs --point or --path");
    const SlicePoint q = io::point_from_json(io::load_document(a.point));
    const auto route = load_path(a.route);
    out["stem"] = io::to_json(stem_at_point(query, q, route));
    if (!q.is_real()) out["route"] = io::to_json(resolve_route(d1, q, route, query.path_samples));
  }
  emit(out);
  return 0;
}

struct StarArgs {
  std::string f, g, domain1, domain2;
  std::vector<std::string> points;
  std::size_t trials = 50;
  std::uint64_t seed = 0;
  std::size_t sphere_samples = kDefaultSphereSamples;
};

int cmd_star(const StarArgs& a) {
  const SliceFunction f = load_function(a.f, a.domain1);
  const SliceFunction g = load_function(a.g, a.domain2);
  const SliceDomain d1 = f.domain;
  Json out;
  if (!certify(d1, g.domain, a.trials, effective_seed(a.seed), a.sphere_samples, out)) {
    emit(out);
    return kExitDomain;
  }
  StarProduct prod(f, g, d1, g.domain);
  prod.g_query().sphere_samples = a.sphere_samples;
  const auto* pf = std::get_if<PolyFunction>(&f.body);
  const auto* pg = std::get_if<PolyFunction>(&g.body);
  std::optional<PolyFunction> oracle;
  if (pf && pg && pf->dim() == 1) oracle = star_poly_oracle(*pf, *pg);
  Json values = Json::array();
  for (const auto& doc : a.points) {
    const SlicePoint q = io::point_from_json(io::load_document(doc));
    const Quaternion v = star_eval(prod, q);
    Json entry = {{"point", io::to_json(q)}, {"value", io::to_json(v)}};
    if (oracle) {
      const Quaternion o = (*oracle)(q);
      entry["oracle"] = io::to_json(o);
      entry["match"] = distance(v, o) <= 1e-8 * (1.0 + o.norm());
    }
    values.push_back(std::move(entry));
  }
  out["values"] = values;
  if (oracle) out["oracle"] = io::to_json(*oracle);
  emit(out);
  return 0;
}

struct DomainCheckArgs {
  std::string domain, domain2;
  std::size_t trials = 200;
  std::uint64_t seed = 0;
  std::size_t sphere_samples = kDefaultSphereSamples;
  int jobs = 1;
};

int cmd_domain_check(const DomainCheckArgs& a) {
  const SliceDomain d = load_domain(a.domain);
  const std::uint64_t seed = effective_seed(a.seed);
  const Execution exec{a.jobs};
  const RealPathConnectedReport rpc = check_real_path_connected(d, a.trials, seed, exec);
  Json out = {{"domain", io::to_json(d)}, {"real_path_connected", io::to_json(rpc)}};
  bool ok = rpc.successes == rpc.trials;
  if (!a.domain2.empty()) {
    const SliceDomain d2 = load_domain(a.domain2);
    const StemPreservingReport sp = check_stem_preserving(d, d2, a.trials, seed, exec, a.sphere_samples);
    out["stem_preserving"] = io::to_json(sp);
    ok = ok && sp.pass();
  }
  out["pass"] = ok;
  emit(out);
  return ok ? 0 : kExitDomain;
}

struct VerifyArgs {
  std::string config, out;
  int jobs = 0;
};

int cmd_verify(const VerifyArgs& a) {
  RunConfig config = config_from_json(a.config.empty() ? Json::object() : io::load_document(a.config));
  if (a.jobs > 0) config.jobs = a.jobs;
  const auto suites = run_suites(config);
  const Json report = report_json(config, suites);
  const std::string text = report.dump(2) + "\n";
  if (!a.out.empty()) write_atomically(a.out, text);
  std::cout << text;
  for (const auto& s : suites)
    for (const auto& c : s.checks)
      if (!c.pass && c.gating) std::cerr << "FAIL " << s.name << ": " << c.law << " (" << c.value << ")\n";
  return report["pass"].get<bool>() ? 0 : kExitVerifyFailed;
}

int exit_code_for(const SliceError& e) { return e.kind() == ErrorKind::Schema ? kExitSchema : kExitDomain; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak slice analysis over several quaternionic variables"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Evaluate a function at a point or along a path");
  e->add_option("--fn", eval.fn, "function JSON or file")->required();
  e->add_option("--domain", eval.domain, "domain JSON or file (replaces the function's domain)");
  e->add_option("--point", eval.point, "point JSON or file");
  e->add_option("--path", eval.path, "path JSON or file");
  e->add_option("--unit", eval.unit, "lift unit as \"x,y,z\" (default i)");

  StemArgs stem;
  auto* s = app.add_subcommand("stem", "Stem of a function at a point or along a path");
  s->add_option("--fn", stem.fn, "function JSON or file")->required();
  s->add_option("--domain1", stem.domain1, "domain where paths live (default: the function's domain)");
  s->add_option("--domain2", stem.domain2, "domain of the function (replaces the function's domain)");
  s->add_option("--point", stem.point, "point JSON or file");
  s->add_option("--route", stem.route, "route to the point (default: anchor segment)");
  s->add_option("--path", stem.path, "path JSON or file");
  s->add_option("--trials", stem.trials, "certification trials");
  s->add_option("--seed", stem.seed, "certification seed");
  s->add_option("--sphere-samples", stem.sphere_samples, "sampled units");

  StarArgs star;
  auto* p = app.add_subcommand("star", "Evaluate f*g at points");
  p->add_option("--f", star.f, "left factor JSON or file")->required();
  p->add_option("--g", star.g, "right factor JSON or file")->required();
  p->add_option("--domain1", star.domain1, "domain of f (replaces its declared domain)");
  p->add_option("--domain2", star.domain2, "domain of g (replaces its declared domain)");
  p->add_option("--point", star.points, "point JSON or file (repeatable)")->required()->allow_extra_args(false);
  p->add_option("--trials", star.trials, "certification trials");
  p->add_option("--seed", star.seed, "certification seed");
  p->add_option("--sphere-samples", star.sphere_samples, "sampled units");

  DomainCheckArgs dc;
  auto* d = app.add_subcommand("domain-check", "Sampled real-path-connected and stem-preserving checks");
  d->add_option("--domain", dc.domain, "domain JSON or file")->required();
  d->add_option("--domain2", dc.domain2, "second domain, certified as stem-preserving against the first");
  d->add_option("--trials", dc.trials, "sampled points");
  d->add_option("--seed", dc.seed, "sampling seed");
  d->add_option("--sphere-samples", dc.sphere_samples, "sampled units");
  d->add_option("--jobs", dc.jobs, "worker threads");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run the verification suites");
  v->add_option("--config", verify.config, "RunConfig JSON or file (default: built-in)");
  v->add_option("--out", verify.out, "also write the report here, atomically");
  v->add_option("--jobs", verify.jobs, "worker threads (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitSchema;
  }

  try {
    if (*e) return cmd_eval(eval);
    if (*s) return cmd_stem(stem);
    if (*p) return cmd_star(star);
    if (*d) return cmd_domain_check(dc);
    if (*v) return cmd_verify(verify);
  } catch (const SliceError& err) {
    std::cerr << "slicealg: " << to_string(err.kind()) << ": " << err.what() << "\n";
    return exit_code_for(err);
  } catch (const std::exception& err) {
    std::cerr << "slicealg: internal error: " << err.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

#include "slicealg/json_io.hpp"

#include <fstream>
#include <sstream>

namespace slicealg::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw SliceError(ErrorKind::Schema, what); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

std::vector<std::array<double, 2>> ranges(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array of [lo, hi] ranges");
  std::vector<std::array<double, 2>> out;
  for (const auto& r : j) {
    const auto v = numbers(r, what);
    if (v.size() != 2 || !(v[0] < v[1])) schema(std::string(what) + " ranges must be [lo, hi] with lo < hi");
    out.push_back({v[0], v[1]});
  }
  return out;
}

bool is_number_array(const Json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_number(); });
}

}  // namespace

Json load_document(const std::string& inline_or_path) {
  std::string text;
  const auto first = inline_or_path.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (inline_or_path[first] == '{' || inline_or_path[first] == '[')) {
    text = inline_or_path;
  } else {
    std::ifstream in(inline_or_path);
    if (!in) schema("cannot read " + inline_or_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema(std::string("malformed JSON: ") + e.what());
  }
}

Quaternion quaternion_from_json(const Json& j) {
  const auto v = numbers(j, "quaternion");
  if (v.size() != 4) schema("quaternion must be [w, x, y, z]");
  return {v[0], v[1], v[2], v[3]};
}

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

Complex complex_from_json(const Json& j) {
  const auto v = numbers(j, "complex");
  if (v.size() != 2) schema("complex number must be [re, im]");
  return {v[0], v[1]};
}

Json to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

ImaginaryUnit unit_from_json(const Json& j) {
  const auto v = numbers(j, "unit");
  if (v.size() != 3) schema("unit must be [x, y, z]");
  try {
    return {v[0], v[1], v[2]};
  } catch (const SliceError&) {
    schema("unit must be a nonzero vector");
  }
}

ImaginaryUnit unit_from_string(const std::string& s) {
  Json arr = Json::array();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      arr.push_back(v);
    } catch (const std::exception&) {
      schema("unit must be written as \"x,y,z\"");
    }
  }
  return unit_from_json(arr);
}

Json to_json(const ImaginaryUnit& u) { return Json::array({u.quat().x, u.quat().y, u.quat().z}); }

SlicePoint point_from_json(const Json& j) {
  if (is_number_array(j)) return SlicePoint({quaternion_from_json(j)});
  if (!j.is_array() || j.empty()) schema("point must be an array of quaternions");
  std::vector<Quaternion> coords;
  for (const auto& c : j) coords.push_back(quaternion_from_json(c));
  try {
    return SlicePoint(std::move(coords));
  } catch (const SliceError& e) {
    schema(e.what());
  }
}

Json to_json(const SlicePoint& q) {
  Json arr = Json::array();
  for (const auto& c : q.coords()) arr.push_back(to_json(c));
  return arr;
}

PLPath path_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) schema("path must be a non-empty array of waypoints");
  std::vector<CPoint> pts;
  for (const auto& w : j) {
    if (is_number_array(w)) {
      pts.push_back({complex_from_json(w)});
      continue;
    }
    if (!w.is_array() || w.empty()) schema("waypoint must be an array of [re, im] pairs");
    CPoint p;
    for (const auto& c : w) p.push_back(complex_from_json(c));
    pts.push_back(std::move(p));
  }
  try {
    return PLPath(std::move(pts));
  } catch (const SliceError& e) {
    schema(e.what());
  }
}

Json to_json(const PathFragment& p) {
  Json arr = Json::array();
  for (const auto& w : p.waypoints()) {
    Json wp = Json::array();
    for (const auto& c : w) wp.push_back(to_json(c));
    arr.push_back(std::move(wp));
  }
  return arr;
}

Json to_json(const StemVector& v) { return Json::array({to_json(v.f1), to_json(v.f2)}); }

SliceDomain domain_from_json(const Json& j) {
  if (!j.is_object()) schema("domain must be an object");
  const Json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) schema("domain kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  std::optional<CPoint> anchor;
  if (j.contains("anchor")) {
    anchor.emplace();
    for (double v : numbers(j.at("anchor"), "anchor")) anchor->emplace_back(v, 0.0);
  }
  try {
    if (kind == "full-space") {
      const auto n = params.contains("n") ? static_cast<std::size_t>(number(params.at("n"), "n")) : 1;
      return SliceDomain(domains::FullSpace{n}, anchor);
    }
    if (kind == "axially-symmetric-ball" || kind == "ball")
      return SliceDomain(domains::AxialBall{numbers(field(params, "center"), "center"), number(field(params, "radius"), "radius")},
                         anchor);
    if (kind == "slice-box")
      return SliceDomain(domains::SliceBox{unit_from_json(field(params, "unit")), ranges(field(params, "re"), "re"),
                                           ranges(field(params, "im"), "im")},
                         anchor);
    if (kind == "slit-plane") return SliceDomain(domains::SlitPlane{}, anchor);
    if (kind == "union") {
      const Json& members = field(params, "members");
      if (!members.is_array() || members.empty()) schema("union members must be a non-empty array");
      std::vector<SliceDomain> ms;
      for (const auto& m : members) ms.push_back(domain_from_json(m));
      return SliceDomain(domains::Union{std::move(ms)}, anchor);
    }
  } catch (const SliceError& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    schema(e.what());
  }
  schema("unknown domain kind \"" + kind + "\"");
}

Json to_json(const SliceDomain& d) {
  Json j;
  j["kind"] = d.kind_name();
  Json params = Json::object();
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, domains::FullSpace>) {
          params["n"] = k.n;
        } else if constexpr (std::is_same_v<K, domains::AxialBall>) {
          params["center"] = k.center;
          params["radius"] = k.radius;
        } else if constexpr (std::is_same_v<K, domains::SliceBox>) {
          params["unit"] = to_json(k.unit);
          params["re"] = k.re;
          params["im"] = k.im;
        } else if constexpr (std::is_same_v<K, domains::Union>) {
          Json ms = Json::array();
          for (const auto& m : k.members) ms.push_back(to_json(m));
          params["members"] = ms;
        }
      },
      d.kind());
  j["params"] = params;
  if (d.anchor()) {
    Json a = Json::array();
    for (const auto& c : *d.anchor()) a.push_back(c.real());
    j["anchor"] = a;
  }
  return j;
}

SliceFunction function_from_json(const Json& j) {
  if (!j.is_object()) schema("function must be an object");
  const Json& type_j = field(j, "type");
  if (!type_j.is_string()) schema("function type must be a string");
  const std::string type = type_j.get<std::string>();
  std::optional<SliceDomain> domain;
  if (j.contains("domain")) domain = domain_from_json(j.at("domain"));
  if (type == "poly") {
    const Json& terms = field(j, "terms");
    if (!terms.is_array() || terms.empty()) schema("poly terms must be a non-empty array");
    std::size_t n = j.contains("n") ? static_cast<std::size_t>(number(j.at("n"), "n")) : field(terms.front(), "k").size();
    PolyFunction p(n);
    for (const auto& t : terms) {
      MultiIndex k;
      for (double e : numbers(field(t, "k"), "k")) {
        if (e < 0 || e != static_cast<unsigned>(e)) schema("exponents must be non-negative integers");
        k.push_back(static_cast<unsigned>(e));
      }
      try {
        p.add_term(k, quaternion_from_json(field(t, "a")));
      } catch (const SliceError& e) {
        schema(e.what());
      }
    }
    if (domain && domain->dim() != n) schema("function domain dimension differs from the polynomial");
    return domain ? SliceFunction::poly(std::move(p), *domain) : SliceFunction::poly(std::move(p));
  }
  if (type == "sqrt" || type == "log") {
    if (domain && domain->dim() != 1) schema("monodromy functions are one-variable");
    const SliceDomain d = domain.value_or(SliceDomain::slit_plane());
    return type == "sqrt" ? SliceFunction::sqrt(d) : SliceFunction::log(d);
  }
  schema("unknown function type \"" + type + "\"");
}

Json to_json(const PolyFunction& p) {
  Json terms = Json::array();
  for (const auto& [k, a] : p.terms()) terms.push_back({{"k", k}, {"a", to_json(a)}});
  return {{"type", "poly"}, {"n", p.dim()}, {"terms", terms}};
}

Json to_json(const CRReport& r) {
  Json per = Json::array();
  for (const auto& s : r.per_point) {
    Json point = Json::array();
    for (const auto& c : s.point) point.push_back(to_json(c));
    per.push_back({{"point", point}, {"coordinate", s.coordinate}, {"residual", s.residual}});
  }
  return {{"max_residual", r.max_residual}, {"per_point", per}, {"h", r.h}, {"tolerance", r.tolerance}, {"pass", r.pass}};
}

Json to_json(const LawReport& r) {
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json point = Json::array();
    for (const auto& c : w.point) point.push_back(to_json(c));
    ws.push_back({{"note", w.note}, {"point", point}, {"deviation", w.deviation}});
  }
  return {{"law", r.law}, {"trials", r.trials}, {"max_dev", r.max_dev}, {"tolerance", r.tolerance},
          {"pass", r.pass()}, {"witnesses", ws}};
}

Json to_json(const RealPathConnectedReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  Json refuted = Json::array();
  for (const auto& q : r.refuted) refuted.push_back(to_json(q));
  return {{"trials", r.trials}, {"successes", r.successes}, {"ratio", r.ratio}, {"witnesses", witnesses},
          {"refuted", refuted}};
}

Json to_json(const StemPreservingReport& r) {
  Json j = {{"paths_checked", r.paths_checked},
            {"pairs_checked", r.pairs_checked},
            {"condition_i_failures", r.condition_i_failures},
            {"condition_ii_failures", r.condition_ii_failures},
            {"empty_intersections", r.empty_intersections},
            {"min_units", r.min_units},
            {"pass", r.pass()}};
  if (r.condition_i_witness) j["condition_i_witness"] = to_json(*r.condition_i_witness);
  if (r.condition_ii_witness)
    j["condition_ii_witness"] = Json::array({to_json((*r.condition_ii_witness)[0]), to_json((*r.condition_ii_witness)[1])});
  return j;
}

}  // namespace slicealg::io

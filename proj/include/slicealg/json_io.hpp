#pragma once

// JSON encodings shared by the CLI and the report writers.
//
//   quaternion   [w, x, y, z]
//   complex      [re, im]
//   unit         [x, y, z]            (normalized on load)
//   point        [[w,x,y,z], ...]     one quaternion per coordinate; a bare
//                                     [w,x,y,z] is accepted for n = 1
//   path         [[[re,im], ...], ...] one entry per waypoint, one complex per
//                                     coordinate; [[re,im], ...] is accepted for n = 1
//   domain       {"kind": "full-space" | "axially-symmetric-ball" | "slice-box"
//                         | "slit-plane" | "union",
//                 "params": {...}, "anchor": [reals] (optional)}
//       full-space              {"n": 2}
//       axially-symmetric-ball  {"center": [reals], "radius": r}
//       slice-box               {"unit": [x,y,z], "re": [[lo,hi],...], "im": [[lo,hi],...]}
//       slit-plane              {}
//       union                   {"members": [domain, ...]}
//   function     {"type": "poly", "n": 1, "terms": [{"k": [..], "a": [w,x,y,z]}, ...]}
//                {"type": "sqrt" | "log"}
//                optional "domain": domain (defaults: full-space for poly,
//                slit-plane for sqrt/log)

#include <string>

#include <json.hpp>

#include "slicealg/domain.hpp"
#include "slicealg/function.hpp"
#include "slicealg/star.hpp"
#include "slicealg/stem.hpp"

namespace slicealg::io {

using Json = nlohmann::json;

/// Parses a document given either inline (starting with '{' or '[') or as a file path.
/// Throws SliceError(Schema) on unreadable files or malformed JSON.
Json load_document(const std::string& inline_or_path);

Quaternion quaternion_from_json(const Json& j);
Json to_json(const Quaternion& q);
Complex complex_from_json(const Json& j);
Json to_json(const Complex& c);
ImaginaryUnit unit_from_json(const Json& j);
/// "x,y,z" as used on the command line.
ImaginaryUnit unit_from_string(const std::string& s);
Json to_json(const ImaginaryUnit& u);

SlicePoint point_from_json(const Json& j);
Json to_json(const SlicePoint& q);
PLPath path_from_json(const Json& j);
Json to_json(const PathFragment& p);
Json to_json(const StemVector& v);

SliceDomain domain_from_json(const Json& j);
Json to_json(const SliceDomain& d);
SliceFunction function_from_json(const Json& j);
Json to_json(const PolyFunction& p);

Json to_json(const CRReport& r);
Json to_json(const LawReport& r);
Json to_json(const RealPathConnectedReport& r);
Json to_json(const StemPreservingReport& r);

}  // namespace slicealg::io

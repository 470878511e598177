#pragma once

#include <json.hpp>

#include "cmc1/analyze.hpp"
#include "cmc1/develop.hpp"
#include "cmc1/mesh.hpp"

namespace cmc1 {

using Json = nlohmann::ordered_json;

Json to_json(Complex z);
Json to_json(const Mat2& M);
Json to_json(const ValueRecord& v);
Json to_json(const RamificationReport& r);
Json to_json(const EndReport& e);
Json to_json(const DivisorConsistency& d);
Json to_json(const FaceInequality& f);
Json to_json(const FrobeniusReport<GaussRational>& r);
Json to_json(const FrobeniusReport<Complex>& r);
Json to_json(const Classification& c);
Json to_json(const ThetaSample& s);
Json to_json(const AnalysisReport& r);
Json to_json(const FrameState& s);
Json to_json(const MonodromyResult& m);
Json to_json(const CatalogEntry& e);
/// Summary only (counts, warnings); the geometry goes through export_mesh.
Json to_json(const SurfaceMesh& m);

/// Surface file format:
///   {"name": "...", "ambient": "H3" | "S31", "genus": 0,
///    "punctures": ["0", "1/2+i", "inf"],
///    "G": {"num": [c0, c1, ...], "den": [...]},
///    "Q": {"num": [...], "den": [...]},
///    "g": "(pow z 1/2)",              optional prefix expression
///    "basepoint": [1, 0], "universal_cover": false, "avoid": [[x, y]]}
/// Coefficients are Gaussian rationals written as strings ("3/4", "1-2i")
/// in ascending degree. Throws std::invalid_argument on malformed input.
SurfaceData surface_from_json(const Json& j);
Json surface_to_json(const SurfaceData& s);

/// {"clearance": 0.02, "segments": [{"line": [[x, y], [x, y]]},
///  {"arc": {"center": [x, y], "radius": r, "from": t0, "to": t1}}]}
PathSpec path_from_json(const Json& j);
Json path_to_json(const PathSpec& p);

}  // namespace cmc1

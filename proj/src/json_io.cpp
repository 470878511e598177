#include "cmc1/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace cmc1 {

namespace {

template <class S>
Json scalar_json(const S& s) {
  if constexpr (ScalarTraits<S>::exact) {
    return s.str();
  } else {
    return to_json(s);
  }
}

Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a number or an [re, im] pair, got " + j.dump());
}

GaussRational gauss_from(const Json& j) {
  if (j.is_string()) return GaussRational::parse(j.get<std::string>());
  if (j.is_number_integer()) return GaussRational(j.get<long>());
  throw std::invalid_argument("expected a coefficient string, got " + j.dump());
}

ExactPolynomial poly_from(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a coefficient array");
  std::vector<GaussRational> c;
  for (const auto& x : j) c.push_back(gauss_from(x));
  return ExactPolynomial(std::move(c));
}

ExactMap map_from(const Json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("num")) throw std::invalid_argument(what + " needs a num field");
  const ExactPolynomial num = poly_from(j.at("num"));
  const ExactPolynomial den = j.contains("den") ? poly_from(j.at("den")) : ExactPolynomial::constant(GaussRational(1));
  return reduce(num, den);
}

Json poly_json(const ExactPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.str());
  return a;
}

Json map_json(const ExactMap& m) { return {{"num", poly_json(m.num())}, {"den", poly_json(m.den())}}; }

Json segment_json(const Segment& s) {
  if (s.kind == Segment::Kind::Line) return {{"line", {to_json(s.a), to_json(s.b)}}};
  return {{"arc", {{"center", to_json(s.center)}, {"radius", s.radius}, {"from", s.theta0}, {"to", s.theta1}}}};
}

template <class S>
Json frobenius_json(const FrobeniusReport<S>& r) {
  Json j;
  j["point"] = r.point;
  j["pole_order"] = r.pole_order;
  j["c_minus2"] = scalar_json(r.c_minus2);
  j["lambda"] = {to_json(r.lambda1), to_json(r.lambda2)};
  if (r.lambda1_exact) j["lambda_exact"] = {scalar_json(*r.lambda1_exact), scalar_json(*r.lambda2_exact)};
  j["difference_class"] = to_string(r.diff_class);
  if (r.resonance > 0) j["resonance"] = r.resonance;
  if (r.log_term) j["log_term"] = scalar_json(*r.log_term);
  return j;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Mat2& M) {
  Json rows = Json::array();
  for (int i = 0; i < 2; ++i) rows.push_back({to_json(M(i, 0)), to_json(M(i, 1))});
  return rows;
}

Json to_json(const ValueRecord& v) {
  Json j{{"value", v.label}};
  if (v.nu > 0) j["nu"] = v.nu;
  return j;
}

Json to_json(const RamificationReport& r) {
  Json ex = Json::array(), ram = Json::array();
  for (const auto& v : r.exceptional) ex.push_back(to_json(v));
  for (const auto& v : r.ramified) ram.push_back(to_json(v));
  return {{"degree", r.degree},     {"ends", r.ends},
          {"D_G", r.d_g()},         {"nu_G", to_string(r.nu)},
          {"bound", to_string(r.bound)}, {"ratio", to_string(r.ratio)},
          {"bound_valid", r.bound_valid}, {"exceptional", ex},
          {"totally_ramified", ram}};
}

Json to_json(const EndReport& e) {
  return {{"end", e.label},
          {"mu_sharp", e.mu_sharp},
          {"d_j", e.d_j},
          {"pole_order_omega_sharp", e.pole_order_omega_sharp},
          {"complete", e.complete},
          {"algebraic", e.algebraic},
          {"regular", e.regular}};
}

Json to_json(const DivisorConsistency& d) {
  return {{"consistent", d.consistent}, {"complete", d.complete},   {"algebraic_type", d.algebraic_type},
          {"degree_bound", d.degree_bound}, {"algebraic_degree_bound", d.algebraic_degree_bound},
          {"lhs", d.lhs}, {"rhs", d.rhs}, {"violations", d.violations}};
}

Json to_json(const FaceInequality& f) {
  return {{"holds", f.holds},
          {"equality", f.equality},
          {"ratio", to_string(f.face_bound.ratio)},
          {"bound", to_string(f.face_bound.bound)},
          {"bound_valid", f.face_bound.valid},
          {"max_exceptional", f.max_exceptional}};
}

Json to_json(const FrobeniusReport<GaussRational>& r) { return frobenius_json(r); }
Json to_json(const FrobeniusReport<Complex>& r) { return frobenius_json(r); }

Json to_json(const Classification& c) {
  Json reps = Json::array();
  for (const auto& r : c.reports) reps.push_back(to_json(r));
  Json j{{"kind", to_string(c.kind)}, {"failures", c.failures}, {"reports", reps}};
  if (c.special_end >= 0) j["special_end"] = c.special_end;
  return j;
}

Json to_json(const ThetaSample& s) {
  Json logs = Json::array();
  for (const auto& l : s.log_terms) logs.push_back(l.str());
  Json j{{"theta", to_string(s.theta)}, {"admissible", s.admissible}};
  if (!s.note.empty()) j["note"] = s.note;
  j["log_terms"] = logs;
  j["float_magnitudes"] = s.float_magnitudes;
  j["vanishes"] = s.vanishes;
  return j;
}

Json to_json(const AnalysisReport& r) {
  Json ends = Json::array();
  for (const auto& e : r.ends) ends.push_back(to_json(e));
  Json j{{"name", r.name},
         {"ambient", to_string(r.ambient)},
         {"mode", r.exact ? "exact" : "float"},
         {"ramification", to_json(r.ramification)},
         {"ends", ends},
         {"nondegeneracy", {{"pass", r.nondegeneracy.pass}, {"violations", r.nondegeneracy.violations}}},
         {"divisor", to_json(r.divisor)}};
  if (r.classification) j["frobenius"] = to_json(*r.classification);
  if (r.face) j["face"] = to_json(*r.face);
  if (r.expected) {
    j["expected"] = {{"D_G", r.expected->d_g}, {"nu_G", to_string(r.expected->nu)}, {"bound", to_string(r.expected->bound)}};
  }
  j["failures"] = r.failures;
  j["pass"] = r.pass();
  return j;
}

Json to_json(const FrameState& s) {
  return {{"z", to_json(s.z)},         {"F", to_json(s.F)},          {"branch_state", s.branch},
          {"det", to_json(s.F.determinant())}, {"det_drift", s.det_drift}, {"arclength", s.arclength},
          {"steps", s.steps}};
}

Json to_json(const MonodromyResult& m) {
  return {{"M", to_json(m.M)},
          {"class", to_string(m.klass)},
          {"unitary_defect", m.unitary_defect},
          {"su11_defect", m.su11_defect},
          {"det_drift", m.det_drift},
          {"drift_per_length", m.drift_per_length},
          {"end", to_json(m.end)}};
}

Json to_json(const CatalogEntry& e) {
  Json params = Json::object();
  for (const auto& [k, v] : e.params) params[k] = v;
  return {{"key", e.key},
          {"note", e.note},
          {"params", params},
          {"expected", {{"D_G", e.expected.d_g}, {"nu_G", to_string(e.expected.nu)}, {"bound", to_string(e.expected.bound)}}},
          {"surface", surface_to_json(e.data)}};
}

Json to_json(const SurfaceMesh& m) {
  return {{"name", m.name},
          {"ambient", to_string(m.ambient)},
          {"route", m.route == FrameRoute::Primary ? "primary" : "dual"},
          {"vertices", m.vertices.size()},
          {"faces", m.faces.size()},
          {"singular_vertices", m.singular_vertices.size()},
          {"warnings", m.warnings}};
}

SurfaceData surface_from_json(const Json& j) {
  try {
    SurfaceData s;
    s.name = j.value("name", std::string("unnamed"));
    s.ambient = ambient_from_string(j.value("ambient", std::string("H3")));
    s.M.genus = j.value("genus", 0);
    for (const auto& p : j.at("punctures")) {
      const std::string t = p.get<std::string>();
      s.M.punctures.push_back(t == "inf" ? ExactPoint::infinity() : ExactPoint(GaussRational::parse(t)));
    }
    s.M.validate();
    s.G = map_from(j.at("G"), "G");
    s.Q = ExactDifferential{map_from(j.at("Q"), "Q"), 2};
    if (j.contains("g")) s.g = ExprFunction::parse(j.at("g").get<std::string>());
    if (j.contains("basepoint")) s.basepoint = complex_from(j.at("basepoint"));
    s.universal_cover = j.value("universal_cover", false);
    if (j.contains("avoid"))
      for (const auto& a : j.at("avoid")) s.avoid.push_back(complex_from(a));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad surface file: ") + e.what());
  }
}

Json surface_to_json(const SurfaceData& s) {
  Json p = Json::array();
  for (const auto& x : s.M.punctures) p.push_back(x.str());
  Json j{{"name", s.name}, {"ambient", to_string(s.ambient)}, {"genus", s.M.genus}, {"punctures", p},
         {"G", map_json(s.G)}, {"Q", map_json(s.Q.coeff)}};
  if (s.g) j["g"] = s.g->str();
  j["basepoint"] = to_json(s.basepoint);
  j["universal_cover"] = s.universal_cover;
  if (!s.avoid.empty()) {
    Json a = Json::array();
    for (const auto& z : s.avoid) a.push_back(to_json(z));
    j["avoid"] = a;
  }
  return j;
}

PathSpec path_from_json(const Json& j) {
  try {
    PathSpec p;
    p.clearance = j.value("clearance", 0.02);
    for (const auto& s : j.at("segments")) {
      if (s.contains("line")) {
        p.segments.push_back(Segment::line(complex_from(s["line"].at(0)), complex_from(s["line"].at(1))));
      } else if (s.contains("arc")) {
        const auto& a = s["arc"];
        p.segments.push_back(Segment::arc(complex_from(a.at("center")), a.at("radius").get<double>(),
                                          a.at("from").get<double>(), a.at("to").get<double>()));
      } else {
        throw std::invalid_argument("segment must be a line or an arc: " + s.dump());
      }
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad path: ") + e.what());
  }
}

Json path_to_json(const PathSpec& p) {
  Json segs = Json::array();
  for (const auto& s : p.segments) segs.push_back(segment_json(s));
  return {{"clearance", p.clearance}, {"segments", segs}};
}

}  // namespace cmc1

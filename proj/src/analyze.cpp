#include "cmc1/analyze.hpp"

#include <stdexcept>

namespace cmc1 {

AnalysisReport analyze(const SurfaceData& data, const std::optional<ExpectedValues>& expected, bool exact) {
  data.M.validate();
  if (data.M.genus != 0) throw std::invalid_argument("only genus 0 domains are supported");
  AnalysisReport r;
  r.name = data.name;
  r.ambient = data.ambient;
  r.exact = exact;
  r.expected = expected;

  if (exact) {
    r.ramification = nu_value(data.G, data.M);
  } else {
    PuncturedSphere<Complex> M;
    M.genus = data.M.genus;
    for (const auto& p : data.M.punctures) M.punctures.push_back(p.approx());
    r.ramification = nu_value(data.G.to_complex(), M);
  }

  DivisorData dd;
  dd.genus = data.M.genus;
  dd.degree = data.G.degree();
  for (const auto& p : data.M.punctures) {
    EndReport e = end_report(data.G, data.Q, p);
    dd.ends.push_back({e.mu_sharp, e.d_j});
    r.ends.push_back(std::move(e));
  }
  r.nondegeneracy = nondegeneracy_check(data.G, data.Q, data.M);
  r.divisor = divisor_consistency(dd, !data.universal_cover);

  bool has_inf = false;
  for (const auto& p : data.M.punctures) has_inf = has_inf || p.is_infinity();
  if (has_inf && data.M.punctures.size() >= 2) r.classification = classify_reducibility(data);

  if (data.ambient == Ambient::S31) {
    r.face = face_inequality(data.M.genus, static_cast<int>(data.M.punctures.size()), r.ramification.degree);
    if (r.ramification.d_g() > r.face->max_exceptional) {
      r.failures.push_back("face gate: D_G = " + std::to_string(r.ramification.d_g()) + " > " +
                           std::to_string(r.face->max_exceptional));
    }
  }

  for (const auto& v : r.nondegeneracy.violations) r.failures.push_back("nondegeneracy: " + v);
  if (expected) {
    const auto& ram = r.ramification;
    if (ram.d_g() != expected->d_g)
      r.failures.push_back("D_G = " + std::to_string(ram.d_g()) + ", expected " + std::to_string(expected->d_g));
    if (ram.nu != expected->nu) r.failures.push_back("nu_G = " + to_string(ram.nu) + ", expected " + to_string(expected->nu));
    if (ram.bound != expected->bound)
      r.failures.push_back("bound = " + to_string(ram.bound) + ", expected " + to_string(expected->bound));
  }
  return r;
}

AnalysisReport analyze(const CatalogEntry& entry, bool exact) { return analyze(entry.data, entry.expected, exact); }

}  // namespace cmc1

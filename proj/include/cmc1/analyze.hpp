#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmc1/catalog.hpp"
#include "cmc1/frobenius.hpp"

namespace cmc1 {

struct AnalysisReport {
  std::string name;
  Ambient ambient = Ambient::H3;
  bool exact = true;
  RamificationReport ramification;
  std::vector<EndReport> ends;
  NondegeneracyReport nondegeneracy;
  DivisorConsistency divisor;
  std::optional<Classification> classification;
  std::optional<FaceInequality> face;
  std::optional<ExpectedValues> expected;
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

/// Ramification, end and nondegeneracy audit of one package. Failures
/// list mismatches against expected and, for faces, the D_G <= 3 gate.
AnalysisReport analyze(const SurfaceData& data, const std::optional<ExpectedValues>& expected = {},
                       bool exact = true);
AnalysisReport analyze(const CatalogEntry& entry, bool exact = true);

}  // namespace cmc1

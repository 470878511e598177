#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmc1/mesh.hpp"
#include "cmc1/surface_data.hpp"

namespace cmc1 {

using Params = std::map<std::string, std::string>;

/// (D_G, nu_G, bound) as exact rationals.
struct ExpectedValues {
  int d_g = 0;
  Rational nu;
  Rational bound;
};

struct CatalogEntry {
  std::string key;
  std::string note;
  Params params;  // values actually used, defaults filled in
  SurfaceData data;
  ExpectedValues expected;
  /// A grid that avoids the ends and suits meshing this entry.
  DomainGrid grid;
};

/// Keys with their parameter defaults.
std::vector<std::string> catalog_keys();
Params catalog_defaults(const std::string& key);

/// Throws std::out_of_range for an unknown key and std::invalid_argument
/// for a bad or unknown parameter.
CatalogEntry catalog_lookup(const std::string& key, const Params& params = {});

/// Every entry at its default parameters.
std::vector<CatalogEntry> catalog_list();

}  // namespace cmc1

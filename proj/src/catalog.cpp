#include "cmc1/catalog.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace cmc1 {

namespace {

using P = ExactPolynomial;
using GR = GaussRational;

P z_poly() { return P::identity(); }

P product_of_factors(const std::vector<GR>& roots) {
  P out = P::constant(GR(1));
  for (const auto& a : roots) out = out * P::linear_factor(a);
  return out;
}

ExactPoint pt(const GR& a) { return ExactPoint(a); }

Rational get_rational(const Params& p, const std::string& name) {
  try {
    return parse_rational(p.at(name));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("parameter " + name + " is not a rational number: " + p.at(name));
  }
}

int get_positive_int(const Params& p, const std::string& name) {
  const Rational q = get_rational(p, name);
  if (q.get_den() != 1 || q < 1 || q > 64) throw std::invalid_argument("parameter " + name + " must be an integer in 1..64");
  return static_cast<int>(q.get_num().get_si());
}

std::string lit(const Rational& q) {
  if (sgn(q) < 0) return "(neg " + Rational(-q).get_str() + ")";
  return q.get_str();
}

DomainGrid polar_grid(double exclusion = 0.05) {
  DomainGrid g;
  g.chart = DomainGrid::Chart::Polar;
  g.r0 = 0.2;
  g.r1 = 5.0;
  g.n1 = 21;
  g.n2 = 32;
  g.exclusion = exclusion;
  g.basepoint = {1.0, 0.0};
  return g;
}

DomainGrid square_grid(double half, int n, Complex base, double exclusion = 0.05) {
  DomainGrid g;
  g.chart = DomainGrid::Chart::Cartesian;
  g.x0 = g.y0 = -half;
  g.x1 = g.y1 = half;
  g.n1 = g.n2 = n;
  g.exclusion = exclusion;
  g.basepoint = base;
  return g;
}

ExpectedValues expect(int d, const Rational& nu, const Rational& bound) {
  ExpectedValues e;
  e.d_g = d;
  e.nu = nu;
  e.nu.canonicalize();
  e.bound = bound;
  e.bound.canonicalize();
  return e;
}

CatalogEntry voss(int k, const Params& prm) {
  CatalogEntry e;
  e.key = k == 3 ? "voss-k3" : "voss-k4";
  e.params = prm;
  std::vector<GR> a = {GR(-1), GR(1)};
  if (k == 4) a.push_back(GR(Rational(0), Rational(1)));
  e.note = "Voss cousin: G = z, omega# = dz / prod(z - a_j) on C minus " + std::to_string(k - 1) +
           " points; defined only on the universal cover";
  SurfaceData& s = e.data;
  s.name = e.key;
  s.G = ExactMap(z_poly());
  s.Q = ExactDifferential{reduce(P::constant(GR(-1)), product_of_factors(a)), 2};
  for (const auto& x : a) s.M.punctures.push_back(pt(x));
  s.M.punctures.push_back(ExactPoint::infinity());
  s.basepoint = {0.0, 0.0};
  s.universal_cover = true;
  e.expected = expect(k, Rational(k), Rational(k));
  e.grid = square_grid(2.0, 21, {0.0, 0.0}, 0.1);
  return e;
}

CatalogEntry power_n(const Params& prm) {
  CatalogEntry e;
  e.key = "power-n";
  e.params = prm;
  const int n = get_positive_int(prm, "n");
  const Rational theta = get_rational(prm, "theta");
  if (sgn(theta) == 0) throw std::invalid_argument("theta must be nonzero");
  e.note = "G = z^n, Q = theta z^(n-1) dz^2 on C; one exceptional value and a totally ramified value at z = 0";
  SurfaceData& s = e.data;
  s.name = "power-n";
  s.G = ExactMap(P::monomial(GR(1), n));
  s.Q = ExactDifferential{ExactMap(P::monomial(GR(theta), n - 1)), 2};
  s.M.punctures = {ExactPoint::infinity()};
  s.basepoint = {1.0, 0.0};
  e.expected = expect(1, Rational(2) - Rational(1, n), Rational(2) - Rational(1, n));
  e.grid = square_grid(1.0, 21, {1.0, 0.0});
  return e;
}

CatalogEntry enneper(const Params& prm) {
  CatalogEntry e;
  e.key = "enneper-cousin-dual";
  e.params = prm;
  const Rational theta = get_rational(prm, "theta");
  if (sgn(theta) == 0) throw std::invalid_argument("theta must be nonzero");
  e.note = "Enneper cousin dual: g = tan(sqrt(theta) z), Q = theta dz^2, G = z on C";
  SurfaceData& s = e.data;
  s.name = e.key;
  const auto root = exact_sqrt(theta);
  const std::string k = root ? lit(*root) : "(sqrt " + lit(theta) + ")";
  s.g = ExprFunction::parse("(tan (* " + k + " z))");
  s.G = ExactMap(z_poly());
  s.Q = ExactDifferential{ExactMap::constant(GR(theta)), 2};
  s.M.punctures = {ExactPoint::infinity()};
  s.basepoint = {0.0, 0.0};
  // poles of g, where the connection is finite but g is not
  const Complex sq = std::sqrt(Complex(theta.get_d(), 0.0));
  for (int j = -4; j < 4; ++j) s.avoid.push_back((std::numbers::pi / 2 + j * std::numbers::pi) / sq);
  e.expected = expect(1, Rational(1), Rational(1));
  e.grid = square_grid(1.0, 21, {0.0, 0.0});
  return e;
}

CatalogEntry catenoid_cousin(const Params& prm) {
  CatalogEntry e;
  e.key = "catenoid-cousin";
  e.params = prm;
  const int n = get_positive_int(prm, "n");
  const Rational l = get_rational(prm, "l");
  if (sgn(l) <= 0 || l == n) throw std::invalid_argument("l must be positive and different from n");
  e.note = "catenoid cousin (n = 1) or its n-fold cover: g = c z^l, Q = (n^2 - l^2)/(4 z^2) dz^2, G = z^n on C minus 0";
  SurfaceData& s = e.data;
  s.name = e.key;
  Rational c = (Rational(n * n) - l * l) / (4 * l);
  c.canonicalize();
  Rational q = (Rational(n * n) - l * l) / 4;
  q.canonicalize();
  s.g = ExprFunction::parse("(* " + lit(c) + " (pow z " + lit(l) + "))");
  s.G = ExactMap(P::monomial(GR(1), n));
  s.Q = ExactDifferential{reduce(P::constant(GR(q)), P::monomial(GR(1), 2)), 2};
  s.M.punctures = {pt(GR(0)), ExactPoint::infinity()};
  s.basepoint = {1.0, 0.0};
  e.expected = expect(2, Rational(2), Rational(2));
  e.grid = polar_grid();
  return e;
}

CatalogEntry three_ended(const Params& prm) {
  CatalogEntry e;
  e.key = "prop27-surface";
  e.params = prm;
  const Rational theta = get_rational(prm, "theta");
  e.note = "G = ((z-1)/z)^3, Q = theta dz^2/(z(z-1)) on C minus {0, 1}; algebraic for theta in {-2, -6}";
  SurfaceData& s = e.data;
  s.name = e.key;
  const P zm1 = P::linear_factor(GR(1));
  s.G = reduce(zm1.pow(3), z_poly().pow(3));
  s.Q = ExactDifferential{reduce(P::constant(GR(theta)), z_poly() * zm1), 2};
  s.M.punctures = {pt(GR(0)), pt(GR(1)), ExactPoint::infinity()};
  s.basepoint = {-1.0, 0.0};
  e.expected = expect(2, Rational(2), Rational(7, 3));
  e.grid = square_grid(2.0, 21, {-1.0, 0.0}, 0.1);
  return e;
}

CatalogEntry elliptic(const Params& prm) {
  CatalogEntry e;
  e.key = "elliptic-catenoid";
  e.params = prm;
  const Rational mu = get_rational(prm, "mu");
  if (sgn(mu) == 0 || mu == 1 || mu == -1) throw std::invalid_argument("mu must avoid 0 and +-1");
  e.note = "elliptic catenoid: g = z^mu, Q = (1 - mu^2)/(4 z^2) dz^2, G = z on C minus 0; singular on |z| = 1";
  SurfaceData& s = e.data;
  s.name = e.key;
  s.ambient = Ambient::S31;
  Rational q = (1 - mu * mu) / 4;
  q.canonicalize();
  s.g = ExprFunction::parse("(pow z " + lit(mu) + ")");
  s.G = ExactMap(z_poly());
  s.Q = ExactDifferential{reduce(P::constant(GR(q)), P::monomial(GR(1), 2)), 2};
  s.M.punctures = {pt(GR(0)), ExactPoint::infinity()};
  s.basepoint = {1.0, 0.0};
  e.expected = expect(2, Rational(2), Rational(2));
  e.grid = polar_grid();
  return e;
}

CatalogEntry parabolic(const Params& prm) {
  CatalogEntry e;
  e.key = "parabolic-catenoid";
  e.params = prm;
  e.note = "parabolic catenoid: g = (log z + 1)/(log z - 1), Q = dz^2/(4 z^2), G = z on C minus 0";
  SurfaceData& s = e.data;
  s.name = e.key;
  s.ambient = Ambient::S31;
  s.g = ExprFunction::parse("(/ (+ (log z) 1) (- (log z) 1))");
  s.G = ExactMap(z_poly());
  s.Q = ExactDifferential{reduce(P::constant(GR(Rational(1, 4))), P::monomial(GR(1), 2)), 2};
  s.M.punctures = {pt(GR(0)), ExactPoint::infinity()};
  s.basepoint = {1.0, 0.0};
  s.avoid = {Complex(std::exp(1.0), 0.0)};
  e.expected = expect(2, Rational(2), Rational(2));
  e.grid = polar_grid(0.1);
  return e;
}

struct Builder {
  Params defaults;
  std::function<CatalogEntry(const Params&)> make;
};

const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> table = {
      {"voss-k3", {{}, [](const Params& p) { return voss(3, p); }}},
      {"voss-k4", {{}, [](const Params& p) { return voss(4, p); }}},
      {"power-n", {{{"n", "2"}, {"theta", "1"}}, power_n}},
      {"enneper-cousin-dual", {{{"theta", "1"}}, enneper}},
      {"catenoid-cousin", {{{"n", "1"}, {"l", "1/2"}}, catenoid_cousin}},
      {"prop27-surface", {{{"theta", "-2"}}, three_ended}},
      {"elliptic-catenoid", {{{"mu", "1/2"}}, elliptic}},
      {"parabolic-catenoid", {{}, parabolic}},
  };
  return table;
}

}  // namespace

std::vector<std::string> catalog_keys() {
  return {"voss-k3",         "voss-k4",        "power-n",           "enneper-cousin-dual",
          "catenoid-cousin", "prop27-surface", "elliptic-catenoid", "parabolic-catenoid"};
}

Params catalog_defaults(const std::string& key) {
  const auto it = builders().find(key);
  if (it == builders().end()) throw std::out_of_range("unknown surface: " + key);
  return it->second.defaults;
}

CatalogEntry catalog_lookup(const std::string& key, const Params& params) {
  const auto it = builders().find(key);
  if (it == builders().end()) throw std::out_of_range("unknown surface: " + key);
  Params merged = it->second.defaults;
  for (const auto& [k, v] : params) {
    if (!merged.count(k)) throw std::invalid_argument("surface " + key + " has no parameter " + k);
    merged[k] = v;
  }
  CatalogEntry e = it->second.make(merged);
  e.data.M.validate();
  return e;
}

std::vector<CatalogEntry> catalog_list() {
  std::vector<CatalogEntry> out;
  for (const auto& k : catalog_keys()) out.push_back(catalog_lookup(k));
  return out;
}

}  // namespace cmc1

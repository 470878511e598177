#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "cmc1/json_io.hpp"

using namespace cmc1;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(CMC1_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cmc1-test-" + std::to_string(::getpid()) + "-" + name);
}

}  // namespace

TEST(Catalog, ListsEveryKey) {
  const auto keys = catalog_keys();
  const auto list = catalog_list();
  ASSERT_EQ(keys.size(), list.size());
  for (std::size_t i = 0; i < keys.size(); ++i) EXPECT_EQ(list[i].key, keys[i]);
  for (const char* k : {"voss-k3", "voss-k4", "power-n", "enneper-cousin-dual", "catenoid-cousin", "prop27-surface",
                        "elliptic-catenoid", "parabolic-catenoid"})
    EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
}

TEST(Catalog, VossK4) {
  const auto e = catalog_lookup("voss-k4");
  EXPECT_EQ(e.data.G, ExactMap::identity());
  EXPECT_EQ(e.data.M.punctures.size(), 4u);
  EXPECT_TRUE(e.data.M.punctures.back().is_infinity());
  EXPECT_TRUE(e.data.universal_cover);
  const auto w = dual_omega(e.data.G, e.data.Q);
  EXPECT_EQ(w.coeff.num().degree(), 0);
  const auto poles = roots(w.coeff.den());
  ASSERT_EQ(poles.size(), 3u);
  for (const auto& p : poles) EXPECT_EQ(p.multiplicity, 1);
}

TEST(Catalog, ParabolicCatenoid) {
  const auto e = catalog_lookup("parabolic-catenoid");
  EXPECT_EQ(e.data.G, ExactMap::identity());
  EXPECT_EQ(e.data.Q.coeff, reduce(ExactPolynomial::constant(GaussRational(Rational(1, 4))), ExactPolynomial::monomial(GaussRational(1), 2)));
  ASSERT_TRUE(e.data.g.has_value());
  const Complex z(0.7, 0.4);
  const Complex L = std::log(z);
  EXPECT_LT(std::abs((*e.data.g)(z) - (L + 1.0) / (L - 1.0)), 1e-14);
  EXPECT_EQ(e.data.ambient, Ambient::S31);
}

TEST(Catalog, Errors) {
  EXPECT_THROW(catalog_lookup("unknown"), std::out_of_range);
  EXPECT_THROW(catalog_lookup("power-n", {{"n", "0"}}), std::invalid_argument);
  EXPECT_THROW(catalog_lookup("power-n", {{"bogus", "1"}}), std::invalid_argument);
  EXPECT_THROW(catalog_lookup("enneper-cousin-dual", {{"theta", "0"}}), std::invalid_argument);
  EXPECT_THROW(catalog_lookup("elliptic-catenoid", {{"mu", "1"}}), std::invalid_argument);
  EXPECT_THROW(catalog_lookup("catenoid-cousin", {{"n", "1"}, {"l", "1"}}), std::invalid_argument);
}

TEST(Analyze, EveryEntryPassesInBothModes) {
  for (const auto& e : catalog_list()) {
    for (const bool exact : {true, false}) {
      const auto r = analyze(e, exact);
      EXPECT_TRUE(r.pass()) << e.key << (exact ? " exact" : " float") << ": "
                            << (r.failures.empty() ? "" : r.failures.front());
      EXPECT_EQ(r.ramification.d_g(), e.expected.d_g) << e.key;
      EXPECT_EQ(r.ramification.nu, e.expected.nu) << e.key;
      EXPECT_EQ(r.ramification.bound, e.expected.bound) << e.key;
      EXPECT_LE(r.ramification.nu, Rational(4)) << e.key;
    }
  }
}

TEST(Analyze, ParametricExamples) {
  const auto p4 = analyze(catalog_lookup("power-n", {{"n", "4"}}));
  EXPECT_EQ(p4.ramification.nu, Rational(7, 4));
  EXPECT_EQ(p4.ramification.bound, Rational(7, 4));
  const auto c2 = analyze(catalog_lookup("catenoid-cousin", {{"n", "2"}}));
  EXPECT_EQ(c2.ramification.d_g(), 2);
  EXPECT_EQ(c2.ramification.nu, Rational(2));
  EXPECT_EQ(c2.ramification.bound, Rational(2));
  EXPECT_TRUE(c2.pass());
}

TEST(Analyze, MismatchedExpectationFails) {
  auto e = catalog_lookup("voss-k3");
  e.expected.nu = Rational(5, 2);
  const auto r = analyze(e);
  EXPECT_FALSE(r.pass());
}

TEST(Analyze, FacesGetTheFaceGate) {
  for (const char* key : {"elliptic-catenoid", "parabolic-catenoid"}) {
    const auto r = analyze(catalog_lookup(key));
    ASSERT_TRUE(r.face.has_value()) << key;
    EXPECT_TRUE(r.face->holds);
    EXPECT_TRUE(r.face->equality);
    EXPECT_LE(r.ramification.d_g(), r.face->max_exceptional);
  }
  EXPECT_FALSE(analyze(catalog_lookup("catenoid-cousin")).face.has_value());
}

TEST(Json, SurfaceRoundTrip) {
  for (const auto& e : catalog_list()) {
    const Json j = surface_to_json(e.data);
    const SurfaceData s = surface_from_json(Json::parse(j.dump()));
    EXPECT_EQ(s.name, e.data.name);
    EXPECT_EQ(s.ambient, e.data.ambient);
    EXPECT_EQ(s.G, e.data.G) << e.key;
    EXPECT_EQ(s.Q.coeff, e.data.Q.coeff) << e.key;
    EXPECT_EQ(s.M.punctures, e.data.M.punctures) << e.key;
    EXPECT_EQ(s.basepoint, e.data.basepoint);
    EXPECT_EQ(s.universal_cover, e.data.universal_cover);
    EXPECT_EQ(s.g.has_value(), e.data.g.has_value());
    if (s.g) EXPECT_LT(std::abs((*s.g)(Complex(0.3, 0.2)) - (*e.data.g)(Complex(0.3, 0.2))), 1e-14);
    EXPECT_EQ(surface_to_json(s), j);
  }
}

TEST(Json, BadSurfaceFiles) {
  EXPECT_THROW(surface_from_json(Json::parse(R"({"G": {"num": ["1"]}})")), std::invalid_argument);
  EXPECT_THROW(surface_from_json(Json::parse(R"({"punctures": ["0", "0"], "G": {"num": ["0","1"]}, "Q": {"num": ["1"]}})")),
               std::invalid_argument);
  EXPECT_THROW(surface_from_json(Json::parse(R"({"punctures": [], "G": {"num": ["0","1"], "den": ["0"]}, "Q": {"num": ["1"]}})")),
               std::domain_error);
}

TEST(Json, PathRoundTrip) {
  PathSpec p = PathSpec::loop(1.0, 0.0, 0.5);
  p.clearance = 0.01;
  const PathSpec q = path_from_json(path_to_json(p));
  ASSERT_EQ(q.segments.size(), p.segments.size());
  EXPECT_EQ(q.clearance, p.clearance);
  EXPECT_NEAR(q.length(), p.length(), 1e-15);
  EXPECT_THROW(path_from_json(Json::parse(R"({"segments": [{"spline": 1}]})")), std::invalid_argument);
}

TEST(Json, RationalsAreStrings) {
  const Json j = to_json(analyze(catalog_lookup("power-n", {{"n", "3"}})));
  EXPECT_EQ(j["ramification"]["nu_G"], "5/3");
  EXPECT_EQ(j["ramification"]["bound"], "5/3");
  EXPECT_EQ(j["pass"], true);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("catalog").code, 0);
  EXPECT_EQ(cli("analyze --surface voss-k3 --exact").code, 0);
  EXPECT_EQ(cli("analyze --surface nonexistent").code, 2);
  EXPECT_EQ(cli("analyze").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("analyze --surface power-n --param n").code, 2);
  EXPECT_EQ(cli("monodromy --surface catenoid-cousin --around 7").code, 2);
  // G = z^2 branches at 0 where Q has no zero
  const auto f = temp_file("degenerate.json");
  std::ofstream(f) << R"({"name": "degenerate", "punctures": ["inf"], "G": {"num": ["0", "0", "1"]}, "Q": {"num": ["1"]}})";
  EXPECT_EQ(cli("analyze --file " + f.string()).code, 1);
  std::filesystem::remove(f);
}

TEST(Cli, AnalyzeReportsExactValues) {
  const CliResult r = cli("analyze --surface voss-k4 --exact");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["ramification"]["D_G"], 4);
  EXPECT_EQ(j["ramification"]["nu_G"], "4");
  EXPECT_EQ(j["mode"], "exact");
}

TEST(Cli, DevelopMonodromyAndExport) {
  const CliResult d = cli(R"(develop --surface enneper-cousin-dual --path '{"segments": [{"line": [[0, 0], [1, 0]]}]}')");
  ASSERT_EQ(d.code, 0);
  const Json dj = Json::parse(d.out);
  EXPECT_LT(dj["det_drift"].get<double>(), 1e-10);

  const CliResult m = cli("monodromy --surface catenoid-cousin --around 0");
  ASSERT_EQ(m.code, 0);
  EXPECT_EQ(Json::parse(m.out)["class"], "SU2");

  const auto obj = temp_file("mesh.ply");
  const CliResult x = cli("export --surface elliptic-catenoid --format ply --out " + obj.string());
  ASSERT_EQ(x.code, 0);
  std::ifstream in(obj);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first, "ply");
  std::filesystem::remove(obj);
  EXPECT_EQ(cli("export --surface elliptic-catenoid --model ball --out " + obj.string()).code, 1);
}

TEST(Cli, ThetaScan) {
  const CliResult r = cli("frobenius --surface prop27-surface --theta-scan=-7:-1:1 --exact");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 7u);
  for (const auto& s : j) {
    const std::string t = s["theta"];
    EXPECT_EQ(s["vanishes"].get<bool>(), t == "-2" || t == "-6") << t;
  }
}

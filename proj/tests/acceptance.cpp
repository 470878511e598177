// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "cmc1/analyze.hpp"
#include "cmc1/catalog.hpp"
#include "cmc1/mesh.hpp"
#include "test_util.hpp"

using namespace cmc1;
using namespace cmc1::testing;

namespace {

constexpr double pi = std::numbers::pi;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > budget_s) c.require(false, "runtime " + std::to_string(dt) + " s over budget");
  std::cout << (c.ok ? "PASS" : "FAIL") << "  " << id << ". " << title << "  (" << std::fixed;
  std::cout.precision(3);
  std::cout << dt << " s)";
  if (!c.ok) std::cout << "  " << c.why.str();
  std::cout << std::endl;
  if (!c.ok) ++failures;
}

std::string triple(const RamificationReport& r) {
  return "(" + std::to_string(r.d_g()) + ", " + to_string(r.nu) + ", " + to_string(r.bound) + ")";
}

void expect_triple(Check& c, const CatalogEntry& e, int d, const Rational& nu, const Rational& bound) {
  const auto r = analyze(e, true);
  c.require(r.ramification.d_g() == d && r.ramification.nu == nu && r.ramification.bound == bound && r.pass(),
            e.key + " " + triple(r.ramification));
}

double drift_per_length(const MonodromyResult& m) { return m.drift_per_length; }

}  // namespace

int main() {
  criterion(1, "ramification table (exact)", 1.0, [](Check& c) {
    expect_triple(c, catalog_lookup("voss-k3"), 3, Rational(3), Rational(3));
    expect_triple(c, catalog_lookup("voss-k4"), 4, Rational(4), Rational(4));
    for (int n = 1; n <= 6; ++n) {
      const Rational v = Rational(2) - Rational(1, n);
      expect_triple(c, catalog_lookup("power-n", {{"n", std::to_string(n)}}), 1, v, v);
    }
    for (int n = 1; n <= 4; ++n)
      expect_triple(c, catalog_lookup("catenoid-cousin", {{"n", std::to_string(n)}}), 2, Rational(2), Rational(2));
  });

  criterion(2, "bound formula spot values", 1.0, [](Check& c) {
    c.require(osserman_bound(0, 3, 2, true).bound == Rational(5, 2), "(0,3,2) != 5/2");
    for (int n = 1; n <= 12; ++n)
      c.require(osserman_bound(0, 2, n, false).bound == Rational(2), "(0,2," + std::to_string(n) + ") != 2");
    const auto edge_alg = osserman_bound(0, 4, 1, true), edge_pseudo = osserman_bound(0, 4, 1, false);
    c.require(edge_alg.ratio == 1 && !edge_alg.valid, "algebraic flag accepts 1/R = 1");
    c.require(edge_pseudo.valid, "pseudo-algebraic flag rejects 1/R = 1");
  });

  criterion(3, "Frobenius data of the three-ended family", 5.0, [](Check& c) {
    int zeros = 0;
    for (int k = -100; k <= 0; ++k) {
      const Rational theta(k, 10);
      if (k == 0) continue;  // Q vanishes identically
      const SurfaceData d = catalog_lookup("prop27-surface", {{"theta", to_string(Rational(theta))}}).data;
      const auto r = e0_coefficient(d.G, d.Q);
      const auto rf = e0_coefficient(d.G.to_complex(), FloatDifferential{d.Q.coeff.to_complex(), 2});
      const bool special = k == -20 || k == -60;
      for (long p : {0L, 1L}) {
        const ExactPoint pt{GaussRational(p)};
        const auto ind = indicial(r, pt);
        c.require(ind.lambda1_exact && *ind.lambda1_exact == GaussRational(2) && *ind.lambda2_exact == GaussRational(-1),
                  "indicial roots at " + std::to_string(p) + " for theta " + to_string(theta));
        const GaussRational lt = log_term(r, pt);
        const double lf = std::abs(log_term(rf, FloatPoint(Complex(static_cast<double>(p)))));
        if (special) {
          c.require(lt.is_zero(), "log term nonzero at theta " + to_string(theta));
          zeros += lt.is_zero();
        } else {
          c.require(!lt.is_zero(), "log term vanishes at theta " + to_string(theta));
          c.require(lf > 1e-12, "float log term below 1e-12 at theta " + to_string(theta));
        }
      }
    }
    c.require(zeros == 4, "expected 4 vanishing log terms");
  });

  criterion(4, "dual total curvature", 30.0, [](Check& c) {
    std::vector<ExactMap> maps{ExactMap(Z), ExactMap(Z.pow(2)), ExactMap(Z.pow(3)), reduce(lin(1).pow(3), Z.pow(3))};
    std::mt19937_64 rng(4);
    for (int want : {4, 5}) {
      for (;;) {
        const ExactMap m = random_map(rng, want, 2);
        if (m.degree() == want) {
          maps.push_back(m);
          break;
        }
      }
    }
    for (const auto& G : maps) {
      const double ta = dual_total_curvature(G.to_complex()).value;
      c.require(std::abs(ta / (4 * pi) - G.degree()) < 0.01 * G.degree(), G.str() + " TA/4pi = " + std::to_string(ta / (4 * pi)));
    }
    const auto p = catalog_lookup("prop27-surface").data;
    const double ta = dual_total_curvature(p.G).value;
    c.require(std::abs(ta - 12 * pi) < 0.01 * 12 * pi, "three-ended TA " + std::to_string(ta));
  });

  criterion(5, "Riemann-Hurwitz and divisor consistency suites", 30.0, [](Check& c) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
      const ExactMap R = random_map(rng, 6);
      int total = 0;
      for (const auto& b : branch_points(R)) total += b.order;
      c.require(total == 2 * R.degree() - 2, "Riemann-Hurwitz fails for " + R.str());
    }
    for (int i = 0; i < 100; ++i) {
      const SurfaceData s = random_admissible(rng);
      DivisorData D;
      D.degree = s.G.degree();
      for (const auto& p : s.M.punctures) {
        const auto r = end_report(s.G, s.Q, p);
        D.ends.push_back({r.mu_sharp, r.d_j});
      }
      c.require(divisor_consistency(D, false).consistent, "divisor inconsistency for G = " + s.G.str());
    }
  });

  criterion(6, "Schwarzian identity", 10.0, [](Check& c) {
    for (const auto& [key, params] : std::vector<std::pair<std::string, Params>>{
             {"catenoid-cousin", {{"n", "2"}, {"l", "1/2"}}}, {"enneper-cousin-dual", {{"theta", "1"}}}}) {
      const auto r = verify_schwarz(catalog_lookup(key, params).data, 50, 1e-8, 6);
      c.require(r.pass && r.samples == 50, key + " residual " + std::to_string(r.max_residual));
    }
    std::mt19937_64 rng(6);
    int done = 0;
    while (done < 20) {
      const ExactMap h = random_map(rng, 4);
      const GaussRational a = random_gauss(rng, 3), b = random_gauss(rng, 3), cc = random_gauss(rng, 3), d = random_gauss(rng, 3);
      if ((a * d - b * cc).is_zero()) continue;
      c.require(schwarzian(mobius_after(a, b, cc, d, h)).coeff == schwarzian(h).coeff, "cocycle fails for " + h.str());
      ++done;
    }
  });

  criterion(7, "monodromy and period checks", 10.0, [](Check& c) {
    const auto cc = catalog_lookup("catenoid-cousin", {{"n", "1"}, {"l", "1/2"}}).data;
    const auto m0 = monodromy(cc, cc.basepoint, ExactPoint(GaussRational(0)));
    c.require(m0.unitary_defect < 1e-6 && m0.klass == MonodromyClass::SU2,
              "catenoid cousin defect " + std::to_string(m0.unitary_defect));
    const auto minf = monodromy(cc, cc.basepoint, ExactPoint::infinity());
    const auto en = catalog_lookup("enneper-cousin-dual").data;
    const auto me = loop_monodromy(en, PathSpec::loop(en.basepoint, Complex(0.3, 0.2), 0.5));
    c.require((me.M - Mat2::Identity()).norm() < 1e-8, "Enneper monodromy off identity");
    for (const auto* m : {&m0, &minf, &me})
      c.require(drift_per_length(*m) < 1e-8, "det drift per length " + std::to_string(drift_per_length(*m)));
  });

  criterion(8, "ambient invariants of meshes", 30.0, [](Check& c) {
    for (const auto& e : catalog_list()) {
      const SurfaceMesh m = build_mesh(e.data, e.grid);
      const double target = m.ambient == Ambient::H3 ? -1.0 : 1.0;
      double worst = 0.0;
      for (const auto& v : m.vertices) worst = std::max(worst, std::abs(v.lorentz_norm() - target));
      c.require(!m.empty() && worst < 1e-6, e.key + " quadric error " + std::to_string(worst));
      if (e.key == "catenoid-cousin") c.require(seam_mismatch(m) < 1e-6, "seam " + std::to_string(seam_mismatch(m)));
      if (e.key == "elliptic-catenoid") {
        const double step = std::log(e.grid.r1 / e.grid.r0) / (e.grid.rows() - 1);
        c.require(!m.singular_vertices.empty(), "no singular band");
        for (int v : m.singular_vertices)
          c.require(std::abs(std::log(std::abs(m.z[v]))) <= step + 1e-12, "singular vertex off |z| = 1");
      }
    }
  });

  criterion(9, "face inequality", 1.0, [](Check& c) {
    const auto f = face_inequality(0, 2, 1);
    c.require(f.holds && f.equality, "(0,2,1) not an equality");
    for (const auto& e : catalog_list()) {
      if (e.data.ambient != Ambient::S31) continue;
      const auto r = analyze(e, true);
      c.require(r.face.has_value() && r.face->equality, e.key + " face equality");
      c.require(r.face && r.ramification.d_g() <= r.face->max_exceptional && r.face->max_exceptional == 3,
                e.key + " D_G gate");
      c.require(r.ramification.d_g() == 2 && r.ramification.nu == 2, e.key + " " + triple(r.ramification));
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}

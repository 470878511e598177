#include <gtest/gtest.h>

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "cmc1/algebra.hpp"
#include "test_util.hpp"

using namespace cmc1;
using namespace cmc1::testing;

namespace {

std::vector<Complex> companion_eigenvalues(const FloatPolynomial& p) {
  const int n = p.degree();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -p.coeff(i) / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
  std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

int total_multiplicity(const std::vector<Root>& r) {
  int s = 0;
  for (const auto& x : r) s += x.multiplicity;
  return s;
}

int branch_total(const std::vector<BranchPoint>& b) {
  int s = 0;
  for (const auto& x : b) s += x.order;
  return s;
}

const Root* find_root(const std::vector<Root>& rs, Complex z, double tol = 1e-8) {
  for (const auto& r : rs)
    if (std::abs(r.value - z) < tol) return &r;
  return nullptr;
}

}  // namespace

TEST(Reduce, CancelsCommonFactors) {
  const ExactMap r = reduce(poly({-1, 0, 1}), poly({-1, 1}));
  EXPECT_EQ(r.num(), poly({1, 1}));
  EXPECT_EQ(r.den(), poly({1}));
}

TEST(Reduce, KeepsReducedInput) {
  const ExactMap r = reduce(Z, poly({1}));
  EXPECT_EQ(r.num(), Z);
  EXPECT_EQ(r.den(), poly({1}));
}

TEST(Reduce, CubeOfMoebiusHasDegreeThree) {
  const ExactMap r = reduce(lin(1).pow(3), Z.pow(3));
  EXPECT_EQ(r.num(), lin(1).pow(3));
  EXPECT_EQ(r.den(), Z.pow(3));
  EXPECT_EQ(r.degree(), 3);
}

TEST(Reduce, ZeroDenominatorIsAnError) {
  try {
    reduce(Z, ExactPolynomial{});
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_STREQ(e.what(), "zero map denominator");
  }
}

TEST(Reduce, FloatingModeCancelsNumerically) {
  const FloatMap r = reduce(poly({-1, 0, 1}).to_complex(), poly({-1, 1}).to_complex());
  EXPECT_EQ(r.degree(), 1);
  EXPECT_NEAR(std::abs(r.eval_complex(2.0) - 3.0), 0.0, 1e-12);
}

TEST(Eval, FiniteInfiniteAndPoles) {
  const ExactMap sq(Z.pow(2));
  EXPECT_EQ(eval(sq, ExactPoint(GaussRational(3))), ExactPoint(GaussRational(9)));
  EXPECT_TRUE(eval(sq, ExactPoint::infinity()).is_infinity());
  const ExactMap G = reduce(lin(1).pow(3), Z.pow(3));
  EXPECT_TRUE(eval(G, ExactPoint(GaussRational(0))).is_infinity());
  EXPECT_EQ(eval(G, ExactPoint::infinity()), ExactPoint(GaussRational(1)));
}

TEST(Derivative, Examples) {
  EXPECT_EQ(derivative(ExactMap(Z.pow(2))), ExactMap(poly({0, 2})));
  const ExactMap inv = reduce(poly({1}), Z);
  EXPECT_EQ(derivative(inv), reduce(poly({-1}), Z.pow(2)));
  for (int n = 1; n <= 6; ++n)
    EXPECT_EQ(derivative(ExactMap(Z.pow(n))), ExactMap(ExactPolynomial::monomial(GaussRational(n), n - 1)));
}

TEST(Roots, SimpleQuadratic) {
  for (const auto& rs : {roots(poly({-1, 0, 1})), roots(poly({-1, 0, 1}).to_complex())}) {
    ASSERT_EQ(rs.size(), 2u);
    ASSERT_NE(find_root(rs, 1.0), nullptr);
    ASSERT_NE(find_root(rs, -1.0), nullptr);
    EXPECT_EQ(find_root(rs, 1.0)->multiplicity, 1);
  }
}

TEST(Roots, TripleRootBothModes) {
  for (const auto& rs : {roots(lin(2).pow(3)), roots(lin(2).pow(3).to_complex())}) {
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_NEAR(std::abs(rs[0].value - 2.0), 0.0, 1e-9);
    EXPECT_EQ(rs[0].multiplicity, 3);
  }
}

TEST(Roots, MatchesCompanionMatrixOracle) {
  const FloatPolynomial p = poly({-1, 2, -2, 1}).to_complex();
  const auto rs = roots(p);
  const auto oracle = companion_eigenvalues(p);
  ASSERT_EQ(total_multiplicity(rs), 3);
  ASSERT_NE(find_root(rs, 1.0, 1e-10), nullptr);
  for (const auto& z : oracle) ASSERT_NE(find_root(rs, z, 1e-8), nullptr) << z;
  for (const auto& r : rs) EXPECT_LT(std::abs(p.eval_complex(r.value)), 1e-10);
  // conjugate pair (1 +- i sqrt 3)/2
  EXPECT_NE(find_root(rs, Complex(0.5, std::sqrt(3.0) / 2)), nullptr);
  EXPECT_NE(find_root(rs, Complex(0.5, -std::sqrt(3.0) / 2)), nullptr);
}

TEST(Roots, RandomPolynomialsAgreeWithCompanionMatrix) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const FloatPolynomial p = random_poly(rng, 2 + trial % 7, 5).to_complex();
    const auto rs = roots(p);
    ASSERT_EQ(total_multiplicity(rs), p.degree());
    for (const auto& z : companion_eigenvalues(p)) {
      ASSERT_NE(find_root(rs, z, 1e-6 * std::max(1.0, std::abs(z))), nullptr) << "trial " << trial;
    }
  }
}

TEST(Roots, ClusteredMultiplicities) {
  const ExactPolynomial p = lin(1).pow(5) * lin(-2).pow(2) * lin(GaussRational(0, 1));
  for (const auto& rs : {roots(p), roots(p.to_complex())}) {
    ASSERT_EQ(rs.size(), 3u);
    EXPECT_EQ(find_root(rs, 1.0, 1e-6)->multiplicity, 5);
    EXPECT_EQ(find_root(rs, -2.0, 1e-6)->multiplicity, 2);
    EXPECT_EQ(find_root(rs, Complex(0, 1), 1e-6)->multiplicity, 1);
  }
}

TEST(Roots, ExactMultiplicitiesOnRandomProducts) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> m(1, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const GaussRational a = random_gauss(rng, 4);
    GaussRational b = random_gauss(rng, 4);
    while (b == a) b = random_gauss(rng, 4);
    const int ma = m(rng), mb = m(rng);
    const auto rs = roots(lin(a).pow(ma) * lin(b).pow(mb));
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(find_root(rs, a.to_complex())->multiplicity, ma);
    EXPECT_EQ(find_root(rs, b.to_complex())->multiplicity, mb);
  }
}

TEST(Roots, IterationBudgetFailureCarriesResidual) {
  RootOptions o;
  o.max_iterations = 1;
  std::mt19937_64 rng(3);
  try {
    aberth_roots(random_poly(rng, 12, 9).to_complex(), o);
    FAIL() << "expected non-convergence";
  } catch (const RootFindingError& e) {
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(VanishingOrder, ExactAndFloating) {
  const ExactPolynomial p = lin(3).pow(4) * lin(1);
  EXPECT_EQ(vanishing_order(p, GaussRational(3)), 4);
  EXPECT_EQ(vanishing_order(p, GaussRational(2)), 0);
  EXPECT_EQ(vanishing_order(p.to_complex(), 3.0), 4);
}

TEST(LocalMultiplicity, Examples) {
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(local_multiplicity(ExactMap(Z.pow(n)), ExactPoint(GaussRational(0))), n);
  EXPECT_EQ(local_multiplicity(ExactMap(Z.pow(2)), ExactPoint::infinity()), 2);
  const ExactMap G = reduce(lin(1).pow(3), Z.pow(3));
  EXPECT_EQ(local_multiplicity(G, ExactPoint(GaussRational(1))), 3);
  EXPECT_EQ(local_multiplicity(G, ExactPoint(GaussRational(0))), 3);
  EXPECT_EQ(local_multiplicity(G, ExactPoint::infinity()), 1);
  EXPECT_EQ(local_multiplicity(G.to_complex(), FloatPoint(1.0)), 3);
  EXPECT_THROW(local_multiplicity(ExactMap::constant(GaussRational(2)), ExactPoint(GaussRational(0))),
               std::domain_error);
}

TEST(LocalMultiplicity, ChartSymmetryAtInfinity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const ExactMap R = random_map(rng, 5);
    EXPECT_EQ(local_multiplicity(R, ExactPoint::infinity()),
              local_multiplicity(chart_at_infinity(R), ExactPoint(GaussRational(0))));
  }
}

TEST(Preimages, Examples) {
  const ExactMap sq(Z.pow(2));
  auto p1 = preimages(sq, ExactPoint(GaussRational(1)));
  ASSERT_EQ(p1.size(), 2u);
  for (const auto& p : p1) {
    EXPECT_EQ(p.multiplicity, 1);
    EXPECT_NEAR(std::abs(std::abs(p.point.value()) - 1.0), 0.0, 1e-12);
  }
  auto p0 = preimages(sq, ExactPoint(GaussRational(0)));
  ASSERT_EQ(p0.size(), 1u);
  EXPECT_EQ(p0[0].multiplicity, 2);
  auto pinf = preimages(sq, ExactPoint::infinity());
  ASSERT_EQ(pinf.size(), 1u);
  EXPECT_TRUE(pinf[0].point.is_infinity());
  EXPECT_EQ(pinf[0].multiplicity, 2);
}

TEST(Preimages, MultiplicitiesSumToDegreeAndEvaluateBack) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const ExactMap R = random_map(rng, 5);
    const GaussRational w = random_gauss(rng, 3);
    int total = 0;
    for (const auto& p : preimages(R, ExactPoint(w))) {
      total += p.multiplicity;
      if (p.point.is_infinity()) continue;
      EXPECT_LT(std::abs(R.eval_complex(p.point.value()) - w.to_complex()), 1e-8 * std::max(1.0, std::abs(w.to_complex())));
    }
    EXPECT_EQ(total, R.degree());
  }
}

TEST(BranchPoints, Examples) {
  auto b2 = branch_points(ExactMap(Z.pow(2)));
  ASSERT_EQ(b2.size(), 2u);
  EXPECT_EQ(branch_total(b2), 2);
  for (int n = 2; n <= 6; ++n) {
    auto b = branch_points(ExactMap(Z.pow(n)));
    ASSERT_EQ(b.size(), 2u);
    for (const auto& x : b) {
      EXPECT_EQ(x.order, n - 1);
      EXPECT_TRUE(x.point.is_infinity() || std::abs(x.point.value()) < 1e-12);
    }
  }
  auto b3 = branch_points(reduce(lin(1).pow(3), Z.pow(3)));
  ASSERT_EQ(b3.size(), 2u);
  EXPECT_EQ(branch_total(b3), 4);
  for (const auto& x : b3) {
    ASSERT_FALSE(x.point.is_infinity());
    EXPECT_EQ(x.order, 2);
    const Complex z = x.point.value();
    EXPECT_TRUE(std::abs(z) < 1e-9 || std::abs(z - 1.0) < 1e-9);
  }
}

TEST(BranchPoints, RiemannHurwitzOnRandomMaps) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const ExactMap R = random_map(rng, 6);
    EXPECT_EQ(branch_total(branch_points(R)), 2 * R.degree() - 2) << R.str();
  }
}

TEST(BranchPoints, MoebiusInvariance) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const ExactMap R = random_map(rng, 4);
    GaussRational a = random_gauss(rng, 3), b = random_gauss(rng, 3), c = random_gauss(rng, 3), d = random_gauss(rng, 3);
    if ((a * d - b * c).is_zero()) continue;
    const ExactMap T = mobius_after(a, b, c, d, R);
    EXPECT_EQ(T.degree(), R.degree());
    auto bR = branch_points(R), bT = branch_points(T);
    ASSERT_EQ(bR.size(), bT.size());
    for (const auto& x : bR) {
      bool found = false;
      for (const auto& y : bT) found = found || (chordal_distance(x.point, y.point) < 1e-7 && x.order == y.order);
      EXPECT_TRUE(found) << R.str();
    }
  }
}

#include "cmc1/surface_data.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cmc1 {

std::string to_string(Ambient a) { return a == Ambient::H3 ? "H3" : "S31"; }

Ambient ambient_from_string(const std::string& s) {
  if (s == "H3") return Ambient::H3;
  if (s == "S31") return Ambient::S31;
  throw std::invalid_argument("unknown ambient '" + s + "' (expected H3 or S31)");
}

template <class S>
int MeroDifferential<S>::order_at(const SpherePoint<S>& p) const {
  if (coeff.is_zero()) throw std::domain_error("order of the zero differential");
  if (p.is_infinity()) return cmc1::order_at(coeff, p) - 2 * weight;
  return cmc1::order_at(coeff, p);
}

template <class S>
MeroDifferential<S> MeroDifferential<S>::chart_at_infinity() const {
  using Poly = Polynomial<S>;
  if (coeff.is_zero()) return *this;
  const int n = coeff.degree();
  S sign = ScalarTraits<S>::from_long(weight % 2 == 0 ? 1 : -1);
  Poly num = sign * coeff.num().reversed(n);
  Poly den = coeff.den().reversed(n) * Poly::monomial(ScalarTraits<S>::from_long(1), 2 * weight);
  return {reduce(num, den), weight};
}

template <class S>
MeroDifferential<S> hopf(const RationalMap<S>& g, const MeroDifferential<S>& omega) {
  if (omega.weight != 1) throw std::invalid_argument("hopf expects a weight-1 form");
  return {omega.coeff * derivative(g), 2};
}

Complex hopf_at(const ExprFunction& g, Complex omega_coeff, Complex z, const BranchState& ref) {
  return omega_coeff * g.jet<1>(z, ref).derivative(1);
}

template <class S>
MeroDifferential<S> dual_omega(const RationalMap<S>& G, const MeroDifferential<S>& Q) {
  if (Q.weight != 2) throw std::invalid_argument("dual_omega expects a weight-2 form");
  const RationalMap<S> dG = derivative(G);
  if (dG.is_zero()) throw std::domain_error("dG vanishes identically");
  return {-(Q.coeff / dG), 1};
}

template <class S>
MeroDifferential<S> schwarzian(const RationalMap<S>& h) {
  const RationalMap<S> d1 = derivative(h);
  if (d1.is_zero()) throw std::domain_error("Schwarzian of a constant map");
  const RationalMap<S> L = derivative(d1) / d1;
  const S half = ScalarTraits<S>::from_long(1) / ScalarTraits<S>::from_long(2);
  return {derivative(L) - scale(half, L * L), 2};
}

SchwarzResidual verify_schwarz(const SurfaceData& data, int samples, double tol, std::uint64_t seed) {
  if (!data.g) throw std::invalid_argument("verify_schwarz needs a secondary Gauss map");
  const FloatMap SG = schwarzian(data.G).coeff.to_complex();
  const FloatMap Q = data.Q.coeff.to_complex();

  std::vector<Complex> avoid;
  for (const auto& p : data.M.punctures)
    if (!p.is_infinity()) avoid.push_back(p.value().to_complex());
  for (const Root& r : roots(data.G.den())) avoid.push_back(r.value);
  for (const Root& r : roots(wronskian(data.G))) avoid.push_back(r.value);
  for (const Root& r : roots(data.Q.coeff.den())) avoid.push_back(r.value);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> area(0.25 * 0.25, 2.0 * 2.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  SchwarzResidual out;
  const int max_attempts = 100 * std::max(samples, 1);
  for (int attempt = 0; out.samples < samples && attempt < max_attempts; ++attempt) {
    const Complex z = std::polar(std::sqrt(area(rng)), angle(rng));
    bool near = false;
    for (Complex a : avoid) near = near || std::abs(z - a) < 0.05;
    if (near) {
      ++out.resampled;
      continue;
    }
    Complex residual;
    try {
      residual = schwarzian_at(*data.g, z) - SG.eval_complex(z) - 2.0 * Q.eval_complex(z);
    } catch (const std::domain_error&) {
      ++out.resampled;
      continue;
    }
    if (!std::isfinite(std::abs(residual))) {
      ++out.resampled;
      continue;
    }
    out.max_residual = std::max(out.max_residual, std::abs(residual));
    ++out.samples;
  }
  if (out.samples < samples) throw std::runtime_error("verify_schwarz could not place enough sample points");
  out.pass = out.max_residual < tol;
  return out;
}

EndReport end_report(const ExactMap& G, const ExactDifferential& Q, const ExactPoint& p) {
  if (Q.is_zero()) throw std::domain_error("Hopf differential vanishes identically");
  EndReport r;
  r.end = p.approx();
  r.label = p.str();
  r.mu_sharp = local_multiplicity(G, p) - 1;
  r.d_j = Q.order_at(p);
  r.pole_order_omega_sharp = r.mu_sharp - r.d_j;

  // The same number read off omega# directly; a pole of G of order k adds
  // a zero of order 2k to omega#.
  const ExactDifferential w = dual_omega(G, Q);
  const int g_pole = std::max(0, -order_at(G, p));
  if (-w.order_at(p) + 2 * g_pole != r.pole_order_omega_sharp)
    throw std::logic_error("end order bookkeeping mismatch at " + p.str());

  r.complete = r.pole_order_omega_sharp >= 1;
  r.algebraic = r.pole_order_omega_sharp >= 2;
  r.regular = true;
  return r;
}

namespace {

ExactPolynomial strip_point(ExactPolynomial f, const GaussRational& p) {
  const ExactPolynomial lin = ExactPolynomial::linear_factor(p);
  while (f.degree() > 0 && f(p).is_zero()) f = divmod(f, lin).first;
  return f;
}

ExactPolynomial strip_punctures(ExactPolynomial f, const PuncturedSphere<GaussRational>& M) {
  for (const auto& p : M.punctures)
    if (!p.is_infinity()) f = strip_point(std::move(f), p.value());
  return f;
}

std::string where(const ExactPolynomial& f) {
  std::ostringstream os;
  bool first = true;
  for (const Root& r : roots(f)) {
    os << (first ? "" : ", ") << "z~" << r.value.real() << (r.value.imag() < 0 ? "" : "+") << r.value.imag() << "i";
    first = false;
  }
  return os.str();
}

}  // namespace

// ord Q = branching order of G off the ends is the statement that
// Q / (dz^2 W) with W = P'R - PR' has neither zeros nor poles on M.
NondegeneracyReport nondegeneracy_check(const ExactMap& G, const ExactDifferential& Q,
                                        const PuncturedSphere<GaussRational>& M) {
  NondegeneracyReport rep;
  if (G.is_constant()) {
    rep.pass = false;
    rep.violations.push_back("G is constant");
    return rep;
  }
  if (Q.is_zero()) {
    rep.pass = false;
    rep.violations.push_back("Q vanishes identically");
    return rep;
  }
  const ExactPolynomial W = wronskian(G);
  const ExactMap ratio = reduce(Q.coeff.num(), Q.coeff.den() * W);
  const ExactPolynomial excess = strip_punctures(ratio.num(), M);
  const ExactPolynomial deficit = strip_punctures(ratio.den(), M);
  if (excess.degree() > 0) rep.violations.push_back("ord Q exceeds the branching order of G at " + where(excess));
  if (deficit.degree() > 0) rep.violations.push_back("ord Q is below the branching order of G at " + where(deficit));

  // Zeros of omega# of order exactly 2k at poles of G of order k.
  const ExactDifferential w = dual_omega(G, Q);
  const auto pole_factors = square_free_decomposition(G.den());
  for (std::size_t i = 0; i < pole_factors.size(); ++i) {
    const ExactPolynomial f = strip_punctures(pole_factors[i], M);
    if (f.degree() <= 0) continue;
    const int k = static_cast<int>(i) + 1;
    const auto [quot, rem] = divmod(w.coeff.num(), f.pow(2 * k));
    if (!rem.is_zero() || gcd(quot, f).degree() > 0)
      rep.violations.push_back("omega# does not vanish to order " + std::to_string(2 * k) + " at the poles " +
                               where(f));
  }

  const ExactPoint inf = ExactPoint::infinity();
  bool inf_is_end = false;
  for (const auto& p : M.punctures) inf_is_end = inf_is_end || p.is_infinity();
  if (!inf_is_end) {
    const int branch = local_multiplicity(G, inf) - 1;
    const int q = Q.order_at(inf);
    if (q != branch)
      rep.violations.push_back("at infinity ord Q = " + std::to_string(q) + " but G branches to order " +
                               std::to_string(branch));
    const int g_pole = std::max(0, -order_at(G, inf));
    if (w.order_at(inf) != 2 * g_pole)
      rep.violations.push_back("at infinity omega# has order " + std::to_string(w.order_at(inf)) + ", expected " +
                               std::to_string(2 * g_pole));
  }
  rep.pass = rep.violations.empty();
  return rep;
}

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                          0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                            0.4786286704993665, 0.2369268850561891};

struct Chart {
  FloatPolynomial P, R, W;
  double density(Complex z) const {
    const double p = std::norm(P.eval_complex(z)), r = std::norm(R.eval_complex(z));
    const double s = p + r;
    return 4.0 * std::norm(W.eval_complex(z)) / (s * s);
  }
};

struct Cell {
  double r0, r1, t0, t1;
};

double cell_integral(const Chart& c, const Cell& cell) {
  const double hr = 0.5 * (cell.r1 - cell.r0), mr = 0.5 * (cell.r1 + cell.r0);
  const double ht = 0.5 * (cell.t1 - cell.t0), mt = 0.5 * (cell.t1 + cell.t0);
  double acc = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) {
    const double r = mr + hr * kNodes[i];
    double row = 0.0;
    for (std::size_t j = 0; j < kNodes.size(); ++j) row += kWeights[j] * c.density(std::polar(r, mt + ht * kNodes[j]));
    acc += kWeights[i] * r * row;
  }
  return acc * hr * ht;
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

struct Refiner {
  const Chart& chart;
  int max_depth;
  std::vector<double> leaves;
  double unresolved = 0.0;
  std::ostringstream trace;

  void refine(const Cell& cell, double whole, double tol, int depth) {
    const double rm = 0.5 * (cell.r0 + cell.r1), tm = 0.5 * (cell.t0 + cell.t1);
    const std::array<Cell, 4> kids = {Cell{cell.r0, rm, cell.t0, tm}, Cell{rm, cell.r1, cell.t0, tm},
                                      Cell{cell.r0, rm, tm, cell.t1}, Cell{rm, cell.r1, tm, cell.t1}};
    std::array<double, 4> parts;
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) sum += parts[i] = cell_integral(chart, kids[i]);
    const double err = std::abs(sum - whole);
    if (err <= tol || depth >= max_depth) {
      if (err > tol) {
        unresolved += err;
        trace << "depth " << depth << " r=[" << cell.r0 << "," << cell.r1 << "] t=[" << cell.t0 << "," << cell.t1
              << "] err " << err << "\n";
      }
      for (double p : parts) leaves.push_back(p);
      return;
    }
    for (std::size_t i = 0; i < 4; ++i) refine(kids[i], parts[i], 0.5 * tol, depth + 1);
  }
};

}  // namespace

template <class S>
CurvatureResult dual_total_curvature(const RationalMap<S>& G, const QuadratureSpec& spec) {
  if (G.is_constant()) throw std::domain_error("dual total curvature of a constant map");
  const FloatMap charts[2] = {G.to_complex(), chart_at_infinity(G).to_complex()};
  const double total_tol = spec.rel_tol * 4.0 * std::numbers::pi * G.degree();
  const int cells0 = spec.initial_r * spec.initial_theta;
  CurvatureResult out;
  std::vector<double> chart_values;
  std::ostringstream trace;
  double unresolved = 0.0;
  for (const FloatMap& m : charts) {
    const Chart chart{m.num(), m.den(), wronskian(m)};
    Refiner ref{chart, spec.max_depth, {}, 0.0, {}};
    for (int i = 0; i < spec.initial_r; ++i)
      for (int j = 0; j < spec.initial_theta; ++j) {
        const Cell cell{static_cast<double>(i) / spec.initial_r, static_cast<double>(i + 1) / spec.initial_r,
                        2.0 * std::numbers::pi * j / spec.initial_theta,
                        2.0 * std::numbers::pi * (j + 1) / spec.initial_theta};
        ref.refine(cell, cell_integral(chart, cell), 0.5 * total_tol / cells0, 0);
      }
    chart_values.push_back(pairwise_sum(ref.leaves, 0, ref.leaves.size()));
    out.cells += static_cast<int>(ref.leaves.size());
    unresolved += ref.unresolved;
    trace << ref.trace.str();
  }
  if (unresolved > total_tol)
    throw std::runtime_error("dual total curvature quadrature did not converge; unresolved cells:\n" + trace.str());
  out.value = chart_values[0] + chart_values[1];
  out.sign_note = "nonnegative integral of the pulled-back sphere area; a negative sign convention is sometimes quoted";
  return out;
}

#define CMC1_INSTANTIATE(S)                                                                   \
  template struct MeroDifferential<S>;                                                        \
  template MeroDifferential<S> hopf(const RationalMap<S>&, const MeroDifferential<S>&);       \
  template MeroDifferential<S> dual_omega(const RationalMap<S>&, const MeroDifferential<S>&); \
  template MeroDifferential<S> schwarzian(const RationalMap<S>&);                             \
  template CurvatureResult dual_total_curvature(const RationalMap<S>&, const QuadratureSpec&);

CMC1_INSTANTIATE(Complex)
CMC1_INSTANTIATE(GaussRational)

#undef CMC1_INSTANTIATE

}  // namespace cmc1

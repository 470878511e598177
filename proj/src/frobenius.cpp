#include "cmc1/frobenius.hpp"

#include <cmath>
#include <stdexcept>

namespace cmc1 {

std::string to_string(DiffClass c) {
  switch (c) {
    case DiffClass::PositiveInteger: return "positive-integer";
    case DiffClass::RealNonInteger: return "real-non-integer";
    case DiffClass::Other: return "other";
  }
  return "other";
}

std::string to_string(Classification::Kind k) {
  switch (k) {
    case Classification::Kind::CaseI: return "case-i";
    case Classification::Kind::CaseII: return "case-ii";
    case Classification::Kind::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

/// Neumaier-compensated complex sum; exact mode just adds.
template <class S>
class Accumulator {
 public:
  void add(const S& x) {
    if constexpr (ScalarTraits<S>::exact) {
      sum_ += x;
    } else {
      add_part(re_, cre_, x.real());
      add_part(im_, cim_, x.imag());
    }
  }
  S value() const {
    if constexpr (ScalarTraits<S>::exact) {
      return sum_;
    } else {
      return {re_ + cre_, im_ + cim_};
    }
  }

 private:
  static void add_part(double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  S sum_ = ScalarTraits<S>::from_long(0);
  double re_ = 0.0, im_ = 0.0, cre_ = 0.0, cim_ = 0.0;
};

/// r moved so that p sits at the origin (w = 1/z for p = infinity, where
/// r dz^2 becomes r(1/w) w^-4 dw^2).
template <class S>
RationalMap<S> centered(const RationalMap<S>& r, const SpherePoint<S>& p) {
  if (p.is_infinity()) return MeroDifferential<S>{r, 2}.chart_at_infinity().coeff;
  const S one = ScalarTraits<S>::from_long(1), zero = ScalarTraits<S>::from_long(0);
  return mobius_before(r, one, p.value(), zero, one);
}

/// Pole order of r at 0 and the first n + 1 coefficients of z^2 r(z).
template <class S>
int local_series(const RationalMap<S>& r, int n, std::vector<S>& q) {
  q.assign(static_cast<std::size_t>(n) + 1, ScalarTraits<S>::from_long(0));
  if (r.is_zero()) return 0;
  int vn = 0, vd = 0;
  if constexpr (ScalarTraits<S>::exact) {
    vn = r.num().valuation();
    vd = r.den().valuation();
  } else {
    vn = vanishing_order(r.num(), Complex{});
    vd = vanishing_order(r.den(), Complex{});
  }
  const int order = vd - vn;
  if (order > 2) return order;
  const auto& N = r.num().coeffs();
  const auto& D = r.den().coeffs();
  auto at = [](const std::vector<S>& c, int k) {
    return k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : ScalarTraits<S>::from_long(0);
  };
  // s = (N/z^vn) / (D/z^vd) as a power series; z^2 r = z^(2 - order) s.
  const int shift = 2 - order;
  const int len = n + 1 - shift;
  std::vector<S> s(static_cast<std::size_t>(std::max(len, 0)), ScalarTraits<S>::from_long(0));
  const S d0 = at(D, vd);
  for (int k = 0; k < len; ++k) {
    S acc = at(N, vn + k);
    for (int j = 1; j <= k; ++j) acc -= at(D, vd + j) * s[static_cast<std::size_t>(k - j)];
    s[static_cast<std::size_t>(k)] = acc / d0;
  }
  for (int k = 0; k < len; ++k) q[static_cast<std::size_t>(k + shift)] = s[static_cast<std::size_t>(k)];
  return order;
}

}  // namespace

template <class S>
E0Coefficient<S> e0_coefficient(const RationalMap<S>& G, const MeroDifferential<S>& Q) {
  if (G.is_constant()) throw std::domain_error("constant hyperbolic Gauss map");
  if (Q.weight != 2) throw std::invalid_argument("Q must be a weight-2 form");
  E0Coefficient<S> e;
  const S half = ScalarTraits<S>::from_long(1) / ScalarTraits<S>::from_long(2);
  e.r = scale(half, schwarzian(G).coeff) + Q.coeff;
  if (e.r.is_zero()) return e;
  for (const Root& root : roots(e.r.den())) {
    e.singular_points.push_back({FloatPoint(root.value), root.multiplicity});
    if (root.multiplicity > 2)
      e.flags.push_back("irregular singular point (pole of order " + std::to_string(root.multiplicity) + ") near z=" +
                        FloatPoint(root.value).str());
  }
  const int at_inf = -(order_at(e.r, SpherePoint<S>::infinity()) - 4);
  if (at_inf > 0) {
    e.singular_points.push_back({FloatPoint::infinity(), at_inf});
    if (at_inf > 2)
      e.flags.push_back("irregular singular point (pole of order " + std::to_string(at_inf) + ") at infinity");
  }
  return e;
}

template <class S>
FrobeniusReport<S> indicial(const E0Coefficient<S>& e, const SpherePoint<S>& p) {
  FrobeniusReport<S> rep;
  rep.point = p.str();
  std::vector<S> q;
  rep.pole_order = std::max(0, local_series(centered(e.r, p), 0, q));
  if (rep.pole_order > 2) throw std::domain_error("irregular singular point at " + p.str());
  rep.c_minus2 = q[0];

  const S one = ScalarTraits<S>::from_long(1), two = ScalarTraits<S>::from_long(2);
  const S disc = one - ScalarTraits<S>::from_long(4) * rep.c_minus2;
  if constexpr (ScalarTraits<S>::exact) {
    if (auto s = disc.exact_sqrt()) {
      rep.lambda1_exact = (one + *s) / two;
      rep.lambda2_exact = (one - *s) / two;
      rep.lambda1 = rep.lambda1_exact->to_complex();
      rep.lambda2 = rep.lambda2_exact->to_complex();
      if (s->is_real() && sgn(s->real()) > 0 && s->real().get_den() == 1) {
        rep.diff_class = DiffClass::PositiveInteger;
        rep.resonance = static_cast<int>(s->real().get_num().get_si());
      } else if (s->is_real() && sgn(s->real()) > 0) {
        rep.diff_class = DiffClass::RealNonInteger;
      }
    } else {
      const Complex root = std::sqrt(disc.to_complex());
      rep.lambda1 = (1.0 + root) / 2.0;
      rep.lambda2 = (1.0 - root) / 2.0;
      if (disc.is_real() && sgn(disc.real()) > 0) rep.diff_class = DiffClass::RealNonInteger;
    }
  } else {
    const Complex s = std::sqrt(disc);
    rep.lambda1 = (1.0 + s) / 2.0;
    rep.lambda2 = (1.0 - s) / 2.0;
    rep.lambda1_exact = rep.lambda1;
    rep.lambda2_exact = rep.lambda2;
    const bool real = std::abs(disc.imag()) <= 1e-12 * std::max(1.0, std::abs(disc));
    if (real && disc.real() > 0.0) {
      const double root = std::sqrt(disc.real());
      const double nearest = std::round(root);
      if (nearest >= 1.0 && std::abs(root - nearest) < 1e-9) {
        rep.diff_class = DiffClass::PositiveInteger;
        rep.resonance = static_cast<int>(nearest);
      } else {
        rep.diff_class = DiffClass::RealNonInteger;
      }
    }
  }
  return rep;
}

template <class S>
S log_term(const E0Coefficient<S>& e, const SpherePoint<S>& p) {
  const FrobeniusReport<S> rep = indicial(e, p);
  if (rep.diff_class != DiffClass::PositiveInteger) throw std::domain_error("no integer resonance at " + p.str());
  const int N = rep.resonance;
  std::vector<S> q;
  local_series(centered(e.r, p), N, q);

  // z^2 u'' + q(z) u = 0 with u = sum a_m z^(m + lambda2):
  // I(m + lambda2) a_m = -sum_{j=1..m} q_j a_{m-j}, I(s) = s(s-1) + q_0.
  const S lambda2 = (ScalarTraits<S>::from_long(1) - ScalarTraits<S>::from_long(N)) / ScalarTraits<S>::from_long(2);
  std::vector<S> a(static_cast<std::size_t>(N), ScalarTraits<S>::from_long(0));
  a[0] = ScalarTraits<S>::from_long(1);
  for (int m = 1; m < N; ++m) {
    Accumulator<S> acc;
    for (int j = 1; j <= m; ++j) acc.add(q[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(m - j)]);
    const S s = ScalarTraits<S>::from_long(m) + lambda2;
    const S indicial_value = s * (s - ScalarTraits<S>::from_long(1)) + q[0];
    a[static_cast<std::size_t>(m)] = -acc.value() / indicial_value;
  }
  Accumulator<S> c;
  for (int j = 1; j <= N; ++j) c.add(q[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(N - j)]);
  return c.value();
}

template <class S>
FrobeniusReport<S> frobenius_report(const E0Coefficient<S>& e, const SpherePoint<S>& p) {
  FrobeniusReport<S> rep = indicial(e, p);
  if (rep.diff_class == DiffClass::PositiveInteger) rep.log_term = log_term(e, p);
  return rep;
}

Classification classify_reducibility(const SurfaceData& data) {
  Classification c;
  const auto& ends = data.M.punctures;
  if (data.M.genus != 0) c.failures.push_back("genus must be 0");
  if (ends.size() < 2) c.failures.push_back("at least two ends are required");
  bool has_inf = false;
  for (const auto& p : ends) has_inf = has_inf || p.is_infinity();
  if (!has_inf) c.failures.push_back("the last end must be infinity");

  const NondegeneracyReport nd = nondegeneracy_check(data.G, data.Q, data.M);
  for (const auto& v : nd.violations) c.failures.push_back("nondegeneracy: " + v);
  for (const auto& p : ends) {
    const EndReport er = end_report(data.G, data.Q, p);
    if (er.d_j < -2) c.failures.push_back("d_j = " + std::to_string(er.d_j) + " < -2 at " + er.label);
    if (er.pole_order_omega_sharp < 2)
      c.failures.push_back("omega# pole order mu# - d_j = " + std::to_string(er.pole_order_omega_sharp) + " at " +
                           er.label);
  }

  const E0Coefficient<GaussRational> e = e0_coefficient(data.G, data.Q);
  std::vector<int> non_integer, nonzero_log, other;
  for (std::size_t j = 0; j < ends.size(); ++j) {
    if (ends[j].is_infinity()) continue;
    FrobeniusReport<GaussRational> rep;
    try {
      rep = frobenius_report(e, ends[j]);
    } catch (const std::domain_error& ex) {
      c.failures.push_back(ex.what());
      continue;
    }
    if (rep.lambda1 == rep.lambda2) c.failures.push_back("repeated indicial root at " + rep.point);
    if (rep.diff_class == DiffClass::RealNonInteger) non_integer.push_back(static_cast<int>(j));
    if (rep.diff_class == DiffClass::Other) other.push_back(static_cast<int>(j));
    if (rep.log_term && !rep.log_term->is_zero()) nonzero_log.push_back(static_cast<int>(j));
    c.reports.push_back(std::move(rep));
  }
  for (int j : other) c.failures.push_back("exponent difference is not real at " + ends[static_cast<std::size_t>(j)].str());
  for (int j : nonzero_log) c.failures.push_back("log term nonzero at " + ends[static_cast<std::size_t>(j)].str());
  if (non_integer.size() > 1) c.failures.push_back("more than one end with a real non-integer exponent difference");
  if (!c.failures.empty()) return c;
  if (non_integer.empty()) {
    c.kind = Classification::Kind::CaseI;
  } else {
    c.kind = Classification::Kind::CaseII;
    c.special_end = non_integer.front();
  }
  return c;
}

std::vector<ThetaSample> theta_scan(const std::function<SurfaceData(const Rational&)>& family, const Rational& a,
                                    const Rational& b, const Rational& step) {
  if (sgn(step) <= 0) throw std::invalid_argument("theta step must be positive");
  if (b < a) throw std::invalid_argument("empty theta range");
  std::vector<ThetaSample> out;
  for (Rational theta = a; theta <= b; theta += step) {
    theta.canonicalize();
    ThetaSample s;
    s.theta = theta;
    const SurfaceData data = family(theta);
    if (data.Q.is_zero()) {
      s.admissible = false;
      s.note = "Q vanishes identically; outside the family";
    }
    const auto exact = e0_coefficient(data.G, data.Q);
    const auto floating = e0_coefficient(data.G.to_complex(), FloatDifferential{data.Q.coeff.to_complex(), 2});
    bool any = false, all_zero = true;
    for (const auto& p : data.M.punctures) {
      if (p.is_infinity()) continue;
      if (indicial(exact, p).diff_class != DiffClass::PositiveInteger) continue;
      any = true;
      const GaussRational c = log_term(exact, p);
      all_zero = all_zero && c.is_zero();
      s.log_terms.push_back(c);
      s.float_magnitudes.push_back(std::abs(log_term(floating, FloatPoint(p.value().to_complex()))));
    }
    s.vanishes = any && all_zero;
    out.push_back(std::move(s));
  }
  return out;
}

#define CMC1_INSTANTIATE(S)                                                                        \
  template E0Coefficient<S> e0_coefficient(const RationalMap<S>&, const MeroDifferential<S>&);     \
  template FrobeniusReport<S> indicial(const E0Coefficient<S>&, const SpherePoint<S>&);            \
  template S log_term(const E0Coefficient<S>&, const SpherePoint<S>&);                             \
  template FrobeniusReport<S> frobenius_report(const E0Coefficient<S>&, const SpherePoint<S>&);

CMC1_INSTANTIATE(Complex)
CMC1_INSTANTIATE(GaussRational)

#undef CMC1_INSTANTIATE

}  // namespace cmc1

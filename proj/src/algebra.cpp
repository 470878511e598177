#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cmc1/algebra.hpp"

namespace cmc1 {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Value and derivative of p at z, plus the running-error bound
/// sum |c_k| |z|^k used as a backward-error yardstick.
struct HornerResult {
  Complex value;
  Complex slope;
  double magnitude;
};

HornerResult horner(const std::vector<Complex>& c, Complex z) {
  Complex v{}, dv{};
  double m = 0.0;
  const double az = std::abs(z);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dv = dv * z + v;
    v = v * z + *it;
    m = m * az + std::abs(*it);
  }
  return {v, dv, m};
}

/// Taylor coefficients of p at a together with the magnitude bound
/// sum_k |c_k| C(k,j) max(1,|a|)^(k-j) of each one. Using max(1,|a|) keeps
/// the yardstick at the size of p itself near the origin.
void taylor_with_scale(const FloatPolynomial& p, Complex a, std::vector<Complex>& t, std::vector<double>& scale) {
  const auto& c = p.coeffs();
  const std::size_t n = c.size();
  t = c;
  std::vector<double> m(n);
  for (std::size_t k = 0; k < n; ++k) m[k] = std::abs(c[k]);
  const double aa = std::max(1.0, std::abs(a));
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k) {
      t[k - 1] += a * t[k];
      m[k - 1] += aa * m[k];
    }
  scale = std::move(m);
}

Complex newton_polish(const FloatPolynomial& p, Complex z, int steps) {
  const auto& c = p.coeffs();
  for (int s = 0; s < steps; ++s) {
    HornerResult h = horner(c, z);
    if (h.slope == Complex{} || std::abs(h.value) <= kEps * h.magnitude) break;
    Complex next = z - h.value / h.slope;
    if (std::abs(horner(c, next).value) >= std::abs(h.value)) break;
    z = next;
  }
  return z;
}

/// Polishes the centroid of an m-point cluster on the simple root of
/// p^(m-1), then checks that p and its first (m-1) derivatives vanish there.
bool taylor_confirms(const FloatPolynomial& p, Complex c, int multiplicity, double tol) {
  FloatPolynomial q = p;
  for (int k = 0; k < multiplicity - 1; ++k) q = q.derivative();
  c = newton_polish(q, c, 8);
  std::vector<Complex> t;
  std::vector<double> scale;
  taylor_with_scale(p, c, t, scale);
  for (int j = 0; j < multiplicity && j < static_cast<int>(t.size()); ++j)
    if (std::abs(t[static_cast<std::size_t>(j)]) > tol * scale[static_cast<std::size_t>(j)]) return false;
  return true;
}

struct Cluster {
  std::vector<Complex> members;
  Complex centroid() const {
    Complex s{};
    for (auto m : members) s += m;
    return s / static_cast<double>(members.size());
  }
};

std::vector<Root> cluster_roots(const FloatPolynomial& p, const std::vector<Complex>& raw, const RootOptions& opts) {
  const std::size_t n = raw.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(raw[i]), std::abs(raw[j])});
      if (std::abs(raw[i] - raw[j]) <= opts.cluster_radius * scale) parent[find(i)] = find(j);
    }

  std::vector<Cluster> clusters;
  {
    std::vector<long> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = find(i);
      if (slot[r] < 0) {
        slot[r] = static_cast<long>(clusters.size());
        clusters.push_back({});
      }
      clusters[static_cast<std::size_t>(slot[r])].members.push_back(raw[i]);
    }
  }

  // Borderline merges on a geometric ladder of radii. At each rung the
  // single-linkage components are merged only if the first (m - 1) Taylor
  // coefficients vanish at the component centroid.
  for (double r = 10.0 * opts.cluster_radius; r <= opts.borderline_radius * (1.0 + 1e-12) && clusters.size() > 1;
       r *= 10.0) {
    const std::size_t nc = clusters.size();
    std::vector<std::size_t> up(nc);
    std::iota(up.begin(), up.end(), 0);
    auto root_of = [&](std::size_t i) {
      while (up[i] != i) i = up[i] = up[up[i]];
      return i;
    };
    std::vector<Complex> centers(nc);
    for (std::size_t i = 0; i < nc; ++i) centers[i] = clusters[i].centroid();
    for (std::size_t i = 0; i < nc; ++i)
      for (std::size_t j = i + 1; j < nc; ++j) {
        const double scale = std::max({1.0, std::abs(centers[i]), std::abs(centers[j])});
        if (std::abs(centers[i] - centers[j]) <= r * scale) up[root_of(i)] = root_of(j);
      }
    std::vector<Cluster> next;
    std::vector<bool> used(nc, false);
    for (std::size_t i = 0; i < nc; ++i) {
      if (used[i]) continue;
      Cluster group;
      std::vector<std::size_t> parts;
      for (std::size_t j = i; j < nc; ++j)
        if (!used[j] && root_of(j) == root_of(i)) {
          parts.push_back(j);
          group.members.insert(group.members.end(), clusters[j].members.begin(), clusters[j].members.end());
        }
      const bool accept = parts.size() == 1 ||
                          taylor_confirms(p, group.centroid(), static_cast<int>(group.members.size()),
                                          opts.derivative_tolerance);
      for (std::size_t j : parts) used[j] = true;
      if (accept) {
        next.push_back(std::move(group));
      } else {
        for (std::size_t j : parts) next.push_back(clusters[j]);
      }
    }
    clusters = std::move(next);
  }

  std::vector<Root> out;
  out.reserve(clusters.size());
  for (const auto& cl : clusters) {
    const int m = static_cast<int>(cl.members.size());
    Complex c = cl.centroid();
    if (m == 1) {
      c = newton_polish(p, c, 3);
    } else {
      // The (m-1)-th derivative has a simple root at an m-fold root.
      FloatPolynomial q = p;
      for (int k = 0; k < m - 1; ++k) q = q.derivative();
      c = newton_polish(q, c, 3);
    }
    out.push_back({c, m});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

}  // namespace

std::vector<Complex> aberth_roots(const FloatPolynomial& p0, const RootOptions& opts) {
  if (p0.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<Complex> result;
  int v = 0;
  while (p0.coeffs()[static_cast<std::size_t>(v)] == Complex{}) ++v;
  result.assign(static_cast<std::size_t>(v), Complex{});

  std::vector<Complex> c(p0.coeffs().begin() + v, p0.coeffs().end());
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return result;
  const Complex lead = c.back();
  for (auto& x : c) x /= lead;
  if (n == 1) {
    result.push_back(-c[0]);
    return result;
  }

  const Complex center = -c[static_cast<std::size_t>(n - 1)] / static_cast<double>(n);
  double radius = 0.0;
  for (int k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(c[static_cast<std::size_t>(k)]), 1.0 / (n - k)));
  radius = std::max(radius, 1e-3);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = center + 0.5 * radius * std::polar(1.0, 2.0 * std::numbers::pi * k / n + 0.4);

  std::vector<bool> done(static_cast<std::size_t>(n), false);
  bool all_done = false;
  for (int it = 0; it < opts.max_iterations && !all_done; ++it) {
    all_done = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      HornerResult h = horner(c, z[i]);
      if (std::abs(h.value) <= 8.0 * kEps * h.magnitude) {
        done[i] = true;
        continue;
      }
      Complex repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      Complex step;
      if (h.slope == Complex{}) {
        step = Complex(1e-3 * radius, 1e-3 * radius);
      } else {
        const Complex ratio = h.value / h.slope;
        step = ratio / (1.0 - ratio * repulsion);
      }
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) done[i] = true;
      all_done = false;
    }
  }
  if (!all_done) {
    double residual = 0.0;
    for (auto zi : z) {
      HornerResult h = horner(c, zi);
      residual = std::max(residual, std::abs(h.value) / std::max(h.magnitude, 1e-300));
    }
    std::ostringstream msg;
    msg << "root finder did not converge after " << opts.max_iterations << " iterations (relative residual "
        << residual << ")";
    throw RootFindingError(msg.str(), residual);
  }
  result.insert(result.end(), z.begin(), z.end());
  return result;
}

std::vector<Root> roots(const FloatPolynomial& p, const RootOptions& opts) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  if (p.degree() == 0) return {};
  return cluster_roots(p, aberth_roots(p, opts), opts);
}

std::vector<Root> roots(const ExactPolynomial& p, const RootOptions& opts) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<Root> out;
  const auto factors = square_free_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.degree() <= 0) continue;
    const int multiplicity = static_cast<int>(i) + 1;
    if (f.degree() == 1) {
      out.push_back({(-f.coeff(0) / f.coeff(1)).to_complex(), multiplicity});
      continue;
    }
    const FloatPolynomial fc = f.to_complex();
    for (Complex r : aberth_roots(fc, opts)) out.push_back({newton_polish(fc, r, 3), multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return out;
}

int vanishing_order(const FloatPolynomial& p, Complex a, double tol) {
  if (p.is_zero()) throw std::domain_error("vanishing order of the zero polynomial");
  std::vector<Complex> t;
  std::vector<double> scale;
  taylor_with_scale(p, a, t, scale);
  int k = 0;
  while (k < static_cast<int>(t.size()) - 1 &&
         std::abs(t[static_cast<std::size_t>(k)]) <= tol * scale[static_cast<std::size_t>(k)])
    ++k;
  return k;
}

int vanishing_order(const ExactPolynomial& p, const GaussRational& a) {
  if (p.is_zero()) throw std::domain_error("vanishing order of the zero polynomial");
  return p.taylor_shift(a).valuation();
}

template <class S>
int order_at(const RationalMap<S>& R, const SpherePoint<S>& z) {
  if (R.is_zero()) throw std::domain_error("order of the zero map is undefined");
  if (z.is_infinity()) return R.den().degree() - R.num().degree();
  return vanishing_order(R.num(), z.value()) - vanishing_order(R.den(), z.value());
}

template <class S>
int local_multiplicity(const RationalMap<S>& R, const SpherePoint<S>& z0) {
  if (R.is_constant()) throw std::domain_error("local multiplicity of a constant map");
  if (z0.is_infinity()) return local_multiplicity(chart_at_infinity(R), SpherePoint<S>(ScalarTraits<S>::from_long(0)));
  const S& a = z0.value();
  const int pole = vanishing_order(R.den(), a);
  if (pole > 0) return pole;
  const S w = R.num()(a) / R.den()(a);
  return vanishing_order(R.num() - w * R.den(), a);
}

template <class S>
std::vector<Preimage> preimages(const RationalMap<S>& R, const SpherePoint<S>& w) {
  if (R.is_constant()) throw std::domain_error("preimages of a constant map");
  const int d = R.degree();
  const Polynomial<S> poly = w.is_infinity() ? R.den() : R.num() - w.value() * R.den();
  std::vector<Preimage> out;
  for (const Root& r : roots(poly)) out.push_back({FloatPoint(r.value), r.multiplicity});
  const int deficit = d - poly.degree();
  if (deficit > 0) out.push_back({FloatPoint::infinity(), deficit});
  return out;
}

template <class S>
std::vector<BranchPoint> branch_points(const RationalMap<S>& R) {
  if (R.is_constant()) throw std::domain_error("branch points of a constant map");
  std::vector<BranchPoint> out;
  const Polynomial<S> w = wronskian(R);
  for (const Root& r : roots(w)) out.push_back({FloatPoint(r.value), r.multiplicity});
  const int at_infinity = local_multiplicity(R, SpherePoint<S>::infinity()) - 1;
  if (at_infinity > 0) out.push_back({FloatPoint::infinity(), at_infinity});
  return out;
}

#define CMC1_INSTANTIATE(S)                                                           \
  template int order_at(const RationalMap<S>&, const SpherePoint<S>&);                \
  template int local_multiplicity(const RationalMap<S>&, const SpherePoint<S>&);      \
  template std::vector<Preimage> preimages(const RationalMap<S>&, const SpherePoint<S>&); \
  template std::vector<BranchPoint> branch_points(const RationalMap<S>&);

CMC1_INSTANTIATE(Complex)
CMC1_INSTANTIATE(GaussRational)

#undef CMC1_INSTANTIATE

}  // namespace cmc1

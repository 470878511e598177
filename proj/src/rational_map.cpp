#include <algorithm>
#include <cmath>
#include <limits>

#include "cmc1/algebra.hpp"

namespace cmc1 {

double chordal_distance(const FloatPoint& a, const FloatPoint& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const Complex za = a.value(), zb = b.value();
  return 2.0 * std::abs(za - zb) / (std::sqrt(1.0 + std::norm(za)) * std::sqrt(1.0 + std::norm(zb)));
}

template <class S>
void RationalMap<S>::normalize_den() {
  if (den_.is_zero()) throw std::domain_error("zero map denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(ScalarTraits<S>::from_long(1));
    return;
  }
  S lead = den_.leading();
  if (lead == ScalarTraits<S>::from_long(1)) return;
  S inv = ScalarTraits<S>::from_long(1) / lead;
  num_ = inv * num_;
  den_ = inv * den_;
}

template <class S>
Complex RationalMap<S>::eval_complex(Complex z) const {
  Complex d = den_.eval_complex(z);
  Complex n = num_.eval_complex(z);
  if (d == Complex{}) return {std::numeric_limits<double>::infinity(), 0.0};
  return n / d;
}

namespace {

ExactMap reduce_exact(const ExactPolynomial& num, const ExactPolynomial& den) {
  if (den.is_zero()) throw std::domain_error("zero map denominator");
  if (num.is_zero()) return ExactMap();
  ExactPolynomial g = gcd(num, den);
  if (g.degree() == 0) return ExactMap::from_reduced(num, den);
  return ExactMap::from_reduced(divmod(num, g).first, divmod(den, g).first);
}

FloatMap reduce_float(FloatPolynomial num, FloatPolynomial den) {
  if (den.is_zero()) throw std::domain_error("zero map denominator");
  if (num.is_zero()) return FloatMap();
  if (den.degree() > 0 && num.degree() > 0) {
    for (const Root& r : roots(den)) {
      const int common = std::min(r.multiplicity, vanishing_order(num, r.value));
      for (int k = 0; k < common; ++k) {
        num = deflate(num, r.value);
        den = deflate(den, r.value);
      }
    }
  }
  return FloatMap::from_reduced(std::move(num), std::move(den));
}

}  // namespace

ExactMap reduce(const ExactPolynomial& num, const ExactPolynomial& den) {
  return reduce_exact(num, den);
}

FloatMap reduce(const FloatPolynomial& num, const FloatPolynomial& den) {
  return reduce_float(num, den);
}

template <class S>
SpherePoint<S> eval(const RationalMap<S>& R, const SpherePoint<S>& z) {
  using Traits = ScalarTraits<S>;
  if (z.is_infinity()) {
    const int dn = R.num().degree(), dd = R.den().degree();
    if (R.num().is_zero()) return SpherePoint<S>(Traits::from_long(0));
    if (dn > dd) return SpherePoint<S>::infinity();
    if (dn < dd) return SpherePoint<S>(Traits::from_long(0));
    return SpherePoint<S>(R.num().leading() / R.den().leading());
  }
  S d = R.den()(z.value());
  if constexpr (Traits::exact) {
    if (d.is_zero()) return SpherePoint<S>::infinity();
  } else {
    if (d == Complex{}) return SpherePoint<S>::infinity();
  }
  return SpherePoint<S>(R.num()(z.value()) / d);
}

template <class S>
Polynomial<S> wronskian(const RationalMap<S>& R) {
  return R.num().derivative() * R.den() - R.num() * R.den().derivative();
}

template <class S>
RationalMap<S> derivative(const RationalMap<S>& R) {
  return reduce(wronskian(R), R.den() * R.den());
}

template <class S>
RationalMap<S> operator+(const RationalMap<S>& a, const RationalMap<S>& b) {
  return reduce(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

template <class S>
RationalMap<S> operator-(const RationalMap<S>& a, const RationalMap<S>& b) {
  return reduce(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}

template <class S>
RationalMap<S> operator*(const RationalMap<S>& a, const RationalMap<S>& b) {
  return reduce(a.num() * b.num(), a.den() * b.den());
}

template <class S>
RationalMap<S> operator/(const RationalMap<S>& a, const RationalMap<S>& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero map");
  return reduce(a.num() * b.den(), a.den() * b.num());
}

template <class S>
RationalMap<S> operator-(const RationalMap<S>& a) {
  return RationalMap<S>::from_reduced(-a.num(), a.den());
}

template <class S>
RationalMap<S> scale(const S& c, const RationalMap<S>& a) {
  if constexpr (ScalarTraits<S>::exact) {
    if (c.is_zero()) return RationalMap<S>();
  } else {
    if (c == Complex{}) return RationalMap<S>();
  }
  return RationalMap<S>::from_reduced(c * a.num(), a.den());
}

template <class S>
RationalMap<S> mobius_after(const S& a, const S& b, const S& c, const S& d, const RationalMap<S>& R) {
  if (a * d - b * c == ScalarTraits<S>::from_long(0)) throw std::invalid_argument("degenerate Moebius transformation");
  return reduce(a * R.num() + b * R.den(), c * R.num() + d * R.den());
}

namespace {

/// q(z)^n p((a z + b)/(c z + d)) with q = c z + d and n >= deg p.
template <class S>
Polynomial<S> homogenized(const Polynomial<S>& p, int n, const Polynomial<S>& top, const Polynomial<S>& bottom) {
  Polynomial<S> acc;
  for (int k = 0; k <= p.degree(); ++k) {
    acc += p.coeff(k) * (top.pow(k) * bottom.pow(n - k));
  }
  return acc;
}

}  // namespace

template <class S>
RationalMap<S> mobius_before(const RationalMap<S>& R, const S& a, const S& b, const S& c, const S& d) {
  if (a * d - b * c == ScalarTraits<S>::from_long(0)) throw std::invalid_argument("degenerate Moebius transformation");
  const Polynomial<S> top({b, a});
  const Polynomial<S> bottom({d, c});
  const int n = R.degree();
  return reduce(homogenized(R.num(), n, top, bottom), homogenized(R.den(), n, top, bottom));
}

template <class S>
RationalMap<S> chart_at_infinity(const RationalMap<S>& R) {
  const int n = std::max(0, R.degree());
  if (R.is_zero()) return R;
  return RationalMap<S>::from_reduced(R.num().reversed(n), R.den().reversed(n));
}

#define CMC1_INSTANTIATE(S)                                                                         \
  template class RationalMap<S>;                                                                    \
  template SpherePoint<S> eval(const RationalMap<S>&, const SpherePoint<S>&);                       \
  template Polynomial<S> wronskian(const RationalMap<S>&);                                          \
  template RationalMap<S> derivative(const RationalMap<S>&);                                        \
  template RationalMap<S> operator+(const RationalMap<S>&, const RationalMap<S>&);                  \
  template RationalMap<S> operator-(const RationalMap<S>&, const RationalMap<S>&);                  \
  template RationalMap<S> operator*(const RationalMap<S>&, const RationalMap<S>&);                  \
  template RationalMap<S> operator/(const RationalMap<S>&, const RationalMap<S>&);                  \
  template RationalMap<S> operator-(const RationalMap<S>&);                                         \
  template RationalMap<S> scale(const S&, const RationalMap<S>&);                                   \
  template RationalMap<S> mobius_after(const S&, const S&, const S&, const S&, const RationalMap<S>&); \
  template RationalMap<S> mobius_before(const RationalMap<S>&, const S&, const S&, const S&, const S&); \
  template RationalMap<S> chart_at_infinity(const RationalMap<S>&);

CMC1_INSTANTIATE(Complex)
CMC1_INSTANTIATE(GaussRational)

#undef CMC1_INSTANTIATE

}  // namespace cmc1

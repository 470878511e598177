#include "cmc1/polynomial.hpp"

namespace cmc1 {

template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divmod(const Polynomial<S>& a, const Polynomial<S>& b) {
  using Traits = ScalarTraits<S>;
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<S>{}, a};
  std::vector<S> r = a.coeffs();
  const int db = b.degree();
  const S& lead = b.leading();
  std::vector<S> q(static_cast<std::size_t>(a.degree() - db) + 1, Traits::from_long(0));
  for (int k = a.degree(); k >= db; --k) {
    S t = r[static_cast<std::size_t>(k)] / lead;
    q[static_cast<std::size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(k - db + j);
      r[idx] = r[idx] - t * b.coeffs()[static_cast<std::size_t>(j)];
    }
    r[static_cast<std::size_t>(k)] = Traits::from_long(0);
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial<S>(std::move(q)), Polynomial<S>(std::move(r))};
}

template std::pair<FloatPolynomial, FloatPolynomial> divmod(const FloatPolynomial&, const FloatPolynomial&);
template std::pair<ExactPolynomial, ExactPolynomial> divmod(const ExactPolynomial&, const ExactPolynomial&);

ExactPolynomial make_monic(const ExactPolynomial& p) {
  if (p.is_zero()) return p;
  GaussRational inv = GaussRational(1) / p.leading();
  return inv * p;
}

ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

std::vector<ExactPolynomial> square_free_decomposition(const ExactPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("square-free decomposition of the zero polynomial");
  std::vector<ExactPolynomial> factors;
  if (p.degree() == 0) return factors;
  ExactPolynomial f = make_monic(p);
  ExactPolynomial fp = f.derivative();
  ExactPolynomial a = gcd(f, fp);
  ExactPolynomial b = divmod(f, a).first;
  ExactPolynomial c = divmod(fp, a).first;
  ExactPolynomial d = c - b.derivative();
  while (b.degree() > 0) {
    ExactPolynomial factor = gcd(b, d);
    factors.push_back(make_monic(factor));
    b = divmod(b, factor).first;
    c = divmod(d, factor).first;
    d = c - b.derivative();
  }
  while (!factors.empty() && factors.back().degree() == 0) factors.pop_back();
  return factors;
}

FloatPolynomial deflate(const FloatPolynomial& p, Complex a) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<Complex> q(c.size() - 1);
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    q[k] = acc;
    acc = c[k] + acc * a;
  }
  return FloatPolynomial(std::move(q));
}

ExactPolynomial to_exact(const FloatPolynomial& p) {
  std::vector<GaussRational> v;
  v.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) v.push_back(GaussRational::from_complex(x));
  return ExactPolynomial(std::move(v));
}

}  // namespace cmc1

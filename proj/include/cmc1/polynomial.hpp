#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmc1/gauss_rational.hpp"

namespace cmc1 {

/// Per-mode behaviour of polynomial coefficients. Exact mode compares with ==,
/// floating mode trims coefficients that are negligible next to the largest.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr double trim_tolerance = 1e-14;
  static Complex to_complex(const Complex& x) { return x; }
  static Complex from_long(long v) { return {static_cast<double>(v), 0.0}; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static bool is_exact_zero(const Complex& x) { return x == Complex{}; }
  static std::string str(const Complex& x) {
    return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
  }
};

template <>
struct ScalarTraits<GaussRational> {
  static constexpr bool exact = true;
  static Complex to_complex(const GaussRational& x) { return x.to_complex(); }
  static GaussRational from_long(long v) { return GaussRational(v); }
  static double magnitude(const GaussRational& x) { return std::abs(x.to_complex()); }
  static bool is_exact_zero(const GaussRational& x) { return x.is_zero(); }
  static std::string str(const GaussRational& x) { return x.str(); }
};

/// Univariate polynomial with coefficients in ascending degree order. The
/// empty coefficient list is the zero polynomial; otherwise the leading
/// coefficient is nonzero.
template <class S>
class Polynomial {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;

  Polynomial() = default;
  explicit Polynomial(std::vector<S> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Polynomial(std::initializer_list<S> coeffs) : c_(coeffs) { normalize(); }

  static Polynomial constant(S c) { return Polynomial(std::vector<S>{std::move(c)}); }
  static Polynomial monomial(S c, int k) {
    std::vector<S> v(static_cast<std::size_t>(k) + 1, Traits::from_long(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial identity() { return monomial(Traits::from_long(1), 1); }
  /// (z - a)
  static Polynomial linear_factor(const S& a) {
    return Polynomial(std::vector<S>{S(-a), Traits::from_long(1)});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Traits::from_long(0);
  }
  const S& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }

  S operator()(const S& z) const {
    S acc = Traits::from_long(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Complex eval_complex(Complex z) const {
    Complex acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + Traits::to_complex(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> d;
    d.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Traits::from_long(static_cast<long>(k)));
    return Polynomial(std::move(d));
  }

  /// Coefficients of p(z + a).
  Polynomial taylor_shift(const S& a) const {
    std::vector<S> v = c_;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t k = n - 1; k > i; --k) v[k - 1] = v[k - 1] + a * v[k];
    return Polynomial(std::move(v));
  }

  /// z^n p(1/z); requires n >= degree.
  Polynomial reversed(int n) const {
    if (n < degree()) throw std::invalid_argument("reversal degree below polynomial degree");
    std::vector<S> v(static_cast<std::size_t>(n) + 1, Traits::from_long(0));
    for (std::size_t k = 0; k < c_.size(); ++k) v[static_cast<std::size_t>(n) - k] = c_[k];
    return Polynomial(std::move(v));
  }

  /// Order of vanishing at z = 0 (the index of the first nonzero coefficient).
  int valuation() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has infinite valuation");
    int k = 0;
    while (Traits::is_exact_zero(c_[static_cast<std::size_t>(k)])) ++k;
    return k;
  }

  Polynomial<Complex> to_complex() const {
    std::vector<Complex> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(Traits::to_complex(x));
    return Polynomial<Complex>(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Traits::from_long(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Traits::from_long(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    normalize();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<S> v;
    v.reserve(a.c_.size());
    for (const auto& x : a.c_) v.push_back(-x);
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> v(a.c_.size() + b.c_.size() - 1, Traits::from_long(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const S& s, const Polynomial& p) {
    std::vector<S> v;
    v.reserve(p.c_.size());
    for (const auto& x : p.c_) v.push_back(s * x);
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative polynomial power");
    Polynomial result = constant(Traits::from_long(1)), base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      base = base * base;
      n >>= 1;
    }
    return result;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (Traits::is_exact_zero(c_[k])) continue;
      if (!s.empty()) s += " + ";
      s += Traits::str(c_[k]);
      if (k > 0) s += "*z^" + std::to_string(k);
    }
    return s;
  }

 private:
  void normalize() {
    if constexpr (Traits::exact) {
      while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    } else {
      double scale = 0.0;
      for (const auto& x : c_) scale = std::max(scale, std::abs(x));
      const double cut = scale * Traits::trim_tolerance;
      while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
    }
  }

  std::vector<S> c_;
};

using FloatPolynomial = Polynomial<Complex>;
using ExactPolynomial = Polynomial<GaussRational>;

/// Euclidean division a = q b + r with deg r < deg b.
template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divmod(const Polynomial<S>& a, const Polynomial<S>& b);

/// Monic greatest common divisor (exact mode only; floating inputs are
/// handled through root matching in reduce()).
ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b);

ExactPolynomial make_monic(const ExactPolynomial& p);

/// Yun's square-free decomposition: p = lc * prod_i factors[i]^(i+1), each
/// factor monic and square-free, pairwise coprime. Empty trailing factors are
/// dropped; interior ones are the constant 1.
std::vector<ExactPolynomial> square_free_decomposition(const ExactPolynomial& p);

/// Synthetic division by (z - a), discarding the remainder.
FloatPolynomial deflate(const FloatPolynomial& p, Complex a);

ExactPolynomial to_exact(const FloatPolynomial& p);

}  // namespace cmc1

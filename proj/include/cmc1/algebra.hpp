#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmc1/polynomial.hpp"

namespace cmc1 {

/// A point of the Riemann sphere: a finite scalar or the symbol infinity.
template <class S>
class SpherePoint {
 public:
  SpherePoint(S z) : v_(std::move(z)) {}  // NOLINT(google-explicit-constructor)
  static SpherePoint infinity() { return SpherePoint(); }

  bool is_infinity() const { return !v_.has_value(); }
  const S& value() const {
    if (!v_) throw std::logic_error("point at infinity has no finite value");
    return *v_;
  }
  SpherePoint<Complex> approx() const {
    if (!v_) return SpherePoint<Complex>::infinity();
    return SpherePoint<Complex>(ScalarTraits<S>::to_complex(*v_));
  }
  std::string str() const { return v_ ? ScalarTraits<S>::str(*v_) : std::string("inf"); }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) { return a.v_ == b.v_; }
  friend bool operator!=(const SpherePoint& a, const SpherePoint& b) { return !(a == b); }

 private:
  SpherePoint() = default;
  std::optional<S> v_;
};

using FloatPoint = SpherePoint<Complex>;
using ExactPoint = SpherePoint<GaussRational>;

/// Chordal distance on the sphere; 0 iff the points coincide.
double chordal_distance(const FloatPoint& a, const FloatPoint& b);

/// Reduced ratio num/den of polynomials; a meromorphic function on the sphere.
/// The denominator is kept monic.
template <class S>
class RationalMap {
 public:
  using Poly = Polynomial<S>;

  RationalMap() : RationalMap(Poly{}) {}
  /// Polynomial map p/1.
  RationalMap(Poly p) : num_(std::move(p)), den_(Poly::constant(ScalarTraits<S>::from_long(1))) {}  // NOLINT
  static RationalMap identity() { return RationalMap(Poly::identity()); }
  static RationalMap constant(S c) { return RationalMap(Poly::constant(std::move(c))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool is_zero() const { return num_.is_zero(); }

  RationalMap<Complex> to_complex() const { return RationalMap<Complex>::from_reduced(num_.to_complex(), den_.to_complex()); }

  /// Fast floating evaluation at a finite point (inf at poles).
  Complex eval_complex(Complex z) const;

  std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

  friend bool operator==(const RationalMap& a, const RationalMap& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Trusted constructor: caller guarantees coprime parts and a nonzero
  /// denominator. Used where reduction is known to be a no-op.
  static RationalMap from_reduced(Poly num, Poly den) {
    RationalMap r(std::move(num));
    r.den_ = std::move(den);
    r.normalize_den();
    return r;
  }

 private:
  void normalize_den();

  Poly num_;
  Poly den_;
};

using FloatMap = RationalMap<Complex>;
using ExactMap = RationalMap<GaussRational>;

struct Root {
  Complex value;
  int multiplicity = 1;
};

struct Preimage {
  FloatPoint point;
  int multiplicity = 1;
};

struct BranchPoint {
  FloatPoint point;
  int order = 1;  // multiplicity - 1
};

/// Thrown when simultaneous iteration fails to converge.
class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct RootOptions {
  int max_iterations = 500;
  double cluster_radius = 1e-7;
  /// Clusters up to this (relative) radius are merged only if the Taylor
  /// coefficients at the centroid confirm the multiplicity.
  double borderline_radius = 1e-2;
  double derivative_tolerance = 1e-11;
};

/// Reduce num/den to lowest terms. Throws std::domain_error("zero map
/// denominator") when den is the zero polynomial.
ExactMap reduce(const ExactPolynomial& num, const ExactPolynomial& den);
FloatMap reduce(const FloatPolynomial& num, const FloatPolynomial& den);

template <class S>
SpherePoint<S> eval(const RationalMap<S>& R, const SpherePoint<S>& z);

template <class S>
RationalMap<S> derivative(const RationalMap<S>& R);

template <class S>
RationalMap<S> operator+(const RationalMap<S>& a, const RationalMap<S>& b);
template <class S>
RationalMap<S> operator-(const RationalMap<S>& a, const RationalMap<S>& b);
template <class S>
RationalMap<S> operator*(const RationalMap<S>& a, const RationalMap<S>& b);
template <class S>
RationalMap<S> operator/(const RationalMap<S>& a, const RationalMap<S>& b);
template <class S>
RationalMap<S> operator-(const RationalMap<S>& a);
template <class S>
RationalMap<S> scale(const S& c, const RationalMap<S>& a);

/// Post-composition with the Moebius transformation w -> (a w + b)/(c w + d).
template <class S>
RationalMap<S> mobius_after(const S& a, const S& b, const S& c, const S& d, const RationalMap<S>& R);

/// Pre-composition R((a z + b)/(c z + d)).
template <class S>
RationalMap<S> mobius_before(const RationalMap<S>& R, const S& a, const S& b, const S& c, const S& d);

/// R(1/w) as a map in w (the chart at infinity).
template <class S>
RationalMap<S> chart_at_infinity(const RationalMap<S>& R);

/// Unclustered simultaneous-iteration (Aberth) roots, one entry per root.
std::vector<Complex> aberth_roots(const FloatPolynomial& p, const RootOptions& opts = {});

/// All roots with multiplicities. Floating mode clusters Aberth iterates;
/// exact mode uses square-free factorization so multiplicities are exact.
std::vector<Root> roots(const FloatPolynomial& p, const RootOptions& opts = {});
std::vector<Root> roots(const ExactPolynomial& p, const RootOptions& opts = {});

/// Order of vanishing of p at a (exact in exact mode, Taylor-coefficient
/// test in floating mode).
int vanishing_order(const FloatPolynomial& p, Complex a, double tol = 1e-9);
int vanishing_order(const ExactPolynomial& p, const GaussRational& a);

/// Signed order (zeros positive, poles negative) of R at a point; at infinity
/// this is deg den - deg num.
template <class S>
int order_at(const RationalMap<S>& R, const SpherePoint<S>& z);

template <class S>
int local_multiplicity(const RationalMap<S>& R, const SpherePoint<S>& z0);

template <class S>
std::vector<Preimage> preimages(const RationalMap<S>& R, const SpherePoint<S>& w);

template <class S>
std::vector<BranchPoint> branch_points(const RationalMap<S>& R);

/// The Wronskian P'Q - PQ' whose roots (with multiplicity) are the finite
/// branch points, including multiple poles.
template <class S>
Polynomial<S> wronskian(const RationalMap<S>& R);

}  // namespace cmc1

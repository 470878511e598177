#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cmc1 {

using Complex = std::complex<double>;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a plain decimal such as "-9.9" or "1.25e-3"
/// into an exact rational. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// The exact binary value of a finite double.
Rational rational_from_double(double x);

std::string to_string(const Rational& q);

/// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q);

/// An element of Q(i), stored as a pair of GMP rationals.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  /// Exact value of a floating complex number (both parts finite).
  static GaussRational from_complex(Complex z);
  /// Parses ["p/q", "r/s"]-style components.
  static GaussRational parse(std::string_view re, std::string_view im);
  /// Parses the str() form: "a", "bi", "a+bi", "a-bi" (a, b as in
  /// parse_rational; a lone "i" or "-i" is allowed).
  static GaussRational parse(std::string_view text);

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// Square root in Q(i) when one exists (principal: nonnegative real part).
  std::optional<GaussRational> exact_sqrt() const;

  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

}  // namespace cmc1

#include "cmc1/gauss_rational.hpp"

#include <cmath>
#include <stdexcept>

namespace cmc1 {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part)) throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      throw std::invalid_argument("bad decimal literal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
    digits = std::string(s);
  }
  Rational q(mpz_class(digits, 10));
  q *= pow10(exponent);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

GaussRational GaussRational::from_complex(Complex z) {
  return {rational_from_double(z.real()), rational_from_double(z.imag())};
}

GaussRational GaussRational::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational n = o.norm();
  Rational r = (re_ * o.re_ + im_ * o.im_) / n;
  Rational i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::optional<GaussRational> GaussRational::exact_sqrt() const {
  if (sgn(im_) == 0) {
    if (sgn(re_) >= 0) {
      if (auto r = cmc1::exact_sqrt(re_)) return GaussRational(*r);
      return std::nullopt;
    }
    if (auto r = cmc1::exact_sqrt(Rational(-re_))) return GaussRational(Rational(0), *r);
    return std::nullopt;
  }
  // (x + iy)^2 = re + i im  =>  x^2 = (re + |z|)/2, y = im / (2x)
  auto modulus = cmc1::exact_sqrt(norm());
  if (!modulus) return std::nullopt;
  Rational x2 = (re_ + *modulus) / 2;
  auto x = cmc1::exact_sqrt(x2);
  if (!x || sgn(*x) == 0) return std::nullopt;
  Rational y = im_ / (2 * *x);
  return GaussRational(*x, y);
}

GaussRational GaussRational::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty()) throw std::invalid_argument("empty complex number");
  if (t.back() != 'i') return GaussRational(parse_rational(t));
  t.pop_back();
  // split at the last sign that is not a leading sign or an exponent sign
  std::size_t cut = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  auto imag_part = [](std::string s) {
    if (s.empty() || s == "+") return Rational(1);
    if (s == "-") return Rational(-1);
    if (s.front() == '+') s.erase(0, 1);
    return parse_rational(s);
  };
  if (cut == std::string::npos) return {Rational(0), imag_part(t)};
  return {parse_rational(t.substr(0, cut)), imag_part(t.substr(cut))};
}

std::string GaussRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string s = sgn(re_) == 0 ? std::string() : re_.get_str();
  if (sgn(im_) > 0 && !s.empty()) s += "+";
  return s + im_.get_str() + "i";
}

}  // namespace cmc1

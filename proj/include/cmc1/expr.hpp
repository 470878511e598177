#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmc1/algebra.hpp"

namespace cmc1 {

/// Truncated Taylor series f(z0 + h) = sum_k c[k] h^k, k <= N.
template <int N>
struct Jet {
  std::array<Complex, N + 1> c{};

  static Jet constant(Complex v) {
    Jet j;
    j.c[0] = v;
    return j;
  }
  static Jet variable(Complex z0) {
    Jet j;
    j.c[0] = z0;
    if constexpr (N >= 1) j.c[1] = 1.0;
    return j;
  }

  Complex value() const { return c[0]; }
  /// k-th derivative at the expansion point.
  Complex derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[static_cast<std::size_t>(k)] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& x : a.c) x = -x;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= N; ++k)
      for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
    return r;
  }
  friend Jet operator*(Complex s, Jet a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.c[0] == Complex{}) throw std::domain_error("jet division by zero");
    Jet q;
    for (int k = 0; k <= N; ++k) {
      Complex acc = a.c[k];
      for (int j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
      q.c[k] = acc / b.c[0];
    }
    return q;
  }
};

template <int N>
Jet<N> exp(const Jet<N>& f) {
  Jet<N> e;
  e.c[0] = std::exp(f.c[0]);
  for (int k = 1; k <= N; ++k) {
    Complex acc{};
    for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * f.c[j] * e.c[k - j];
    e.c[k] = acc / static_cast<double>(k);
  }
  return e;
}

/// log f with the constant term fixed to log0 (a chosen branch of log f(z0)).
template <int N>
Jet<N> log_on_branch(const Jet<N>& f, Complex log0) {
  if (f.c[0] == Complex{}) throw std::domain_error("logarithm at zero");
  Jet<N> l;
  l.c[0] = log0;
  for (int k = 1; k <= N; ++k) {
    Complex acc = f.c[k];
    for (int j = 1; j < k; ++j) acc -= static_cast<double>(j) / k * l.c[j] * f.c[k - j];
    l.c[k] = acc / f.c[0];
  }
  return l;
}

template <int N>
Jet<N> tan(const Jet<N>& f) {
  Jet<N> s, co;
  s.c[0] = std::sin(f.c[0]);
  co.c[0] = std::cos(f.c[0]);
  for (int k = 1; k <= N; ++k) {
    Complex as{}, ac{};
    for (int j = 1; j <= k; ++j) {
      as += static_cast<double>(j) * f.c[j] * co.c[k - j];
      ac -= static_cast<double>(j) * f.c[j] * s.c[k - j];
    }
    s.c[k] = as / static_cast<double>(k);
    co.c[k] = ac / static_cast<double>(k);
  }
  return s / co;
}

/// Continuous imaginary parts of log at each multivalued node, indexed by
/// branch slot. An empty or short state means principal values.
using BranchState = std::vector<double>;

/// Immutable expression tree in the variable z.
///
/// Grammar (prefix): z | number | (+ e...) | (- e e) | (- e) | (* e...) |
/// (/ e e) | (neg e) | (^ e n) | (pow e e) | (log e) | (exp e) | (tan e) |
/// (sqrt e). A number is an integer, decimal or p/q, optionally followed by
/// i; a lone i is the imaginary unit. log, pow and sqrt are multivalued and
/// own one branch slot each.
class ExprFunction {
 public:
  struct Node;

  ExprFunction();
  static ExprFunction parse(std::string_view text);
  static ExprFunction variable();
  static ExprFunction from_rational(const ExactMap& R);

  std::string str() const;
  int branch_slots() const { return slots_; }
  bool multivalued() const { return slots_ > 0; }

  /// Principal-branch value.
  Complex operator()(Complex z) const { return eval(z, {}, nullptr); }
  /// Value on the branch closest to ref; the branch used is written to chosen.
  Complex eval(Complex z, const BranchState& ref, BranchState* chosen) const;
  template <int N>
  Jet<N> jet(Complex z, const BranchState& ref = {}, BranchState* chosen = nullptr) const;

  /// Exact rational map if the tree uses only field operations, integer
  /// powers and exact constants.
  std::optional<ExactMap> as_rational() const;

 private:
  explicit ExprFunction(std::shared_ptr<const Node> root);
  std::shared_ptr<const Node> root_;
  int slots_ = 0;
};

/// Schwarzian h'''/h' - 3/2 (h''/h')^2 of an expression at z.
Complex schwarzian_at(const ExprFunction& h, Complex z, const BranchState& ref = {});

}  // namespace cmc1

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmc1/expr.hpp"
#include "cmc1/ramify.hpp"

namespace cmc1 {

enum class Ambient { H3, S31 };

std::string to_string(Ambient a);
Ambient ambient_from_string(const std::string& s);

/// coeff(z) dz^weight; weight 1 for omega-type forms, 2 for Q-type.
template <class S>
struct MeroDifferential {
  RationalMap<S> coeff;
  int weight = 2;

  bool is_zero() const { return coeff.is_zero(); }
  /// Chart-aware order; at infinity dz = -w^-2 dw shifts by -2 weight.
  int order_at(const SpherePoint<S>& p) const;
  /// The same form written in the chart w = 1/z.
  MeroDifferential chart_at_infinity() const;
  Complex eval_complex(Complex z) const { return coeff.eval_complex(z); }
  std::string str() const { return "(" + coeff.str() + ") dz^" + std::to_string(weight); }
};

using ExactDifferential = MeroDifferential<GaussRational>;
using FloatDifferential = MeroDifferential<Complex>;

/// A Weierstrass package. g is optional (it need not be rational or even
/// single-valued); G and Q are always rational.
struct SurfaceData {
  std::string name;
  Ambient ambient = Ambient::H3;
  std::optional<ExprFunction> g;
  ExactMap G;
  ExactDifferential Q;
  PuncturedSphere<GaussRational> M;
  /// F(basepoint) = id for frame development.
  Complex basepoint{1.0, 0.0};
  /// True when the surface is only defined on the universal cover of M.
  bool universal_cover = false;
  /// Extra points that paths must avoid (zeros and poles of g, zeros of dg).
  std::vector<Complex> avoid;
};

struct EndReport {
  FloatPoint end = FloatPoint::infinity();
  std::string label;
  int mu_sharp = 0;
  int d_j = 0;
  int pole_order_omega_sharp = 0;
  bool complete = false;
  bool algebraic = false;
  bool regular = true;
};

struct NondegeneracyReport {
  bool pass = true;
  std::vector<std::string> violations;
};

struct SchwarzResidual {
  double max_residual = 0.0;
  int samples = 0;
  int resampled = 0;
  bool pass = false;
};

struct QuadratureSpec {
  double rel_tol = 1e-7;
  int max_depth = 12;
  int initial_r = 4;
  int initial_theta = 16;
};

struct CurvatureResult {
  double value = 0.0;  // nonnegative integral
  int cells = 0;
  std::string sign_note;
};

/// Q = omega dg for rational data.
template <class S>
MeroDifferential<S> hopf(const RationalMap<S>& g, const MeroDifferential<S>& omega);
/// Coefficient of omega dg at z for an expression g.
Complex hopf_at(const ExprFunction& g, Complex omega_coeff, Complex z, const BranchState& ref = {});

/// omega# = -Q/dG. Throws std::domain_error when dG vanishes identically.
template <class S>
MeroDifferential<S> dual_omega(const RationalMap<S>& G, const MeroDifferential<S>& Q);

/// S(h) dz^2. Throws std::domain_error for constant h.
template <class S>
MeroDifferential<S> schwarzian(const RationalMap<S>& h);

/// max |S(g) - S(G) - 2Q| over random samples from 0.25 <= |z| <= 2 kept
/// at distance >= 0.05 from punctures and singular points.
SchwarzResidual verify_schwarz(const SurfaceData& data, int samples, double tol, std::uint64_t seed);

EndReport end_report(const ExactMap& G, const ExactDifferential& Q, const ExactPoint& p);

NondegeneracyReport nondegeneracy_check(const ExactMap& G, const ExactDifferential& Q,
                                        const PuncturedSphere<GaussRational>& M);

/// Integral of 4|dG|^2/(1+|G|^2)^2 over the sphere, using the unit disc in
/// the z and w = 1/z charts. Throws std::runtime_error with a refinement
/// trace if the tolerance is not reached.
template <class S>
CurvatureResult dual_total_curvature(const RationalMap<S>& G, const QuadratureSpec& spec = {});

}  // namespace cmc1

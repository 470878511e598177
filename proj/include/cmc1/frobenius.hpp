#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cmc1/surface_data.hpp"

namespace cmc1 {

/// r(z) dz^2 = S(G)/2 + Q, the coefficient of u'' + r u = 0.
template <class S>
struct E0Coefficient {
  struct Singular {
    FloatPoint point = FloatPoint::infinity();
    int pole_order = 0;
  };
  RationalMap<S> r;
  std::vector<Singular> singular_points;
  /// Poles of order above 2 (irregular singular points).
  std::vector<std::string> flags;
};

enum class DiffClass { PositiveInteger, RealNonInteger, Other };
std::string to_string(DiffClass c);

template <class S>
struct FrobeniusReport {
  std::string point;
  int pole_order = 0;
  S c_minus2{};
  Complex lambda1, lambda2;
  /// Present when the discriminant 1 - 4 c_-2 has a square root in the
  /// scalar field (always in floating mode).
  std::optional<S> lambda1_exact, lambda2_exact;
  DiffClass diff_class = DiffClass::Other;
  int resonance = 0;  // lambda1 - lambda2 when a positive integer
  std::optional<S> log_term;
};

template <class S>
E0Coefficient<S> e0_coefficient(const RationalMap<S>& G, const MeroDifferential<S>& Q);

/// Throws std::domain_error("irregular singular point") for poles above 2.
template <class S>
FrobeniusReport<S> indicial(const E0Coefficient<S>& r, const SpherePoint<S>& p);

/// Obstruction to a log-free solution with exponent lambda2, normalized by
/// a_0 = 1. Throws std::domain_error("no integer resonance") unless
/// lambda1 - lambda2 is a positive integer.
template <class S>
S log_term(const E0Coefficient<S>& r, const SpherePoint<S>& p);

/// indicial() plus log_term() when resonant.
template <class S>
FrobeniusReport<S> frobenius_report(const E0Coefficient<S>& r, const SpherePoint<S>& p);

struct Classification {
  enum class Kind { CaseI, CaseII, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<std::string> failures;
  std::vector<FrobeniusReport<GaussRational>> reports;
  /// Index into the puncture list of the end with a real non-integer
  /// exponent difference (Case II only).
  int special_end = -1;
};
std::string to_string(Classification::Kind k);

Classification classify_reducibility(const SurfaceData& data);

struct ThetaSample {
  Rational theta;
  bool admissible = true;
  std::string note;
  std::vector<GaussRational> log_terms;  // one per finite resonant end
  std::vector<double> float_magnitudes;  // floating-mode cross-check
  bool vanishes = false;                 // all exact log terms zero
};

/// Evaluates the log terms of family(theta) at its finite ends over the
/// grid a, a + step, ..., b (exact rational steps).
std::vector<ThetaSample> theta_scan(const std::function<SurfaceData(const Rational&)>& family, const Rational& a,
                                    const Rational& b, const Rational& step);

}  // namespace cmc1

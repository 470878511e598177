#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cmc1/ode.hpp"
#include "cmc1/surface_data.hpp"

namespace cmc1 {

/// A straight segment or a circular arc in the z-plane.
struct Segment {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  Complex a, b;           // line endpoints
  Complex center;         // arc
  double radius = 0.0;    // arc
  double theta0 = 0.0;    // arc start angle
  double theta1 = 0.0;    // arc end angle (any sign of sweep)

  static Segment line(Complex from, Complex to);
  static Segment arc(Complex center, double radius, double theta0, double theta1);

  Complex point(double s) const;     // s in [0, 1]
  Complex velocity(double s) const;  // dz/ds
  double length() const;
  /// Distance from q to the segment (sampled for arcs).
  double distance(Complex q) const;
};

struct PathSpec {
  std::vector<Segment> segments;
  double clearance = 0.02;

  static PathSpec line(Complex from, Complex to);
  /// from -> nearest point on the circle, one full turn (counterclockwise
  /// when turns > 0), then back to from.
  static PathSpec loop(Complex from, Complex center, double radius, int turns = 1);

  Complex start() const;
  Complex end() const;
  double length() const;
  /// Throws std::invalid_argument if segments are not connected.
  void validate() const;
};

/// Which Weierstrass package drives the frame equation dF = F A dz.
enum class FrameRoute {
  Primary,  // g and omega = Q/dg
  Dual      // G and omega# = -Q/dG
};

struct FrameState {
  Complex z;
  Mat2 F = Mat2::Identity();
  BranchState branch;
  double det_drift = 0.0;   // max |det F - 1| seen
  double arclength = 0.0;
  long steps = 0;
};

struct DevelopOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  FrameRoute route = FrameRoute::Primary;
};

/// Connection matrix A(z) with dF = F A dz; chosen receives the branch used.
class Connection {
 public:
  Connection(const SurfaceData& data, FrameRoute route);
  Mat2 operator()(Complex z, const BranchState& ref, BranchState* chosen) const;
  /// g (primary) or G (dual) at z on the branch near ref.
  Complex gauss(Complex z, const BranchState& ref, BranchState* chosen) const;
  /// Points the path must keep its clearance from.
  const std::vector<Complex>& singular() const { return singular_; }
  FrameRoute route() const { return route_; }

 private:
  FrameRoute route_;
  std::optional<ExprFunction> g_;
  FloatMap G_, omega_sharp_, Q_;
  std::vector<Complex> singular_;
};

/// Integrates the frame along path starting from start (whose z must be
/// the path start). Throws std::runtime_error on clearance violations and
/// on step-size underflow, naming the location.
FrameState continue_frame(const SurfaceData& data, const PathSpec& path, const FrameState& start,
                          const DevelopOptions& opts = {});
FrameState continue_frame(const Connection& A, const PathSpec& path, const FrameState& start,
                          const DevelopOptions& opts = {});
FrameState initial_frame(const SurfaceData& data, const DevelopOptions& opts = {});
FrameState initial_frame(const Connection& A, Complex z0);

enum class MonodromyClass { SU2, SU11, Generic };
std::string to_string(MonodromyClass c);

struct MonodromyResult {
  Mat2 M;
  MonodromyClass klass = MonodromyClass::Generic;
  double unitary_defect = 0.0;   // ||M M* - I||
  double su11_defect = 0.0;      // ||M e3 M* - e3||
  double det_drift = 0.0;
  double drift_per_length = 0.0;
  FrameState end;
};

MonodromyResult classify_monodromy(const Mat2& M, double tol = 1e-6);

/// Loop monodromy F0^-1 F_end for a closed path starting at the basepoint.
MonodromyResult loop_monodromy(const SurfaceData& data, const PathSpec& loop, const DevelopOptions& opts = {},
                               double tol = 1e-6);

/// Simple loop from the basepoint around one puncture (a large clockwise
/// circle for infinity) that encloses no other singular point.
MonodromyResult monodromy(const SurfaceData& data, Complex basepoint, const ExactPoint& puncture,
                          const DevelopOptions& opts = {}, double tol = 1e-6);

struct AmbientPoint {
  Ambient ambient = Ambient::H3;
  std::array<double, 4> minkowski{};  // x0, x1, x2, x3
  std::optional<std::array<double, 3>> ball;
  bool singular = false;

  /// -x0^2 + x1^2 + x2^2 + x3^2
  double lorentz_norm() const;
};

/// f = F F*; throws std::domain_error if |det F - 1| >= 1e-6.
AmbientPoint point_h3(const Mat2& F);
/// f = F e3 F*; singular when ||g| - 1| < threshold.
AmbientPoint point_s31(const Mat2& F, Complex g_value, double threshold);

/// Boundary point of the ball model for a value of the hyperbolic Gauss map.
std::array<double, 3> ideal_point(const FloatPoint& G);
/// The hyperbolic Gauss map (F11 g + F12)/(F21 g + F22) read off a frame.
FloatPoint frame_gauss_map(const Mat2& F, Complex g);

struct Rect {
  double x0, x1, y0, y1;
  int nx, ny;
};

/// Marching-squares segments of the contour |g| = 1 on a cartesian grid
/// (principal branches).
std::vector<std::array<Complex, 2>> singular_locus(const ExprFunction& g, const Rect& domain);

/// Monodromy of u'' + r u = 0 (fundamental matrix of (u, u')) around a
/// circle; used to cross-check log terms numerically.
Mat2 e0_monodromy(const FloatMap& r, Complex center, double radius, const OdeOptions& opts = {});

}  // namespace cmc1

#include "cmc1/develop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace cmc1 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

double angle_in_sweep(double phi, double a, double b) {
  // fraction along [a, b] (either orientation) at which angle phi lies, or -1
  const double sweep = b - a;
  double d = phi - a;
  if (sweep >= 0) {
    d = std::fmod(d, kTwoPi);
    if (d < 0) d += kTwoPi;
    return d <= sweep ? d / sweep : -1.0;
  }
  d = std::fmod(-d, kTwoPi);
  if (d < 0) d += kTwoPi;
  return d <= -sweep ? d / -sweep : -1.0;
}

void append_roots(std::vector<Complex>& out, const FloatPolynomial& p) {
  if (p.degree() <= 0) return;
  for (const auto& r : roots(p)) out.push_back(r.value);
}

}  // namespace

Segment Segment::line(Complex from, Complex to) {
  Segment s;
  s.kind = Kind::Line;
  s.a = from;
  s.b = to;
  return s;
}

Segment Segment::arc(Complex center, double radius, double theta0, double theta1) {
  if (!(radius > 0)) throw std::invalid_argument("arc radius must be positive");
  Segment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  return s;
}

Complex Segment::point(double s) const {
  if (kind == Kind::Line) return a + s * (b - a);
  return center + std::polar(radius, theta0 + s * (theta1 - theta0));
}

Complex Segment::velocity(double s) const {
  if (kind == Kind::Line) return b - a;
  const double th = theta0 + s * (theta1 - theta0);
  return Complex(0.0, theta1 - theta0) * std::polar(radius, th);
}

double Segment::length() const {
  if (kind == Kind::Line) return std::abs(b - a);
  return radius * std::abs(theta1 - theta0);
}

double Segment::distance(Complex q) const {
  if (kind == Kind::Line) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(q - a);
    const double t = std::clamp(((q - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(q - (a + t * d));
  }
  const double end_dist = std::min(std::abs(q - point(0.0)), std::abs(q - point(1.0)));
  const Complex rel = q - center;
  if (std::abs(theta1 - theta0) >= kTwoPi || rel == Complex{}) {
    return std::abs(std::abs(rel) - radius);
  }
  if (angle_in_sweep(std::arg(rel), theta0, theta1) >= 0) return std::abs(std::abs(rel) - radius);
  return end_dist;
}

PathSpec PathSpec::line(Complex from, Complex to) {
  PathSpec p;
  p.segments.push_back(Segment::line(from, to));
  return p;
}

PathSpec PathSpec::loop(Complex from, Complex center, double radius, int turns) {
  if (turns == 0) throw std::invalid_argument("loop needs a nonzero number of turns");
  PathSpec p;
  Complex dir = from - center;
  if (std::abs(dir) == 0.0) throw std::invalid_argument("loop basepoint at the loop center");
  dir /= std::abs(dir);
  const Complex on_circle = center + radius * dir;
  const double th = std::arg(dir);
  p.segments.push_back(Segment::line(from, on_circle));
  p.segments.push_back(Segment::arc(center, radius, th, th + kTwoPi * turns));
  p.segments.push_back(Segment::line(on_circle, from));
  return p;
}

Complex PathSpec::start() const {
  if (segments.empty()) throw std::invalid_argument("empty path");
  return segments.front().point(0.0);
}

Complex PathSpec::end() const {
  if (segments.empty()) throw std::invalid_argument("empty path");
  return segments.back().point(1.0);
}

double PathSpec::length() const {
  double L = 0.0;
  for (const auto& s : segments) L += s.length();
  return L;
}

void PathSpec::validate() const {
  if (!(clearance > 0)) throw std::invalid_argument("path clearance must be positive");
  for (std::size_t i = 1; i < segments.size(); ++i) {
    const Complex a = segments[i - 1].point(1.0), b = segments[i].point(0.0);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
      throw std::invalid_argument("path segments " + std::to_string(i - 1) + " and " + std::to_string(i) +
                                  " are not connected");
    }
  }
}

Connection::Connection(const SurfaceData& data, FrameRoute route) : route_(route) {
  G_ = data.G.to_complex();
  Q_ = data.Q.coeff.to_complex();
  for (const auto& p : data.M.punctures)
    if (!p.is_infinity()) singular_.push_back(p.approx().value());
  for (const auto& a : data.avoid) singular_.push_back(a);
  append_roots(singular_, Q_.den());
  if (route == FrameRoute::Primary) {
    if (!data.g) throw std::invalid_argument("surface '" + data.name + "' has no secondary Gauss map");
    g_ = data.g;
  } else {
    omega_sharp_ = dual_omega(data.G, data.Q).coeff.to_complex();
    append_roots(singular_, omega_sharp_.den());
    append_roots(singular_, G_.den());
  }
}

Complex Connection::gauss(Complex z, const BranchState& ref, BranchState* chosen) const {
  if (route_ == FrameRoute::Dual) return G_.eval_complex(z);
  return g_->eval(z, ref, chosen);
}

Mat2 Connection::operator()(Complex z, const BranchState& ref, BranchState* chosen) const {
  Complex g, w;
  if (route_ == FrameRoute::Dual) {
    g = G_.eval_complex(z);
    w = omega_sharp_.eval_complex(z);
  } else {
    const Jet<1> j = g_->jet<1>(z, ref, chosen);
    g = j.value();
    const Complex dg = j.derivative(1);
    if (dg == Complex{}) throw std::domain_error("dg vanishes at z=" + fmt(z));
    w = Q_.eval_complex(z) / dg;
  }
  Mat2 A;
  A << g * w, -g * g * w, w, -g * w;
  return A;
}

FrameState initial_frame(const Connection& A, Complex z0) {
  FrameState s;
  s.z = z0;
  A.gauss(z0, {}, &s.branch);
  return s;
}

FrameState initial_frame(const SurfaceData& data, const DevelopOptions& opts) {
  return initial_frame(Connection(data, opts.route), data.basepoint);
}

FrameState continue_frame(const SurfaceData& data, const PathSpec& path, const FrameState& start,
                          const DevelopOptions& opts) {
  return continue_frame(Connection(data, opts.route), path, start, opts);
}

FrameState continue_frame(const Connection& A, const PathSpec& path, const FrameState& start,
                          const DevelopOptions& opts) {
  FrameState st = start;
  if (path.segments.empty()) return st;
  path.validate();
  if (std::abs(path.start() - start.z) > 1e-12 * std::max(1.0, std::abs(start.z))) {
    throw std::invalid_argument("path does not start at the frame point z=" + fmt(start.z));
  }
  for (const auto& seg : path.segments) {
    double seg_clear = std::numeric_limits<double>::infinity();
    for (const auto& q : A.singular()) {
      const double d = seg.distance(q);
      if (d < path.clearance) {
        throw std::runtime_error("clearance violation: path passes within " + std::to_string(d) + " of z=" + fmt(q));
      }
      seg_clear = std::min(seg_clear, d);
    }
    const double L = seg.length();
    if (L == 0.0) continue;
    OdeOptions o;
    o.rtol = opts.rtol;
    o.atol = opts.atol;
    o.h_max = std::min(L, 0.5 * seg_clear);
    o.h_init = std::min(o.h_max, 1e-2);
    auto rhs = [&](double s, const Mat2& F) -> Mat2 {
      const double u = s / L;
      return F * A(seg.point(u), st.branch, nullptr) * (seg.velocity(u) / L);
    };
    auto on_accept = [&](double s, const Mat2& F) {
      A.gauss(seg.point(s / L), st.branch, &st.branch);
      st.det_drift = std::max(st.det_drift, std::abs(F.determinant() - 1.0));
      ++st.steps;
    };
    try {
      st.F = integrate_dopri(rhs, 0.0, L, st.F, o, on_accept);
    } catch (const StepSizeUnderflow& e) {
      throw std::runtime_error("step size underflow at z=" + fmt(seg.point(e.t() / L)));
    } catch (const std::domain_error& e) {
      throw std::runtime_error(std::string("integration failed: ") + e.what());
    }
    st.z = seg.point(1.0);
    st.arclength += L;
  }
  return st;
}

std::string to_string(MonodromyClass c) {
  switch (c) {
    case MonodromyClass::SU2: return "SU2";
    case MonodromyClass::SU11: return "SU11";
    case MonodromyClass::Generic: return "generic";
  }
  return "generic";
}

MonodromyResult classify_monodromy(const Mat2& M, double tol) {
  MonodromyResult r;
  r.M = M;
  const Mat2 I = Mat2::Identity();
  Mat2 e3 = Mat2::Zero();
  e3(0, 0) = 1.0;
  e3(1, 1) = -1.0;
  r.unitary_defect = (M * M.adjoint() - I).norm();
  r.su11_defect = (M * e3 * M.adjoint() - e3).norm();
  if (r.unitary_defect < tol)
    r.klass = MonodromyClass::SU2;
  else if (r.su11_defect < tol)
    r.klass = MonodromyClass::SU11;
  return r;
}

MonodromyResult loop_monodromy(const SurfaceData& data, const PathSpec& loop, const DevelopOptions& opts, double tol) {
  const Connection A(data, opts.route);
  const FrameState start = initial_frame(A, loop.start());
  const FrameState end = continue_frame(A, loop, start, opts);
  MonodromyResult r = classify_monodromy(start.F.inverse() * end.F, tol);
  r.det_drift = end.det_drift;
  r.drift_per_length = end.arclength > 0 ? end.det_drift / end.arclength : 0.0;
  r.end = end;
  return r;
}

MonodromyResult monodromy(const SurfaceData& data, Complex basepoint, const ExactPoint& puncture,
                          const DevelopOptions& opts, double tol) {
  const Connection A(data, opts.route);
  PathSpec path;
  if (puncture.is_infinity()) {
    double R = std::abs(basepoint);
    for (const auto& q : A.singular()) R = std::max(R, std::abs(q));
    R = 2.0 * R + 1.0;
    path = PathSpec::loop(basepoint, Complex{}, R, -1);
    path.clearance = 0.02;
  } else {
    const Complex p = puncture.approx().value();
    double r = 0.5 * std::abs(basepoint - p);
    for (const auto& q : A.singular())
      if (std::abs(q - p) > 1e-12) r = std::min(r, 0.4 * std::abs(q - p));
    if (!(r > 0)) throw std::invalid_argument("basepoint coincides with the puncture");
    path = PathSpec::loop(basepoint, p, r, 1);
    path.clearance = std::min(0.02, 0.5 * r);
  }
  const FrameState start = initial_frame(A, basepoint);
  const FrameState end = continue_frame(A, path, start, opts);
  MonodromyResult res = classify_monodromy(start.F.inverse() * end.F, tol);
  res.det_drift = end.det_drift;
  res.drift_per_length = end.arclength > 0 ? end.det_drift / end.arclength : 0.0;
  res.end = end;
  return res;
}

double AmbientPoint::lorentz_norm() const {
  const auto& x = minkowski;
  return -x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
}

namespace {

AmbientPoint from_hermitian(const Mat2& f, Ambient amb) {
  const double anti = std::abs(f(0, 1) - std::conj(f(1, 0))) + std::abs(f(0, 0).imag()) + std::abs(f(1, 1).imag());
  if (anti > 1e-6 * std::max(1.0, f.norm())) throw std::domain_error("matrix is not Hermitian");
  AmbientPoint p;
  p.ambient = amb;
  const double f11 = f(0, 0).real(), f22 = f(1, 1).real();
  p.minkowski = {(f11 + f22) / 2, f(0, 1).real(), f(0, 1).imag(), (f11 - f22) / 2};
  return p;
}

void check_det(const Mat2& F) {
  const double d = std::abs(F.determinant() - 1.0);
  if (!(d < 1e-6)) throw std::domain_error("frame determinant off by " + std::to_string(d));
}

}  // namespace

AmbientPoint point_h3(const Mat2& F) {
  check_det(F);
  AmbientPoint p = from_hermitian(F * F.adjoint(), Ambient::H3);
  const auto& x = p.minkowski;
  p.ball = std::array<double, 3>{x[1] / (1 + x[0]), x[2] / (1 + x[0]), x[3] / (1 + x[0])};
  return p;
}

AmbientPoint point_s31(const Mat2& F, Complex g_value, double threshold) {
  check_det(F);
  Mat2 e3 = Mat2::Zero();
  e3(0, 0) = 1.0;
  e3(1, 1) = -1.0;
  AmbientPoint p = from_hermitian(F * e3 * F.adjoint(), Ambient::S31);
  p.singular = std::abs(std::abs(g_value) - 1.0) < threshold;
  return p;
}

std::array<double, 3> ideal_point(const FloatPoint& G) {
  if (G.is_infinity()) return {0.0, 0.0, 1.0};
  const Complex g = G.value();
  const double n = std::norm(g);
  if (!std::isfinite(n)) return {0.0, 0.0, 1.0};
  return {2 * g.real() / (n + 1), 2 * g.imag() / (n + 1), (n - 1) / (n + 1)};
}

FloatPoint frame_gauss_map(const Mat2& F, Complex g) {
  const Complex num = F(0, 0) * g + F(0, 1);
  const Complex den = F(1, 0) * g + F(1, 1);
  if (den == Complex{}) return FloatPoint::infinity();
  return FloatPoint(num / den);
}

std::vector<std::array<Complex, 2>> singular_locus(const ExprFunction& g, const Rect& dom) {
  if (dom.nx < 1 || dom.ny < 1) throw std::invalid_argument("grid needs at least one cell");
  const int nx = dom.nx + 1, ny = dom.ny + 1;
  auto at = [&](int i, int j) {
    return Complex(dom.x0 + (dom.x1 - dom.x0) * i / dom.nx, dom.y0 + (dom.y1 - dom.y0) * j / dom.ny);
  };
  std::vector<double> f(static_cast<std::size_t>(nx * ny), std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      try {
        f[static_cast<std::size_t>(j * nx + i)] = std::abs(g(at(i, j))) - 1.0;
      } catch (const std::domain_error&) {
      }
    }
  auto val = [&](int i, int j) { return f[static_cast<std::size_t>(j * nx + i)]; };
  auto cross = [&](int i0, int j0, int i1, int j1) {
    const double a = val(i0, j0), b = val(i1, j1);
    const double t = a / (a - b);
    return at(i0, j0) + t * (at(i1, j1) - at(i0, j0));
  };
  std::vector<std::array<Complex, 2>> out;
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const int ci[4] = {i, i + 1, i + 1, i};
      const int cj[4] = {j, j, j + 1, j + 1};
      bool ok = true;
      for (int k = 0; k < 4; ++k) ok = ok && std::isfinite(val(ci[k], cj[k]));
      if (!ok) continue;
      std::vector<Complex> pts;
      for (int k = 0; k < 4; ++k) {
        const int l = (k + 1) % 4;
        const double a = val(ci[k], cj[k]), b = val(ci[l], cj[l]);
        if ((a < 0) != (b < 0)) pts.push_back(cross(ci[k], cj[k], ci[l], cj[l]));
      }
      if (pts.size() == 2) {
        out.push_back({pts[0], pts[1]});
      } else if (pts.size() == 4) {
        // saddle: resolve with the centre value
        const Complex c = 0.25 * (at(i, j) + at(i + 1, j) + at(i + 1, j + 1) + at(i, j + 1));
        double centre = 0.0;
        try {
          centre = std::abs(g(c)) - 1.0;
        } catch (const std::domain_error&) {
        }
        if ((centre < 0) == (val(i, j) < 0)) {
          out.push_back({pts[0], pts[3]});
          out.push_back({pts[1], pts[2]});
        } else {
          out.push_back({pts[0], pts[1]});
          out.push_back({pts[2], pts[3]});
        }
      }
    }
  return out;
}

Mat2 e0_monodromy(const FloatMap& r, Complex center, double radius, const OdeOptions& opts) {
  const Segment circle = Segment::arc(center, radius, 0.0, kTwoPi);
  const double L = circle.length();
  OdeOptions o = opts;
  o.h_max = std::min(o.h_max, 0.25 * radius);
  auto rhs = [&](double s, const Mat2& Y) -> Mat2 {
    const double u = s / L;
    Mat2 B;
    B << 0.0, 1.0, -r.eval_complex(circle.point(u)), 0.0;
    return B * Y * (circle.velocity(u) / L);
  };
  return integrate_dopri(rhs, 0.0, L, Mat2::Identity(), o);
}

}  // namespace cmc1

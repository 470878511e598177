#include "cmc1/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmc1 {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const Mat2& err, const Mat2& y, const Mat2& y_new, const OdeOptions& o) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double sc = o.atol + o.rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
    worst = std::max(worst, std::abs(err(i)) / sc);
  }
  return worst;
}

}  // namespace

Mat2 integrate_dopri(const std::function<Mat2(double, const Mat2&)>& rhs, double t0, double t1, const Mat2& y0,
                     const OdeOptions& opts, const std::function<void(double, const Mat2&)>& on_accept,
                     OdeStats* stats) {
  Mat2 y = y0;
  if (t1 == t0) return y;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  double t = t0;
  double h = std::min({opts.h_init, opts.h_max, span});
  Mat2 k1 = rhs(t, y);
  OdeStats local;
  for (long step = 0; step < opts.max_steps; ++step) {
    if (dir * (t1 - t) <= 0.0) break;
    h = std::min(h, std::abs(t1 - t));
    const double hs = dir * h;
    const Mat2 k2 = rhs(t + c2 * hs, y + hs * (a21 * k1));
    const Mat2 k3 = rhs(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
    const Mat2 k4 = rhs(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    const Mat2 k5 = rhs(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Mat2 k6 = rhs(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Mat2 y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Mat2 k7 = rhs(t + hs, y_new);
    const Mat2 err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, y_new, opts);
    if (!std::isfinite(en)) {
      h *= 0.25;
      ++local.rejected;
    } else if (en <= 1.0) {
      const bool last = h >= std::abs(t1 - t);
      t = last ? t1 : t + hs;
      y = y_new;
      k1 = k7;
      ++local.accepted;
      if (on_accept) on_accept(t, y);
      const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h = std::min(h * factor, opts.h_max);
      if (last) break;
    } else {
      h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
      ++local.rejected;
    }
    if (h < opts.h_min * std::max(1.0, span)) {
      std::ostringstream msg;
      msg << "step size underflow at t=" << t;
      throw StepSizeUnderflow(msg.str(), t);
    }
  }
  if (dir * (t1 - t) > 0.0) throw std::runtime_error("ODE step budget exhausted");
  if (stats) {
    stats->accepted += local.accepted;
    stats->rejected += local.rejected;
  }
  return y;
}

}  // namespace cmc1

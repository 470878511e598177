#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cmc1 {

using Mat2 = Eigen::Matrix2cd;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double h_min = 1e-14;
  double h_max = std::numeric_limits<double>::infinity();
  long max_steps = 2'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

class StepSizeUnderflow : public std::runtime_error {
 public:
  StepSizeUnderflow(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// dY/dt = rhs(t, Y) on [t0, t1] with the Dormand-Prince 5(4) pair and
/// per-step error control. on_accept(t, Y) runs after every accepted step.
Mat2 integrate_dopri(const std::function<Mat2(double, const Mat2&)>& rhs, double t0, double t1, const Mat2& y0,
                     const OdeOptions& opts, const std::function<void(double, const Mat2&)>& on_accept = {},
                     OdeStats* stats = nullptr);

}  // namespace cmc1

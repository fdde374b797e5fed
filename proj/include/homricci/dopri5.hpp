#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace homricci::ode {

/// One Dormand–Prince 5(4) step with the free 4th-order continuous extension.
template <int N>
struct Dopri5Step {
  using Vec = Eigen::Matrix<double, N, 1>;

  double t0 = 0.0;
  double h = 0.0;
  Vec y0;
  Vec y1;
  Vec k1;      // f(t0, y0)
  Vec k7;      // f(t0 + h, y1), reusable as the next k1
  Vec err;     // embedded error estimate
  Vec cont[5];

  /// Dense output at t0 + theta * h, theta in [0, 1].
  Vec at(double theta) const {
    const double omt = 1.0 - theta;
    return cont[0] +
           theta * (cont[1] +
                    omt * (cont[2] + theta * (cont[3] + omt * cont[4])));
  }
};

/// Takes a trial step of size h from (t, y) given k1 = f(t, y). The result may
/// contain non-finite entries; the caller decides acceptance.
template <int N, class Rhs>
Dopri5Step<N> dopri5_step(const Rhs& f, double t,
                          const Eigen::Matrix<double, N, 1>& y,
                          const Eigen::Matrix<double, N, 1>& k1, double h) {
  using Vec = Eigen::Matrix<double, N, 1>;
  constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                   c5 = 8.0 / 9.0;
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                   a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                   a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                   a65 = -5103.0 / 18656.0;
  constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0,
                   a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                   a76 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                   e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                   e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  constexpr double d1 = -12715105075.0 / 11282082432.0,
                   d3 = 87487479700.0 / 32700410799.0,
                   d4 = -10690763975.0 / 1880347072.0,
                   d5 = 701980252875.0 / 199316789632.0,
                   d6 = -1453857185.0 / 822651844.0,
                   d7 = 69997945.0 / 29380423.0;

  const Vec k2 = f(t + c2 * h, Vec(y + h * a21 * k1));
  const Vec k3 = f(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)));
  const Vec k4 = f(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
  const Vec k5 = f(t + c5 * h,
                   Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
  const Vec k6 = f(t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 +
                                       a64 * k4 + a65 * k5)));

  Dopri5Step<N> s;
  s.t0 = t;
  s.h = h;
  s.y0 = y;
  s.k1 = k1;
  s.y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
  s.k7 = f(t + h, s.y1);
  s.err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * s.k7);

  const Vec diff = s.y1 - y;
  const Vec bspl = h * k1 - diff;
  s.cont[0] = y;
  s.cont[1] = diff;
  s.cont[2] = bspl;
  s.cont[3] = diff - h * s.k7 - bspl;
  s.cont[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * s.k7);
  return s;
}

/// RMS error norm scaled by atol + rtol * max(|y0|, |y1|).
template <int N>
double error_norm(const Dopri5Step<N>& s, double rtol, double atol) {
  double acc = 0.0;
  for (int i = 0; i < s.y0.size(); ++i) {
    const double scale =
        atol + rtol * std::max(std::abs(s.y0(i)), std::abs(s.y1(i)));
    const double r = s.err(i) / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(s.y0.size()));
}

}  // namespace homricci::ode

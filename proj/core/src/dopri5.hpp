#pragma once

// Dormand-Prince 5(4) tableau shared by the adaptive integrator and the
// fixed-step grid sampler.

#include "fbrd/model.hpp"

namespace fbrd::detail {

struct Dp5Step {
  PhaseState y;      // fifth-order solution
  double err_u = 0;  // embedded error estimate
  double err_w = 0;
  Derivative f_end;  // field at y (FSAL)
};

inline Dp5Step dp5_step(const PhaseState& y0, const Derivative& k1, double h, const ModelParams& p, bool smooth) {
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                   a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                   b6 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                   e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
  constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

  auto at = [&](double c, double du, double dw) {
    return PhaseState{y0.xi + c * h, y0.u + h * du, y0.w + h * dw};
  };
  const Derivative k2 = vector_field(at(c2, a21 * k1.du, a21 * k1.dw), p, smooth);
  const Derivative k3 =
      vector_field(at(c3, a31 * k1.du + a32 * k2.du, a31 * k1.dw + a32 * k2.dw), p, smooth);
  const Derivative k4 = vector_field(
      at(c4, a41 * k1.du + a42 * k2.du + a43 * k3.du, a41 * k1.dw + a42 * k2.dw + a43 * k3.dw), p, smooth);
  const Derivative k5 = vector_field(at(c5, a51 * k1.du + a52 * k2.du + a53 * k3.du + a54 * k4.du,
                                        a51 * k1.dw + a52 * k2.dw + a53 * k3.dw + a54 * k4.dw),
                                     p, smooth);
  const Derivative k6 =
      vector_field(at(1.0, a61 * k1.du + a62 * k2.du + a63 * k3.du + a64 * k4.du + a65 * k5.du,
                      a61 * k1.dw + a62 * k2.dw + a63 * k3.dw + a64 * k4.dw + a65 * k5.dw),
                   p, smooth);

  Dp5Step out;
  out.y = at(1.0, b1 * k1.du + b3 * k3.du + b4 * k4.du + b5 * k5.du + b6 * k6.du,
             b1 * k1.dw + b3 * k3.dw + b4 * k4.dw + b5 * k5.dw + b6 * k6.dw);
  out.y.xi = y0.xi + h;
  out.f_end = vector_field(out.y, p, smooth);
  const Derivative& k7 = out.f_end;
  out.err_u = h * (e1 * k1.du + e3 * k3.du + e4 * k4.du + e5 * k5.du + e6 * k6.du + e7 * k7.du);
  out.err_w = h * (e1 * k1.dw + e3 * k3.dw + e4 * k4.dw + e5 * k5.dw + e6 * k6.dw + e7 * k7.dw);
  return out;
}

}  // namespace fbrd::detail

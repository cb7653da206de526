#pragma once

// Fourth-order central finite-difference stencils, used as an independent
// oracle for the analytic jet derivatives.

namespace coh1::fd {

template <class F>
inline double d1(F&& f, double t, double h) {
  return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) /
         (12.0 * h);
}

template <class F>
inline double d2(F&& f, double t, double h) {
  return (-f(t - 2 * h) + 16.0 * f(t - h) - 30.0 * f(t) + 16.0 * f(t + h) -
          f(t + 2 * h)) /
         (12.0 * h * h);
}

template <class F>
inline double d3(F&& f, double t, double h) {
  return (f(t - 3 * h) - 8.0 * f(t - 2 * h) + 13.0 * f(t - h) -
          13.0 * f(t + h) + 8.0 * f(t + 2 * h) - f(t + 3 * h)) /
         (8.0 * h * h * h);
}

}  // namespace coh1::fd

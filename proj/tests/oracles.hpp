#pragma once

// Test-only reference computations, written independently of the library's
// evaluation paths.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline double pressure_vessel_cost(const std::vector<double>& x, double shell_coefficient) {
  const double ts = x[0], th = x[1], r = x[2], l = x[3];
  return shell_coefficient * ts * r * l + 1.7781 * th * r * r + 3.1661 * ts * ts * l +
         19.84 * ts * ts * r;
}

inline std::vector<double> pressure_vessel_g(const std::vector<double>& x) {
  const double pi = std::numbers::pi;
  return {-x[0] + 0.0193 * x[2], -x[1] + 0.00954 * x[2],
          -pi * x[2] * x[2] * x[3] - 4.0 / 3.0 * pi * std::pow(x[2], 3) + 1296000.0,
          x[3] - 240.0};
}

inline double rosenbrock2(double x, double y) {
  return (1 - x) * (1 - x) + 100 * (y - x * x) * (y - x * x);
}

/// sum of max(g, 0) for the two cubic/line constraints.
inline double rosenbrock_constraint_excess(double x, double y) {
  const double g1 = (x - 1) * (x - 1) * (x - 1) - y + 1;
  const double g2 = x + y - 2;
  return std::max(g1, 0.0) + std::max(g2, 0.0);
}

/// m x'' + c x' + k x via central differences with step h.
inline double ode_residual(const std::function<double(double)>& x, double m, double c, double k,
                           double t, double h = 1e-5) {
  const double xp = x(t + h), x0 = x(t), xm = x(t - h);
  const double d1 = (xp - xm) / (2 * h);
  const double d2 = (xp - 2 * x0 + xm) / (h * h);
  return m * d2 + c * d1 + k * x0;
}

}  // namespace oracle

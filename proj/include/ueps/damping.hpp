#pragma once

// Closed-form free response of the damped oscillator m x'' + c x' + k x = 0.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ueps::damping {

enum class Regime { Overdamped, Critical, Underdamped };

std::string_view to_string(Regime r);

struct OscillatorParams {
  double mass = 1.0;       // kg
  double damping_c = 0.0;  // N s / m
  double stiffness = 1.0;  // N / m
  double amp_A = 1.0;
  double amp_B = 0.0;
  double phase = 0.0;  // rad, underdamped only

  /// Unit mass with c = 2 gamma and k = omega0^2.
  static OscillatorParams from_rates(double gamma, double omega0, double A, double B = 0.0,
                                     double phi = 0.0);

  double omega0() const;
  double gamma() const;
  /// Damped angular frequency; 0 unless underdamped.
  double omega_d() const;

  /// Throws ueps::ParameterError unless m > 0, c >= 0, k > 0 and all finite.
  void validate() const;
};

/// Critical when |gamma - omega0| <= 1e-9 omega0.
Regime classify_regime(const OscillatorParams& p);

/// Overdamped: A e^(l1 t) + B e^(l2 t), l = -gamma +/- sqrt(gamma^2 - omega0^2).
/// Critical:   (A + B t) e^(-gamma t).
/// Underdamped: A e^(-gamma t) cos(omega_d t + phi).
double position(const OscillatorParams& p, double t);

struct CurveSample {
  double t;
  double x;
};

/// n_samples evenly spaced points on [t_start, t_end], endpoints included.
std::vector<CurveSample> sample_curve(const OscillatorParams& p, double t_start, double t_end,
                                      std::size_t n_samples);

/// "t,x" header then one row per sample, shortest round-trip decimals.
std::string format_curve_csv(const std::vector<CurveSample>& samples);

}  // namespace ueps::damping

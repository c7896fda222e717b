#include "ueps/damping.hpp"

#include <cmath>

#include <fmt/core.h>

#include "ueps/core.hpp"

namespace ueps::damping {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Overdamped: return "overdamped";
    case Regime::Critical: return "critical";
    case Regime::Underdamped: return "underdamped";
  }
  return "unknown";
}

OscillatorParams OscillatorParams::from_rates(double gamma, double omega0, double A, double B,
                                              double phi) {
  return OscillatorParams{1.0, 2.0 * gamma, omega0 * omega0, A, B, phi};
}

double OscillatorParams::omega0() const { return std::sqrt(stiffness / mass); }
double OscillatorParams::gamma() const { return damping_c / (2.0 * mass); }

double OscillatorParams::omega_d() const {
  if (classify_regime(*this) != Regime::Underdamped) return 0.0;
  const double w0 = omega0();
  const double g = gamma();
  return std::sqrt(w0 * w0 - g * g);
}

void OscillatorParams::validate() const {
  if (!std::isfinite(mass) || !std::isfinite(damping_c) || !std::isfinite(stiffness) ||
      !std::isfinite(amp_A) || !std::isfinite(amp_B) || !std::isfinite(phase)) {
    throw ParameterError("oscillator: parameters must be finite");
  }
  if (!(mass > 0.0)) throw ParameterError(fmt::format("oscillator: mass must be > 0, got {}", mass));
  if (!(damping_c >= 0.0)) {
    throw ParameterError(fmt::format("oscillator: damping must be >= 0, got {}", damping_c));
  }
  if (!(stiffness > 0.0)) {
    throw ParameterError(fmt::format("oscillator: stiffness must be > 0, got {}", stiffness));
  }
}

Regime classify_regime(const OscillatorParams& p) {
  const double w0 = p.omega0();
  const double g = p.gamma();
  if (std::abs(g - w0) <= 1e-9 * w0) return Regime::Critical;
  return g > w0 ? Regime::Overdamped : Regime::Underdamped;
}

double position(const OscillatorParams& p, double t) {
  const double g = p.gamma();
  const double w0 = p.omega0();
  switch (classify_regime(p)) {
    case Regime::Overdamped: {
      const double root = std::sqrt(g * g - w0 * w0);
      return p.amp_A * std::exp((-g + root) * t) + p.amp_B * std::exp((-g - root) * t);
    }
    case Regime::Critical:
      return (p.amp_A + p.amp_B * t) * std::exp(-g * t);
    case Regime::Underdamped:
      return p.amp_A * std::exp(-g * t) * std::cos(p.omega_d() * t + p.phase);
  }
  return 0.0;
}

std::vector<CurveSample> sample_curve(const OscillatorParams& p, double t_start, double t_end,
                                      std::size_t n_samples) {
  p.validate();
  if (!(t_start < t_end)) {
    throw ParameterError(
        fmt::format("sample_curve: need t_start < t_end, got [{}, {}]", t_start, t_end));
  }
  if (n_samples < 2) throw ParameterError("sample_curve: need at least 2 samples");

  std::vector<CurveSample> out;
  out.reserve(n_samples);
  const double step = (t_end - t_start) / static_cast<double>(n_samples - 1);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = i + 1 == n_samples ? t_end : t_start + step * static_cast<double>(i);
    out.push_back({t, position(p, t)});
  }
  return out;
}

std::string format_curve_csv(const std::vector<CurveSample>& samples) {
  std::string out = "t,x\n";
  for (const auto& s : samples) out += fmt::format("{},{}\n", s.t, s.x);
  return out;
}

}  // namespace ueps::damping

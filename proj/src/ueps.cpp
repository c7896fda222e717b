#include "ueps/ueps.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "ueps/swarm.hpp"

namespace ueps {

std::string_view to_string(OscillationKernel k) {
  return k == OscillationKernel::Text ? "text" : "code";
}
std::string_view to_string(PerturbationSchedule s) {
  return s == PerturbationSchedule::Constant ? "const" : "geom";
}
std::string_view to_string(RandomGranularity g) {
  return g == RandomGranularity::PerParticle ? "particle" : "dimension";
}

void UepsParams::validate() const {
  if (!(amplitude > 0.0)) throw ParameterError(fmt::format("ueps: A must be > 0, got {}", amplitude));
  if (!(damping_rate >= 0.0)) {
    throw ParameterError(fmt::format("ueps: b must be >= 0, got {}", damping_rate));
  }
  if (!(alpha >= 0.0)) throw ParameterError(fmt::format("ueps: alpha must be >= 0, got {}", alpha));
  if (!(w_min >= 0.0 && w_min <= w_max)) {
    throw ParameterError(
        fmt::format("ueps: need 0 <= w_min <= w_max, got w_min = {}, w_max = {}", w_min, w_max));
  }
  if (n_particles < 1) throw ParameterError("ueps: need at least one particle");
  if (max_iter < 1) throw ParameterError("ueps: need at least one iteration");
}

double oscillation_coefficient(double amplitude, double damping_rate, std::size_t t, double r1,
                               OscillationKernel kernel) {
  const double offset = kernel == OscillationKernel::Text ? 2.0 : 1.0;
  return amplitude * (offset - std::cos(2.0 * std::numbers::pi * r1)) *
         std::exp(-damping_rate * static_cast<double>(t));
}

double perturbation_scale(double alpha, std::size_t t, PerturbationSchedule schedule) {
  if (alpha == 0.0) return 0.0;
  if (schedule == PerturbationSchedule::Constant) return alpha;
  return std::pow(alpha, static_cast<double>(t));
}

UepsDraws draw_ueps(const UepsParams& params, std::size_t n_particles, std::size_t dim,
                    RngStream& rng) {
  const std::size_t cols = params.granularity == RandomGranularity::PerDimension ? dim : 1;
  UepsDraws draws{Matrix(n_particles, cols), Matrix(n_particles, cols)};
  for (Matrix* block : {&draws.r1, &draws.r2}) {
    for (std::size_t i = 0; i < n_particles; ++i) {
      for (std::size_t j = 0; j < cols; ++j) (*block)(i, j) = rng.uniform();
    }
  }
  return draws;
}

SwarmState apply_ueps_update(SwarmState state, const UepsParams& params, const UepsDraws& draws,
                             std::size_t t, const ObjectiveSpec& objective) {
  const std::size_t n = state.n_particles();
  const std::size_t d = state.dim();
  if (d != objective.arity) {
    throw DimensionError(fmt::format("ueps_step: swarm dimension {} but '{}' has arity {}", d,
                                     objective.name, objective.arity));
  }
  if (n != params.n_particles) {
    throw DimensionError(fmt::format("ueps_step: swarm has {} particles, params say {}", n,
                                     params.n_particles));
  }
  if (t >= params.max_iter) {
    throw ParameterError(
        fmt::format("ueps_step: iteration {} is past max_iter {}", t, params.max_iter));
  }
  const std::size_t cols = params.granularity == RandomGranularity::PerDimension ? d : 1;
  if (draws.r1.rows() != n || draws.r2.rows() != n || draws.r1.cols() != cols ||
      draws.r2.cols() != cols) {
    throw DimensionError("ueps_step: draw blocks do not match swarm shape and granularity");
  }

  const double w = inertia_weight(t, params.w_min, params.w_max, params.max_iter);
  const double pert = perturbation_scale(params.alpha, t, params.schedule);
  const Vector& g = state.global_best_pos;

  for (std::size_t i = 0; i < n; ++i) {
    auto x = state.positions.row(i);
    auto v = state.velocities.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t c = cols == 1 ? 0 : j;
      const double osc = oscillation_coefficient(params.amplitude, params.damping_rate, t,
                                                 draws.r1(i, c), params.kernel);
      v[j] = w * v[j] + osc * (g[j] - x[j]) + pert * (draws.r2(i, c) - 0.5);
      x[j] += v[j];
    }
    clip_in_place(x, objective.bounds);
  }

  update_bests(state, objective);
  state.iteration = t + 1;
  return state;
}

SwarmState ueps_step(SwarmState state, const UepsParams& params, RngStream& rng, std::size_t t,
                     const ObjectiveSpec& objective) {
  const auto draws = draw_ueps(params, state.n_particles(), state.dim(), rng);
  return apply_ueps_update(std::move(state), params, draws, t, objective);
}

RunResult ueps_run(const ObjectiveSpec& objective, const UepsParams& params, std::uint64_t seed,
                   RngKind rng) {
  params.validate();
  check_run_preconditions(objective, params.n_particles, params.max_iter, "ueps_run");
  return run_swarm(objective, params.n_particles, params.max_iter, seed, rng,
                   [&](SwarmState s, RngStream& rng, std::size_t t) {
                     return ueps_step(std::move(s), params, rng, t, objective);
                   });
}

}  // namespace ueps

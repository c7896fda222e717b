#pragma once

// Underdamped particle swarm: each particle is pulled toward the global best
// by a randomly phased, exponentially decaying oscillation coefficient and
// nudged by a centred random perturbation.
//
//   v <- w(t) v + osc(r1, t) (g - x) + pert(t) (r2 - 1/2)
//   x <- clip(x + v)
//
// osc(r1, t) = A (c - cos(2 pi r1)) exp(-b t) with c = 2 (TEXT kernel) or
// c = 1 (CODE kernel); pert(t) = alpha (CONSTANT) or alpha^t (GEOMETRIC).

#include <cstdint>
#include <string_view>

#include "ueps/core.hpp"
#include "ueps/objectives.hpp"

namespace ueps {

enum class OscillationKernel { Text, Code };
enum class PerturbationSchedule { Constant, Geometric };
enum class RandomGranularity { PerParticle, PerDimension };

std::string_view to_string(OscillationKernel k);
std::string_view to_string(PerturbationSchedule s);
std::string_view to_string(RandomGranularity g);

struct UepsParams {
  double amplitude = 1.0;
  double damping_rate = 0.007;
  double alpha = 0.8;
  double w_min = 0.4;
  double w_max = 0.9;
  std::size_t n_particles = 50;
  std::size_t max_iter = 100;
  OscillationKernel kernel = OscillationKernel::Code;
  PerturbationSchedule schedule = PerturbationSchedule::Geometric;
  RandomGranularity granularity = RandomGranularity::PerParticle;

  /// Throws ParameterError on A <= 0, b < 0, alpha < 0, bad inertia bounds,
  /// or zero particles/iterations.
  void validate() const;
};

double oscillation_coefficient(double amplitude, double damping_rate, std::size_t t, double r1,
                               OscillationKernel kernel);

/// Perturbation scale at iteration t. alpha = 0 disables the perturbation for
/// both schedules (including t = 0 under GEOMETRIC).
double perturbation_scale(double alpha, std::size_t t, PerturbationSchedule schedule);

/// Random numbers consumed by one step. Rows are particles; there is one
/// column per dimension for PER_DIMENSION and a single column otherwise.
struct UepsDraws {
  Matrix r1;
  Matrix r2;
};

/// Draws the r1 block then the r2 block, particle-major.
UepsDraws draw_ueps(const UepsParams& params, std::size_t n_particles, std::size_t dim,
                    RngStream& rng);

/// Deterministic part of a step given its draws.
SwarmState apply_ueps_update(SwarmState state, const UepsParams& params, const UepsDraws& draws,
                             std::size_t t, const ObjectiveSpec& objective);

SwarmState ueps_step(SwarmState state, const UepsParams& params, RngStream& rng, std::size_t t,
                     const ObjectiveSpec& objective);

/// Exactly params.max_iter steps from a seeded uniform start with zero
/// velocities. The objective must already be unconstrained.
RunResult ueps_run(const ObjectiveSpec& objective, const UepsParams& params, std::uint64_t seed,
                   RngKind rng = RngKind::Mt64);

}  // namespace ueps

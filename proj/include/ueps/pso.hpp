#pragma once

// Global-best particle swarm with a linearly decaying inertia weight.
//
//   v <- w(t) v + c1 r1 .* (p - x) + c2 r2 .* (g - x)
//   x <- clip(x + v)

#include <cstdint>

#include "ueps/core.hpp"
#include "ueps/objectives.hpp"

namespace ueps {

struct PsoParams {
  // Recommended range for both coefficients is [1.8, 2].
  double c1 = 1.9;
  double c2 = 1.9;
  double w_min = 0.4;
  double w_max = 0.9;
  std::size_t n_particles = 50;
  std::size_t max_iter = 100;

  void validate() const;
};

/// Per-component draws for one step, each n x d.
struct PsoDraws {
  Matrix r1;
  Matrix r2;
};

/// Draws the full r1 block then the r2 block, particle-major.
PsoDraws draw_pso(std::size_t n_particles, std::size_t dim, RngStream& rng);

SwarmState apply_pso_update(SwarmState state, const PsoParams& params, const PsoDraws& draws,
                            std::size_t t, const ObjectiveSpec& objective);

SwarmState pso_step(SwarmState state, const PsoParams& params, RngStream& rng, std::size_t t,
                    const ObjectiveSpec& objective);

RunResult pso_run(const ObjectiveSpec& objective, const PsoParams& params, std::uint64_t seed,
                  RngKind rng = RngKind::Mt64);

}  // namespace ueps

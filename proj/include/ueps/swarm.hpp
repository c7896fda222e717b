#pragma once

// Pieces shared by both swarm optimizers: initialization, fitness
// evaluation with best-tracking, and the fixed-iteration run loop.

#include <chrono>
#include <cstdint>

#include "ueps/core.hpp"
#include "ueps/objectives.hpp"

namespace ueps {

/// Positions uniform in the bounds (row-major draw order), zero velocities,
/// personal bests set to the evaluated initial positions.
SwarmState initialize_swarm(const ObjectiveSpec& objective, std::size_t n_particles,
                            RngStream& rng);

/// Evaluates every particle, replaces personal bests on strict improvement and
/// recomputes the global best. Throws DomainError naming the particle on a
/// non-finite fitness.
void update_bests(SwarmState& state, const ObjectiveSpec& objective);

/// Evaluates f at one particle, raising DomainError on a non-finite result.
double evaluate_particle(const ObjectiveSpec& objective, std::span<const double> x,
                         std::size_t particle);

void check_run_preconditions(const ObjectiveSpec& objective, std::size_t n_particles,
                             std::size_t max_iter, const char* who);

/// Runs `step(state, rng, t)` for t = 0..max_iter-1 after initialization and
/// collects the trace, evaluation count and wall time.
template <typename Step>
RunResult run_swarm(const ObjectiveSpec& objective, std::size_t n_particles,
                    std::size_t max_iter, std::uint64_t seed, RngKind rng_kind, Step&& step) {
  const auto start = std::chrono::steady_clock::now();
  RngStream rng(seed, rng_kind);
  SwarmState state = initialize_swarm(objective, n_particles, rng);

  RunResult result;
  result.seed = seed;
  result.trace.best_so_far.reserve(max_iter);
  for (std::size_t t = 0; t < max_iter; ++t) {
    state = step(std::move(state), rng, t);
    result.trace.best_so_far.push_back(state.global_best_val);
  }
  result.best_pos = state.global_best_pos;
  result.best_val = state.global_best_val;
  result.evaluations = n_particles * (max_iter + 1);
  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace ueps

#include "ueps/swarm.hpp"

#include <cmath>

#include <fmt/core.h>

namespace ueps {

SwarmState initialize_swarm(const ObjectiveSpec& objective, std::size_t n_particles,
                            RngStream& rng) {
  const std::size_t d = objective.arity;
  const auto& lo = objective.bounds.lower();
  const auto& hi = objective.bounds.upper();

  SwarmState s;
  s.positions = Matrix(n_particles, d);
  for (std::size_t i = 0; i < n_particles; ++i) {
    for (std::size_t j = 0; j < d; ++j) s.positions(i, j) = rng.uniform(lo[j], hi[j]);
  }
  s.velocities = Matrix(n_particles, d);
  s.personal_best_pos = s.positions;
  s.personal_best_val.resize(n_particles);
  for (std::size_t i = 0; i < n_particles; ++i) {
    s.personal_best_val[i] = evaluate_particle(objective, s.positions.row(i), i);
  }
  s.refresh_global_best();
  return s;
}

double evaluate_particle(const ObjectiveSpec& objective, std::span<const double> x,
                         std::size_t particle) {
  const double f = evaluate(objective, x);
  if (!std::isfinite(f)) {
    throw DomainError(fmt::format("'{}' returned non-finite fitness {} for particle {}",
                                  objective.name, f, particle));
  }
  return f;
}

void update_bests(SwarmState& state, const ObjectiveSpec& objective) {
  for (std::size_t i = 0; i < state.n_particles(); ++i) {
    const auto x = state.positions.row(i);
    const double f = evaluate_particle(objective, x, i);
    if (f < state.personal_best_val[i]) {
      state.personal_best_val[i] = f;
      std::copy(x.begin(), x.end(), state.personal_best_pos.row(i).begin());
    }
  }
  state.refresh_global_best();
}

void check_run_preconditions(const ObjectiveSpec& objective, std::size_t n_particles,
                             std::size_t max_iter, const char* who) {
  if (objective.is_constrained()) {
    throw ConfigError(fmt::format(
        "{}: '{}' has constraints; wrap it with a penalty before optimizing", who,
        objective.name));
  }
  if (objective.arity != objective.bounds.dim()) {
    throw DimensionError(fmt::format("{}: '{}' has arity {} but {}-dimensional bounds", who,
                                     objective.name, objective.arity, objective.bounds.dim()));
  }
  if (n_particles < 1) throw ParameterError(fmt::format("{}: need at least one particle", who));
  if (max_iter < 1) throw ParameterError(fmt::format("{}: need at least one iteration", who));
}

}  // namespace ueps

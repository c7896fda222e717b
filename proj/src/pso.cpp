#include "ueps/pso.hpp"

#include <fmt/core.h>

#include "ueps/swarm.hpp"

namespace ueps {

void PsoParams::validate() const {
  // Zero coefficients are allowed so the cognitive or social pull can be
  // switched off.
  if (!(c1 >= 0.0 && c2 >= 0.0)) {
    throw ParameterError(fmt::format("pso: c1 and c2 must be >= 0, got {} and {}", c1, c2));
  }
  if (!(w_min >= 0.0 && w_min <= w_max)) {
    throw ParameterError(
        fmt::format("pso: need 0 <= w_min <= w_max, got w_min = {}, w_max = {}", w_min, w_max));
  }
  if (n_particles < 1) throw ParameterError("pso: need at least one particle");
  if (max_iter < 1) throw ParameterError("pso: need at least one iteration");
}

PsoDraws draw_pso(std::size_t n_particles, std::size_t dim, RngStream& rng) {
  PsoDraws draws{Matrix(n_particles, dim), Matrix(n_particles, dim)};
  for (Matrix* block : {&draws.r1, &draws.r2}) {
    for (std::size_t i = 0; i < n_particles; ++i) {
      for (std::size_t j = 0; j < dim; ++j) (*block)(i, j) = rng.uniform();
    }
  }
  return draws;
}

SwarmState apply_pso_update(SwarmState state, const PsoParams& params, const PsoDraws& draws,
                            std::size_t t, const ObjectiveSpec& objective) {
  const std::size_t n = state.n_particles();
  const std::size_t d = state.dim();
  if (d != objective.arity) {
    throw DimensionError(fmt::format("pso_step: swarm dimension {} but '{}' has arity {}", d,
                                     objective.name, objective.arity));
  }
  if (n != params.n_particles) {
    throw DimensionError(
        fmt::format("pso_step: swarm has {} particles, params say {}", n, params.n_particles));
  }
  if (t >= params.max_iter) {
    throw ParameterError(
        fmt::format("pso_step: iteration {} is past max_iter {}", t, params.max_iter));
  }
  if (draws.r1.rows() != n || draws.r2.rows() != n || draws.r1.cols() != d ||
      draws.r2.cols() != d) {
    throw DimensionError("pso_step: draw blocks do not match swarm shape");
  }

  const double w = inertia_weight(t, params.w_min, params.w_max, params.max_iter);
  const Vector& g = state.global_best_pos;

  for (std::size_t i = 0; i < n; ++i) {
    auto x = state.positions.row(i);
    auto v = state.velocities.row(i);
    const auto p = state.personal_best_pos.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      v[j] = w * v[j] + params.c1 * draws.r1(i, j) * (p[j] - x[j]) +
             params.c2 * draws.r2(i, j) * (g[j] - x[j]);
      x[j] += v[j];
    }
    clip_in_place(x, objective.bounds);
  }

  update_bests(state, objective);
  state.iteration = t + 1;
  return state;
}

SwarmState pso_step(SwarmState state, const PsoParams& params, RngStream& rng, std::size_t t,
                    const ObjectiveSpec& objective) {
  const auto draws = draw_pso(state.n_particles(), state.dim(), rng);
  return apply_pso_update(std::move(state), params, draws, t, objective);
}

RunResult pso_run(const ObjectiveSpec& objective, const PsoParams& params, std::uint64_t seed,
                  RngKind rng) {
  params.validate();
  check_run_preconditions(objective, params.n_particles, params.max_iter, "pso_run");
  return run_swarm(objective, params.n_particles, params.max_iter, seed, rng,
                   [&](SwarmState s, RngStream& rng, std::size_t t) {
                     return pso_step(std::move(s), params, rng, t, objective);
                   });
}

}  // namespace ueps

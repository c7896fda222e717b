#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include <fmt/core.h>

#include "ueps/swarm.hpp"
#include "ueps/ueps.hpp"

using namespace ueps;

namespace {

SwarmState state_at(const ObjectiveSpec& objective, const std::vector<Vector>& rows) {
  SwarmState s;
  const std::size_t d = rows.front().size();
  s.positions = Matrix(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) s.positions(i, j) = rows[i][j];
  }
  s.velocities = Matrix(rows.size(), d);
  s.personal_best_pos = s.positions;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    s.personal_best_val.push_back(evaluate(objective, rows[i]));
  }
  s.refresh_global_best();
  return s;
}

UepsDraws constant_draws(std::size_t n, std::size_t cols, double r1, double r2) {
  return {Matrix(n, cols, r1), Matrix(n, cols, r2)};
}

std::string six(double v) { return fmt::format("{:.6f}", v); }

}  // namespace

TEST_CASE("oscillation coefficient") {
  CHECK(oscillation_coefficient(1, 0, 0, 0.0, OscillationKernel::Text) == 1.0);
  CHECK(oscillation_coefficient(1, 0, 0, 0.5, OscillationKernel::Text) == 3.0);
  CHECK(oscillation_coefficient(1, 0.007, 0, 0.0, OscillationKernel::Code) == 0.0);
  CHECK(oscillation_coefficient(1, 0, 0, 0.5, OscillationKernel::Code) == 2.0);

  SUBCASE("range and decay") {
    RngStream rng(1);
    for (int k = 0; k < 1000; ++k) {
      const double r1 = rng.uniform();
      const double A = rng.uniform(0.1, 3);
      const double b = rng.uniform(0, 0.1);
      const auto t = static_cast<std::size_t>(rng.uniform(0, 200));
      const double env = A * std::exp(-b * static_cast<double>(t));
      const double text = oscillation_coefficient(A, b, t, r1, OscillationKernel::Text);
      const double code = oscillation_coefficient(A, b, t, r1, OscillationKernel::Code);
      CHECK(text >= env * (1 - 1e-12));
      CHECK(text <= 3 * env * (1 + 1e-12));
      CHECK(code >= 0.0);
      CHECK(code <= 2 * env * (1 + 1e-12));
      if (code > 1e-12) {
        const double next = oscillation_coefficient(A, b, t + 1, r1, OscillationKernel::Code);
        CHECK(next / code == doctest::Approx(std::exp(-b)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("perturbation schedules") {
  CHECK(perturbation_scale(0.8, 0, PerturbationSchedule::Geometric) == 1.0);
  CHECK(perturbation_scale(0.8, 2, PerturbationSchedule::Geometric) == doctest::Approx(0.64));
  CHECK(perturbation_scale(0.8, 7, PerturbationSchedule::Constant) == 0.8);
  CHECK(perturbation_scale(0.0, 0, PerturbationSchedule::Geometric) == 0.0);
  CHECK(perturbation_scale(0.0, 0, PerturbationSchedule::Constant) == 0.0);
}

TEST_CASE("params validation") {
  UepsParams p;
  CHECK_NOTHROW(p.validate());
  auto bad = [](auto mutate) {
    UepsParams q;
    mutate(q);
    CHECK_THROWS_AS(q.validate(), ParameterError);
  };
  bad([](UepsParams& q) { q.amplitude = 0; });
  bad([](UepsParams& q) { q.damping_rate = -0.1; });
  bad([](UepsParams& q) { q.alpha = -1; });
  bad([](UepsParams& q) { q.w_min = 0.95; });
  bad([](UepsParams& q) { q.n_particles = 0; });
  bad([](UepsParams& q) { q.max_iter = 0; });
}

TEST_CASE("draw order and shape") {
  UepsParams p;
  RngStream a(99), b(99);
  const auto draws = draw_ueps(p, 3, 2, a);
  CHECK(draws.r1.cols() == 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(draws.r1(i, 0) == b.uniform());
  for (std::size_t i = 0; i < 3; ++i) CHECK(draws.r2(i, 0) == b.uniform());

  p.granularity = RandomGranularity::PerDimension;
  const auto per_dim = draw_ueps(p, 3, 2, a);
  CHECK(per_dim.r1.cols() == 2);
  CHECK(per_dim.r2.rows() == 3);
}

TEST_CASE("step at the fixed point leaves the swarm in place") {
  const auto sphere = lookup("sphere");
  UepsParams p;
  p.n_particles = 4;
  p.alpha = 0.0;
  const auto s0 = state_at(sphere, {{3, -2}, {3, -2}, {3, -2}, {3, -2}});

  const auto s1 = apply_ueps_update(s0, p, constant_draws(4, 1, 0.0, 0.9), 0, sphere);
  CHECK(s1.positions == s0.positions);
  CHECK(s1.velocities == s0.velocities);
  CHECK(s1.iteration == 1);

  SUBCASE("for any draws and kernel over a whole run") {
    p.kernel = OscillationKernel::Text;
    RngStream rng(3);
    auto s = s0;
    for (std::size_t t = 0; t < p.max_iter; ++t) s = ueps_step(s, p, rng, t, sphere);
    CHECK(s.positions == s0.positions);
    CHECK(s.global_best_val == s0.global_best_val);
  }
}

TEST_CASE("strong damping with zero inertia and alpha zeroes velocities") {
  const auto sphere = lookup("sphere");
  UepsParams p;
  p.n_particles = 3;
  p.max_iter = 5;
  p.w_min = p.w_max = 0.0;
  p.alpha = 0.0;
  p.damping_rate = 1e6;
  auto s = state_at(sphere, {{10, 10}, {-4, 7}, {1, 1}});
  s.velocities(0, 0) = 50;
  RngStream rng(17);
  s = ueps_step(s, p, rng, 1, sphere);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.velocities(i, 0) == 0.0);
    CHECK(s.velocities(i, 1) == 0.0);
  }
}

TEST_CASE("hand-traced single particle step") {
  const auto sphere = lookup("sphere");
  UepsParams p;
  p.n_particles = 1;
  p.w_min = p.w_max = 0.0;
  p.alpha = 0.0;
  p.kernel = OscillationKernel::Code;
  p.amplitude = 1.0;
  p.damping_rate = 0.0;
  auto s = state_at(sphere, {{5, 5}});
  s.global_best_pos = {0, 0};
  const auto next = apply_ueps_update(s, p, constant_draws(1, 1, 0.5, 0.3), 0, sphere);
  CHECK(next.velocities(0, 0) == -10.0);
  CHECK(next.velocities(0, 1) == -10.0);
  CHECK(next.positions(0, 0) == -5.0);
  CHECK(next.positions(0, 1) == -5.0);

  SUBCASE("clamped at the box face") {
    auto narrow = sphere;
    narrow.bounds = BoundsBox({-6, -6}, {6, 6});
    auto s2 = s;
    s2.global_best_pos = {-1, -1};
    // v = 2 (-1 - 5) = -12, x = 5 - 12 = -7 -> -6.
    const auto n2 = apply_ueps_update(s2, p, constant_draws(1, 1, 0.5, 0.3), 0, narrow);
    CHECK(n2.positions(0, 0) == -6.0);
    CHECK(n2.velocities(0, 0) == -12.0);
  }

  SUBCASE("perturbation term") {
    p.alpha = 0.8;
    p.schedule = PerturbationSchedule::Constant;
    // r1 = 0 kills the pull; v = 0.8 (0.75 - 0.5) = 0.2.
    const auto n3 = apply_ueps_update(s, p, constant_draws(1, 1, 0.0, 0.75), 0, sphere);
    CHECK(n3.velocities(0, 0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(n3.positions(0, 1) == doctest::Approx(5.2).epsilon(1e-15));
  }
}

TEST_CASE("step errors") {
  const auto sphere = lookup("sphere");
  UepsParams p;
  p.n_particles = 2;
  const auto s = state_at(sphere, {{1, 1}, {2, 2}});
  RngStream rng(1);
  CHECK_THROWS_AS(ueps_step(s, p, rng, p.max_iter, sphere), ParameterError);
  p.n_particles = 3;
  CHECK_THROWS_AS(ueps_step(s, p, rng, 0, sphere), DimensionError);
  p.n_particles = 2;
  CHECK_THROWS_AS(ueps_step(s, p, rng, 0, lookup("pressure_vessel")), DimensionError);

  auto nan_objective = sphere;
  nan_objective.objective = [](std::span<const double> x) {
    return x[0] > 50 ? std::numeric_limits<double>::quiet_NaN() : x[0] * x[0];
  };
  p.n_particles = 2;
  p.alpha = 0;
  auto s2 = state_at(sphere, {{0, 0}, {60, 0}});
  s2.global_best_pos = {60, 0};
  try {
    apply_ueps_update(s2, p, constant_draws(2, 1, 0.0, 0.5), 0, nan_objective);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("particle 1") != std::string::npos);
  }
}

TEST_CASE("swarm invariants hold after every step") {
  for (const char* name : {"sphere", "ackley", "eggholder", "michalewicz"}) {
    const auto obj = lookup(name);
    for (auto granularity : {RandomGranularity::PerParticle, RandomGranularity::PerDimension}) {
      UepsParams p;
      p.granularity = granularity;
      p.n_particles = 20;
      RngStream rng(5);
      auto s = initialize_swarm(obj, p.n_particles, rng);
      REQUIRE(satisfies_invariants(s, obj.bounds));
      for (std::size_t t = 0; t < p.max_iter; ++t) {
        const auto before = s.personal_best_val;
        s = ueps_step(s, p, rng, t, obj);
        REQUIRE(satisfies_invariants(s, obj.bounds));
        for (std::size_t i = 0; i < before.size(); ++i) CHECK(s.personal_best_val[i] <= before[i]);
      }
    }
  }
}

TEST_CASE("ueps_run") {
  const auto sphere = lookup("sphere");
  const UepsParams defaults;

  SUBCASE("solves sphere") {
    for (std::uint64_t seed : {0, 1, 2, 42}) {
      const auto r = ueps_run(sphere, defaults, seed);
      CHECK(r.best_val <= 1e-6);
      CHECK(r.evaluations == 50 * 101);
      CHECK(r.trace.best_so_far.size() == 100);
      CHECK(r.best_val == r.trace.best_so_far.back());
      CHECK(r.seed == seed);
      CHECK(r.wall_time_s > 0.0);
    }
  }

  SUBCASE("single particle with no perturbation keeps its initial value") {
    UepsParams p;
    p.n_particles = 1;
    p.max_iter = 1;
    p.alpha = 0.0;
    p.amplitude = 3.7;
    const auto r = ueps_run(sphere, p, 8);
    RngStream rng(8);
    const Vector x0{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    CHECK(r.best_val == evaluate(sphere, x0));
    CHECK(r.best_pos == x0);
    CHECK(r.evaluations == 2);
  }

  SUBCASE("deterministic") {
    for (auto kernel : {OscillationKernel::Text, OscillationKernel::Code}) {
      UepsParams p;
      p.kernel = kernel;
      p.granularity = RandomGranularity::PerDimension;
      p.schedule = PerturbationSchedule::Constant;
      const auto a = ueps_run(lookup("ackley"), p, 77);
      const auto b = ueps_run(lookup("ackley"), p, 77);
      CHECK(a.best_pos == b.best_pos);
      CHECK(a.best_val == b.best_val);
      CHECK(a.trace == b.trace);
      CHECK(a.evaluations == b.evaluations);
    }
  }

  SUBCASE("monotone traces") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      CHECK(ueps_run(sphere, defaults, seed).trace.is_non_increasing());
      CHECK(ueps_run(lookup("ackley"), defaults, seed).trace.is_non_increasing());
    }
  }

  SUBCASE("rejects constrained objectives") {
    CHECK_THROWS_AS(ueps_run(lookup("pressure_vessel"), defaults, 0), ConfigError);
  }
}

// With the numpy-compatible stream and seed 42, the default configuration
// follows the published reference run; these are the 6-decimal values it
// reports.
TEST_CASE("reference runs with the numpy stream") {
  const UepsParams defaults;

  const auto ros = ueps_run(lookup("rosenbrock"), defaults, 42, RngKind::Numpy);
  CHECK(six(ros.best_pos[0]) == "0.999997");
  CHECK(six(ros.best_pos[1]) == "0.999995");

  const auto easom = ueps_run(lookup("easom"), defaults, 42, RngKind::Numpy);
  CHECK(six(easom.best_pos[0]) == "3.141594");
  CHECK(six(easom.best_pos[1]) == "3.141593");

  const auto pv = ueps_run(static_penalty_wrap(lookup("pressure_vessel"), 1e9), defaults, 42,
                           RngKind::Numpy);
  CHECK(six(pv.best_pos[0]) == "0.778169");
  CHECK(six(pv.best_pos[1]) == "0.384698");
  CHECK(six(pv.best_pos[2]) == "40.319619");
  CHECK(six(pv.best_pos[3]) == "200.000000");
  CHECK(six(pv.best_val) == "5885.473070");
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "oscillators.hpp"
#include "ueps/damping.hpp"

using namespace ueps;
using namespace ueps::damping;

namespace {

OscillatorParams mck(double m, double c, double k, double A = 1.0, double B = 0.0,
                     double phi = 0.0) {
  return OscillatorParams{m, c, k, A, B, phi};
}

}  // namespace

TEST_CASE("regime classification") {
  CHECK(classify_regime(mck(1, 4, 1)) == Regime::Overdamped);
  CHECK(classify_regime(mck(1, 2, 1)) == Regime::Critical);
  CHECK(classify_regime(mck(1, 0.2, 1)) == Regime::Underdamped);
  CHECK(classify_regime(mck(1, 0, 1)) == Regime::Underdamped);

  // Relative band of 1e-9 around gamma = omega0.
  CHECK(classify_regime(mck(1, 2 * (1 + 5e-10), 1)) == Regime::Critical);
  CHECK(classify_regime(mck(1, 2 * (1 + 1e-8), 1)) == Regime::Overdamped);
  CHECK(classify_regime(mck(1, 2 * (1 - 1e-8), 1)) == Regime::Underdamped);

  SUBCASE("derived rates") {
    const auto p = mck(2, 6, 50);
    CHECK(p.gamma() == 1.5);
    CHECK(p.omega0() == 5.0);
    CHECK(p.omega_d() == doctest::Approx(std::sqrt(25 - 2.25)).epsilon(1e-15));
    CHECK(mck(1, 4, 1).omega_d() == 0.0);
  }

  SUBCASE("invariant under scaling m, c, k together") {
    RngStream rng(21);
    for (auto regime : {Regime::Overdamped, Regime::Critical, Regime::Underdamped}) {
      for (int k = 0; k < 100; ++k) {
        const auto p = testgen::random_oscillator(regime, rng);
        // Powers of two keep the scaled gamma and omega0 bit-identical.
        for (double s : {0.25, 2.0, 1024.0}) {
          const auto q = mck(s * p.mass, s * p.damping_c, s * p.stiffness);
          CHECK(classify_regime(q) == classify_regime(p));
        }
        CHECK(classify_regime(p) == regime);
      }
    }
  }

  SUBCASE("from_rates") {
    const auto p = OscillatorParams::from_rates(0.5, 3.0, 2.0, 1.0, 0.25);
    CHECK(p.mass == 1.0);
    CHECK(p.damping_c == 1.0);
    CHECK(p.stiffness == 9.0);
    CHECK(p.gamma() == 0.5);
    CHECK(p.omega0() == 3.0);
  }
}

TEST_CASE("closed-form positions") {
  CHECK(position(mck(1, 0.2, 1, 2.5), 0.0) == 2.5);
  CHECK(position(mck(1, 2, 1, -1.5, 4.0), 0.0) == -1.5);
  CHECK(position(mck(1, 0, 1, 1.0), std::numbers::pi) == doctest::Approx(-1.0).epsilon(1e-15));

  // Overdamped m=1, c=5, k=4: lambda = -1, -4.
  const auto od = mck(1, 5, 4, 2.0, 3.0);
  CHECK(position(od, 0.0) == 5.0);
  CHECK(position(od, 1.0) ==
        doctest::Approx(2 * std::exp(-1.0) + 3 * std::exp(-4.0)).epsilon(1e-14));

  // Critical (A + B t) e^(-t) at t = 2.
  CHECK(position(mck(1, 2, 1, 1.0, 0.5), 2.0) ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("ODE residual vanishes in every regime") {
  RngStream rng(2024);
  for (auto regime : {Regime::Overdamped, Regime::Critical, Regime::Underdamped}) {
    for (int set = 0; set < 100; ++set) {
      const auto p = testgen::random_oscillator(regime, rng);
      REQUIRE(classify_regime(p) == regime);
      const double tol = 1e-4 * std::max(1.0, p.stiffness * std::abs(p.amp_A));
      for (int i = 0; i < 20; ++i) {
        const double t = 0.1 + (5.0 - 0.1) * (i + 0.5) / 20.0;
        const double r = oracle::ode_residual([&](double s) { return position(p, s); }, p.mass,
                                              p.damping_c, p.stiffness, t);
        CHECK(std::abs(r) <= tol);
      }
    }
  }
}

TEST_CASE("overdamped and critical responses do not oscillate") {
  RngStream rng(8);
  for (auto regime : {Regime::Overdamped, Regime::Critical}) {
    for (int set = 0; set < 20; ++set) {
      auto p = testgen::random_oscillator(regime, rng);
      p.amp_A = rng.uniform(0.1, 5.0);
      p.amp_B = rng.uniform(0.0, 5.0);
      const double t_end = 10.0 / p.gamma();
      bool positive = true;
      for (int i = 0; i < 10000; ++i) {
        positive = positive && position(p, t_end * i / 9999.0) >= 0.0;
      }
      CHECK(positive);
    }
  }
}

TEST_CASE("curve sampling") {
  const auto p = mck(1, 0.4, 4, 3.0);
  const auto two = sample_curve(p, 0.5, 2.0, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].t == 0.5);
  CHECK(two[1].t == 2.0);
  CHECK(two[0].x == position(p, 0.5));
  CHECK(two[1].x == position(p, 2.0));

  const auto curve = sample_curve(p, 0.0, 10.0, 201);
  CHECK(curve.size() == 201);
  CHECK(curve[100].t == doctest::Approx(5.0).epsilon(1e-15));
  for (const auto& s : curve) {
    CHECK(std::abs(s.x) <= std::abs(p.amp_A) * std::exp(-p.gamma() * s.t) + 1e-12);
  }

  for (const auto& s : sample_curve(mck(2, 0, 7, -1.25), 0.0, 30.0, 500)) {
    CHECK(std::abs(s.x) <= 1.25);
  }

  CHECK_THROWS_AS(sample_curve(p, 1.0, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(sample_curve(p, 2.0, 1.0, 10), ParameterError);
  CHECK_THROWS_AS(sample_curve(p, 0.0, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(sample_curve(mck(0, 1, 1), 0.0, 1.0, 5), ParameterError);
  CHECK_THROWS_AS(sample_curve(mck(1, -1, 1), 0.0, 1.0, 5), ParameterError);
  CHECK_THROWS_AS(sample_curve(mck(1, 1, 0), 0.0, 1.0, 5), ParameterError);
}

TEST_CASE("curve CSV") {
  const auto csv = format_curve_csv(sample_curve(mck(1, 0, 1), 0.0, 1.0, 3));
  CHECK(csv.rfind("t,x\n", 0) == 0);
  CHECK(csv.find("0,1\n") != std::string::npos);
  CHECK(csv.find("0.5,") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 4);
}

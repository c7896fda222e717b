#include "ueps/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>
#include <fmt/ranges.h>

namespace ueps {
namespace {

using std::numbers::pi;

double sq(double v) { return v * v; }

// Unconstrained test functions.

double ackley(std::span<const double> x) {
  const double f1 = -20.0 * std::exp(-0.2 * std::sqrt(0.5 * (sq(x[0]) + sq(x[1]))));
  const double f2 =
      -std::exp(0.5 * (std::cos(2 * pi * x[0]) + std::cos(2 * pi * x[1]))) + std::exp(1.0) + 20.0;
  return f1 + f2;
}

double sphere(std::span<const double> x) {
  double f = 0.0;
  for (double v : x) f += v * v;
  return f;
}

double rosenbrock(std::span<const double> x) {
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    f += 100.0 * sq(x[i + 1] - sq(x[i])) + sq(1.0 - x[i]);
  }
  return f;
}

double beale(std::span<const double> x) {
  return sq(1.5 - x[0] + x[0] * x[1]) + sq(2.25 - x[0] + x[0] * sq(x[1])) +
         sq(2.625 - x[0] + x[0] * x[1] * x[1] * x[1]);
}

double booth(std::span<const double> x) {
  return sq(x[0] + 2 * x[1] - 7) + sq(2 * x[0] + x[1] - 5);
}

double bukin_n6(std::span<const double> x) {
  return 100.0 * std::sqrt(std::abs(x[1] - 0.01 * sq(x[0]))) + 0.01 * std::abs(x[0] + 10.0);
}

double matyas(std::span<const double> x) {
  return 0.26 * (sq(x[0]) + sq(x[1])) - 0.48 * x[0] * x[1];
}

// sin^2(3 pi y) in the last term, as in the reference implementation.
double levy(std::span<const double> x) {
  const double s1 = std::sin(3 * pi * x[0]);
  const double s2 = std::sin(3 * pi * x[1]);
  return sq(s1) + sq(x[0] - 1) * (1 + sq(s2)) + sq(x[1] - 1) * (1 + sq(s2));
}

double easom(std::span<const double> x) {
  return -std::cos(x[0]) * std::cos(x[1]) * std::exp(-(sq(x[0] - pi) + sq(x[1] - pi)));
}

// No square root inside the second sine, as published; differs from the
// textbook eggholder.
double eggholder(std::span<const double> x) {
  const double f1 = -(x[1] + 47) * std::sin(std::sqrt(std::abs(x[0] / 2 + (x[1] + 47))));
  const double f2 = -x[0] * std::sin(std::abs(x[0] - (x[1] + 47)));
  return f1 + f2;
}

double mccormick(std::span<const double> x) {
  return std::sin(x[0] + x[1]) + sq(x[0] - x[1]) - 1.5 * x[0] + 2.5 * x[1] + 1;
}

double eggcrate(std::span<const double> x) {
  return sq(x[0]) + sq(x[1]) + 25 * (sq(std::sin(x[0])) + sq(std::sin(x[1])));
}

double michalewicz(std::span<const double> x) {
  double f = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    f += std::sin(x[i]) * std::pow(std::sin(static_cast<double>(i + 1) * sq(x[i]) / pi), 20);
  }
  return -f;
}

// Constrained problems. Constraint functions return the raw g(x); the
// positive part is taken by the caller.

double pressure_vessel_cost(std::span<const double> x) {
  return kPressureVesselShellCoefficient * x[0] * x[2] * x[3] + 1.7781 * x[1] * sq(x[2]) +
         3.1661 * sq(x[0]) * x[3] + 19.84 * sq(x[0]) * x[2];
}

double spring_weight(std::span<const double> x) { return (x[2] + 2) * x[1] * sq(x[0]); }

ObjectiveSpec make(std::string name, ScalarFn f, Vector lower, Vector upper,
                   std::optional<KnownOptimum> optimum = std::nullopt) {
  const std::size_t d = lower.size();
  return ObjectiveSpec{std::move(name),
                       d,
                       std::move(f),
                       BoundsBox(std::move(lower), std::move(upper)),
                       {},
                       {},
                       std::move(optimum)};
}

std::vector<ObjectiveSpec> build_registry() {
  std::vector<ObjectiveSpec> r;
  r.push_back(make("ackley", ackley, {-5, -5}, {5, 5}, KnownOptimum{{0, 0}, 0}));
  r.push_back(make("sphere", sphere, {-100, -100}, {100, 100}, KnownOptimum{{0, 0}, 0}));
  r.push_back(make("rosenbrock", rosenbrock, {-10, -10}, {10, 10}, KnownOptimum{{1, 1}, 0}));
  r.push_back(make("beale", beale, {-4.5, -4.5}, {4.5, 4.5}, KnownOptimum{{3, 0.5}, 0}));
  r.push_back(make("booth", booth, {-10, -10}, {10, 10}, KnownOptimum{{1, 3}, 0}));
  r.push_back(make("bukin_n6", bukin_n6, {-15, -3}, {-5, 3}, KnownOptimum{{-10, 1}, 0}));
  r.push_back(make("matyas", matyas, {-10, -10}, {10, 10}, KnownOptimum{{0, 0}, 0}));
  r.push_back(make("levy", levy, {-10, -10}, {10, 10}, KnownOptimum{{1, 1}, 0}));
  r.push_back(make("easom", easom, {-100, -100}, {100, 100}, KnownOptimum{{pi, pi}, -1}));
  r.push_back(make("eggholder", eggholder, {-512, -512}, {512, 512}));
  r.push_back(make("mccormick", mccormick, {-1.5, -3}, {4, 4}));
  r.push_back(make("eggcrate", eggcrate, {-5, -5}, {5, 5}, KnownOptimum{{0, 0}, 0}));
  r.push_back(make("michalewicz", michalewicz, {0, 0}, {pi, pi}));

  {
    auto s = make("rosenbrock_constrained", rosenbrock, {-1.5, -0.5}, {1.5, 2.5},
                  KnownOptimum{{1, 1}, 0});
    s.inequality_constraints = {
        {"cubic", [](std::span<const double> x) { return std::pow(x[0] - 1, 3) - x[1] + 1; },
         1.0},
        {"line", [](std::span<const double> x) { return x[0] + x[1] - 2; }, 1.0},
    };
    r.push_back(std::move(s));
  }
  {
    auto s = make("pressure_vessel", pressure_vessel_cost, {0, 0, 10, 10}, {99, 99, 200, 200});
    s.inequality_constraints = {
        {"shell_thickness", [](std::span<const double> x) { return -x[0] + 0.0193 * x[2]; },
         1.0},
        {"head_thickness", [](std::span<const double> x) { return -x[1] + 0.00954 * x[2]; },
         1.0},
        {"volume",
         [](std::span<const double> x) {
           return -pi * sq(x[2]) * x[3] - (4.0 / 3.0) * pi * x[2] * x[2] * x[2] + 1296000.0;
         },
         1296000.0},
        {"length", [](std::span<const double> x) { return x[3] - 240.0; }, 240.0},
    };
    r.push_back(std::move(s));
  }
  {
    auto s = make("spring", spring_weight, {0.05, 0.25, 2}, {2, 1.30, 15});
    s.inequality_constraints = {
        {"deflection",
         [](std::span<const double> x) {
           return 1 - (x[2] * x[1] * x[1] * x[1]) / (71785 * std::pow(x[0], 4));
         },
         1.0},
        {"shear_stress",
         [](std::span<const double> x) {
           const double g = (4 * sq(x[1]) - x[0] * x[1]) /
                            (12566 * (x[1] * x[0] * x[0] * x[0] - std::pow(x[0], 4)));
           return g + 1 / (5108 * sq(x[0])) - 1;
         },
         1.0},
        {"surge_frequency",
         [](std::span<const double> x) { return 1 - (140.45 * x[0]) / (x[2] * sq(x[1])); },
         1.0},
        {"outer_diameter", [](std::span<const double> x) { return (x[0] + x[1]) / 1.5 - 1; },
         1.0},
    };
    r.push_back(std::move(s));
  }
  return r;
}

const std::vector<ObjectiveSpec>& registry() {
  static const std::vector<ObjectiveSpec> specs = build_registry();
  return specs;
}

void check_arity(const ObjectiveSpec& spec, std::span<const double> x, const char* what) {
  if (x.size() != spec.arity) {
    throw DimensionError(fmt::format("{}: '{}' expects {} components, got {}", what,
                                     spec.name, spec.arity, x.size()));
  }
}

void check_constrained(const ObjectiveSpec& spec, const char* what) {
  if (!spec.is_constrained()) {
    throw ParameterError(fmt::format("{}: '{}' has no constraints", what, spec.name));
  }
}

}  // namespace

PenaltyWeights PenaltyWeights::unit(const ObjectiveSpec& spec) {
  return {Vector(spec.inequality_constraints.size(), 1.0),
          Vector(spec.equality_constraints.size(), 1.0)};
}

const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
  }();
  return names;
}

ObjectiveSpec lookup(std::string_view name) {
  for (const auto& s : registry()) {
    if (s.name == name) return s;
  }
  throw NotFoundError(fmt::format("unknown problem '{}'; valid names: {}", name,
                                  fmt::join(registry_names(), ", ")));
}

double evaluate(const ObjectiveSpec& spec, std::span<const double> x) {
  check_arity(spec, x, "evaluate");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw DomainError(
          fmt::format("evaluate: '{}' got non-finite component x[{}] = {}", spec.name, i, x[i]));
    }
  }
  return spec.objective(x);
}

ViolationReport violations(const ObjectiveSpec& spec, std::span<const double> x) {
  check_arity(spec, x, "violations");
  ViolationReport rep;
  rep.total_count = spec.constraint_count();
  for (const auto& g : spec.inequality_constraints) {
    const double excess = std::max(g.fn(x), 0.0);
    rep.inequality_excess.push_back(excess);
    if (excess == 0.0) ++rep.satisfied_count;
  }
  for (const auto& h : spec.equality_constraints) {
    const double excess = std::abs(h.fn(x));
    rep.equality_excess.push_back(excess);
    if (excess <= kEqualityTolerance) ++rep.satisfied_count;
  }
  return rep;
}

double max_relative_violation(const ObjectiveSpec& spec, std::span<const double> x) {
  const auto rep = violations(spec, x);
  double worst = 0.0;
  for (std::size_t k = 0; k < rep.inequality_excess.size(); ++k) {
    worst = std::max(worst, rep.inequality_excess[k] / spec.inequality_constraints[k].scale);
  }
  for (std::size_t j = 0; j < rep.equality_excess.size(); ++j) {
    const double e = rep.equality_excess[j] <= kEqualityTolerance ? 0.0 : rep.equality_excess[j];
    worst = std::max(worst, e / spec.equality_constraints[j].scale);
  }
  return worst;
}

bool is_feasible(const ObjectiveSpec& spec, std::span<const double> x,
                 double relative_tolerance) {
  return max_relative_violation(spec, x) <= relative_tolerance;
}

ObjectiveSpec additive_penalty_wrap(const ObjectiveSpec& spec, const PenaltyWeights& weights) {
  check_constrained(spec, "additive_penalty_wrap");
  if (weights.inequality_weights.size() != spec.inequality_constraints.size() ||
      weights.equality_weights.size() != spec.equality_constraints.size()) {
    throw ParameterError(fmt::format(
        "additive_penalty_wrap: '{}' has {} inequality and {} equality constraints, got {} "
        "and {} weights",
        spec.name, spec.inequality_constraints.size(), spec.equality_constraints.size(),
        weights.inequality_weights.size(), weights.equality_weights.size()));
  }
  auto positive = [](double w) { return w > 0.0; };
  if (!std::all_of(weights.inequality_weights.begin(), weights.inequality_weights.end(),
                   positive) ||
      !std::all_of(weights.equality_weights.begin(), weights.equality_weights.end(),
                   positive)) {
    throw ParameterError("additive_penalty_wrap: penalty weights must be positive");
  }

  ObjectiveSpec out = spec;
  out.inequality_constraints.clear();
  out.equality_constraints.clear();
  out.objective = [spec, weights](std::span<const double> x) {
    double F = spec.objective(x);
    for (std::size_t k = 0; k < spec.inequality_constraints.size(); ++k) {
      F += weights.inequality_weights[k] * std::max(spec.inequality_constraints[k].fn(x), 0.0);
    }
    for (std::size_t j = 0; j < spec.equality_constraints.size(); ++j) {
      F += weights.equality_weights[j] * std::abs(spec.equality_constraints[j].fn(x));
    }
    return F;
  };
  return out;
}

ObjectiveSpec static_penalty_wrap(const ObjectiveSpec& spec, double K) {
  check_constrained(spec, "static_penalty_wrap");
  if (!(K > 0.0)) throw ParameterError(fmt::format("static_penalty_wrap: K must be > 0, got {}", K));

  ObjectiveSpec out = spec;
  out.inequality_constraints.clear();
  out.equality_constraints.clear();
  out.objective = [spec, K](std::span<const double> x) {
    const auto rep = violations(spec, x);
    if (rep.satisfied_count == rep.total_count) return spec.objective(x);
    return K * (1.0 - static_cast<double>(rep.satisfied_count) /
                          static_cast<double>(rep.total_count));
  };
  return out;
}

}  // namespace ueps

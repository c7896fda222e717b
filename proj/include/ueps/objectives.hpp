#pragma once

// Benchmark functions, constrained engineering problems, and the penalty
// transforms that turn a constrained problem into a box-bounded one.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ueps/core.hpp"

namespace ueps {

using ScalarFn = std::function<double(std::span<const double>)>;

/// g(x) <= 0 for inequalities, h(x) = 0 for equalities. `scale` is the
/// constraint's reference magnitude, used only for relative-violation
/// reporting.
struct Constraint {
  std::string name;
  ScalarFn fn;
  double scale = 1.0;
};

struct KnownOptimum {
  Vector x;
  double f = 0.0;
};

struct ObjectiveSpec {
  std::string name;
  std::size_t arity = 0;
  ScalarFn objective;
  BoundsBox bounds;
  std::vector<Constraint> inequality_constraints;
  std::vector<Constraint> equality_constraints;
  std::optional<KnownOptimum> known_optimum;

  bool is_constrained() const {
    return !inequality_constraints.empty() || !equality_constraints.empty();
  }
  std::size_t constraint_count() const {
    return inequality_constraints.size() + equality_constraints.size();
  }
};

struct PenaltyWeights {
  Vector inequality_weights;
  Vector equality_weights;

  /// Weight 1 for every constraint of `spec`.
  static PenaltyWeights unit(const ObjectiveSpec& spec);
};

struct ViolationReport {
  Vector inequality_excess;  // max(g_k(x), 0)
  Vector equality_excess;    // |h_j(x)|
  std::size_t satisfied_count = 0;
  std::size_t total_count = 0;
};

/// |h_j(x)| at or below this counts as satisfied.
inline constexpr double kEqualityTolerance = 1e-8;
/// Default relative tolerance for feasibility reporting.
inline constexpr double kDefaultRelativeTolerance = 1e-4;
/// Static-penalty constant.
inline constexpr double kDefaultStaticK = 1e9;
/// Cost coefficient of the x1*x3*x4 term in the pressure-vessel objective.
inline constexpr double kPressureVesselShellCoefficient = 0.6224;

const std::vector<std::string>& registry_names();

/// Throws NotFoundError (listing the valid names) for an unknown name.
ObjectiveSpec lookup(std::string_view name);

/// f(x). Bounds membership is not required. Throws DimensionError on a
/// length mismatch and DomainError on non-finite input.
double evaluate(const ObjectiveSpec& spec, std::span<const double> x);

ViolationReport violations(const ObjectiveSpec& spec, std::span<const double> x);

/// Largest inequality excess divided by its constraint scale, together with
/// equality excess; 0 for a feasible point.
double max_relative_violation(const ObjectiveSpec& spec, std::span<const double> x);

bool is_feasible(const ObjectiveSpec& spec, std::span<const double> x,
                 double relative_tolerance = kDefaultRelativeTolerance);

/// F(x) = f(x) + sum r_k max(g_k(x), 0) + sum c_j |h_j(x)|. The returned spec
/// has no constraints.
ObjectiveSpec additive_penalty_wrap(const ObjectiveSpec& spec, const PenaltyWeights& weights);

/// F(x) = f(x) when every constraint is satisfied, K (1 - s/m) otherwise,
/// where s counts satisfied constraints out of m.
ObjectiveSpec static_penalty_wrap(const ObjectiveSpec& spec, double K = kDefaultStaticK);

}  // namespace ueps

#pragma once

// Shared domain types for the swarm optimizers: search boxes, the seeded
// random stream, swarm state and run results.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ueps {

using Vector = std::vector<double>;

// Error taxonomy. Everything derives from std::runtime_error so callers that
// do not care about the category can catch one type.
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Axis-aligned search region [lower, upper].
class BoundsBox {
 public:
  /// Throws ParameterError unless the vectors are non-empty, of equal
  /// length, and lower[i] < upper[i] everywhere.
  BoundsBox(Vector lower, Vector upper);

  std::size_t dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  bool contains(std::span<const double> x) const;

 private:
  Vector lower_;
  Vector upper_;
};

enum class RngKind {
  // std::mt19937_64; each draw is the top 53 bits of one output.
  Mt64,
  // 32-bit MT19937 seeded like numpy's legacy np.random.seed(int), with
  // numpy's random_sample construction from two outputs. Reproduces numpy
  // RandomState draw sequences.
  Numpy,
};

std::string_view to_string(RngKind k);

/// Seeded stream of uniform draws on [0, 1). Identical (kind, seed) pairs
/// give identical sequences; the value construction does not depend on the
/// standard library's distribution code.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, RngKind kind = RngKind::Mt64);

  std::uint64_t seed() const { return seed_; }
  RngKind kind() const { return kind_; }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t seed_;
  RngKind kind_;
  std::mt19937_64 mt64_;
  std::mt19937 mt32_;
};

/// Row-major n x d matrix; each row is one particle.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SwarmState {
  Matrix positions;
  Matrix velocities;
  Matrix personal_best_pos;
  Vector personal_best_val;
  Vector global_best_pos;
  double global_best_val = 0.0;
  std::size_t iteration = 0;

  std::size_t n_particles() const { return positions.rows(); }
  std::size_t dim() const { return positions.cols(); }

  /// Recomputes the global best from the personal bests. Ties resolve to the
  /// lowest particle index.
  void refresh_global_best();

  bool operator==(const SwarmState&) const = default;
};

/// Checks the structural invariants: global best equals the minimum personal
/// best (lowest index on ties) and every position row lies in the box.
bool satisfies_invariants(const SwarmState& state, const BoundsBox& box);

struct ProgressTrace {
  Vector best_so_far;

  bool is_non_increasing() const;
  bool operator==(const ProgressTrace&) const = default;
};

struct RunResult {
  Vector best_pos;
  double best_val = 0.0;
  ProgressTrace trace;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
};

/// Linear decay w_max -> w_min over t_max iterations.
double inertia_weight(std::size_t t, double w_min, double w_max, std::size_t t_max);

/// Componentwise clamp into the box.
Vector clip_to_bounds(std::span<const double> x, const BoundsBox& box);
void clip_in_place(std::span<double> x, const BoundsBox& box);

}  // namespace ueps

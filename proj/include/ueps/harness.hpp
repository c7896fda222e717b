#pragma once

// Multi-seed experiment runner: repeated independent runs of one algorithm on
// one registry problem, aggregate statistics, UEPS/PSO comparisons, and the
// JSON / CSV / Markdown report formats.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ueps/core.hpp"
#include "ueps/objectives.hpp"
#include "ueps/pso.hpp"
#include "ueps/ueps.hpp"

namespace ueps {

enum class Algorithm { Ueps, Pso };
enum class PenaltyKind { None, Additive, Static };
enum class ReportFormat { Json, Csv, Markdown };

std::string_view to_string(Algorithm a);
std::string_view to_string(PenaltyKind p);

struct PenaltyConfig {
  PenaltyKind kind = PenaltyKind::None;
  // Additive only; empty means unit weights for every constraint.
  PenaltyWeights weights;
  // Static only.
  double K = kDefaultStaticK;
};

using AlgorithmParams = std::variant<UepsParams, PsoParams>;

struct ExperimentConfig {
  std::string problem;
  Algorithm algorithm = Algorithm::Ueps;
  AlgorithmParams params = UepsParams{};
  PenaltyConfig penalty;
  std::size_t n_runs = 10;
  std::uint64_t base_seed = 0;
  RngKind rng = RngKind::Mt64;
  // Worker threads; results do not depend on this.
  std::size_t jobs = 1;
};

struct Aggregate {
  double best_val = 0.0;
  double mean_val = 0.0;
  double median_val = 0.0;
  double std_val = 0.0;  // population standard deviation
  Vector mean_best_pos;
  std::size_t best_run = 0;    // index of the run attaining best_val
  std::size_t median_run = 0;  // index of the lower-median run
};

struct BatchReport {
  std::string problem;
  Algorithm algorithm = Algorithm::Ueps;
  AlgorithmParams params = UepsParams{};
  PenaltyConfig penalty;
  std::size_t n_runs = 0;
  std::uint64_t base_seed = 0;
  RngKind rng = RngKind::Mt64;
  bool parallel = false;
  std::vector<RunResult> runs;
  Aggregate aggregate;
  double total_wall_time_s = 0.0;  // sum of per-run wall times
  std::size_t evaluations_total = 0;
};

struct ComparisonEntry {
  std::string problem;
  BatchReport ueps;
  BatchReport pso;
};

struct ComparisonReport {
  std::vector<ComparisonEntry> entries;
  std::size_t n_runs = 0;
  std::uint64_t base_seed = 0;
  double ueps_wall_time_s = 0.0;
  double pso_wall_time_s = 0.0;
  double total_wall_time_s = 0.0;
};

/// The objective a config optimizes: the registry entry, penalty-wrapped when
/// configured. Throws ConfigError on a penalty/constraint mismatch.
ObjectiveSpec prepare_objective(const ExperimentConfig& config);

/// Checks everything that can be checked before any run starts.
void validate_config(const ExperimentConfig& config);

Aggregate aggregate_runs(const std::vector<RunResult>& runs);

BatchReport run_batch(const ExperimentConfig& config);

/// Runs both algorithms on each problem with the same seed range.
ComparisonReport compare_algorithms(const std::vector<std::string>& problems,
                                    const UepsParams& ueps_params, const PsoParams& pso_params,
                                    std::size_t n_runs, std::uint64_t base_seed,
                                    const PenaltyConfig& penalty = {}, std::size_t jobs = 1,
                                    RngKind rng = RngKind::Mt64);

struct FormatOptions {
  bool include_trace = true;
};

std::string format_report(const BatchReport& report, ReportFormat format,
                          const FormatOptions& options = {});
std::string format_report(const ComparisonReport& report, ReportFormat format,
                          const FormatOptions& options = {});

/// Fixed six-decimal rendering used in human-readable output; never "-0.000000".
std::string fixed6(double v);

nlohmann::json to_json(const BatchReport& report, const FormatOptions& options = {});
nlohmann::json to_json(const ComparisonReport& report, const FormatOptions& options = {});
BatchReport batch_from_json(const nlohmann::json& j);

}  // namespace ueps

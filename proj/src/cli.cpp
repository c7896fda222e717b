#include "ueps/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ranges.h>

#include "ueps/damping.hpp"
#include "ueps/harness.hpp"

namespace ueps::cli {
namespace {

const std::vector<std::string> kDefaultCompareProblems = {"ackley", "sphere", "rosenbrock", "beale",
                                                    "booth",  "matyas", "levy",       "easom"};

// Flags shared by `run` and `bench`.
struct OptimizerFlags {
  std::string problem;
  std::string algo = "ueps";
  std::size_t particles = 50;
  std::size_t iters = 100;
  double A = 1.0;
  double b = 0.007;
  double alpha = 0.8;
  double w_min = 0.4;
  double w_max = 0.9;
  double c1 = 1.9;
  double c2 = 1.9;
  std::string kernel = "code";
  std::string pert = "geom";
  std::string granularity = "particle";
  std::string penalty = "none";
  double K = kDefaultStaticK;
  std::vector<double> weights;
  std::size_t jobs = 1;
  std::string rng = "mt64";
};

struct OutputFlags {
  std::string format = "plain";
  std::string out_path;
  bool no_trace = false;
};

void add_algorithm_flags(CLI::App* cmd, OptimizerFlags& f) {
  cmd->add_option("--particles", f.particles, "Swarm size")->capture_default_str();
  cmd->add_option("--iters", f.iters, "Iterations per run")->capture_default_str();
  cmd->add_option("--A", f.A, "UEPS oscillation amplitude")->capture_default_str();
  cmd->add_option("--b", f.b, "UEPS damping rate per iteration")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "UEPS random perturbation factor")->capture_default_str();
  cmd->add_option("--w-min", f.w_min, "Final inertia weight")->capture_default_str();
  cmd->add_option("--w-max", f.w_max, "Initial inertia weight")->capture_default_str();
  cmd->add_option("--c1", f.c1, "PSO cognitive coefficient")->capture_default_str();
  cmd->add_option("--c2", f.c2, "PSO social coefficient")->capture_default_str();
  cmd->add_option("--kernel", f.kernel, "UEPS oscillation kernel: 2 - cos (text) or 1 - cos (code)")
      ->check(CLI::IsMember({"text", "code"}))
      ->capture_default_str();
  cmd->add_option("--pert", f.pert, "UEPS perturbation schedule: alpha (const) or alpha^t (geom)")
      ->check(CLI::IsMember({"const", "geom"}))
      ->capture_default_str();
  cmd->add_option("--granularity", f.granularity,
                  "UEPS random draws per particle or per dimension")
      ->check(CLI::IsMember({"particle", "dimension"}))
      ->capture_default_str();
}

void add_rng_flag(CLI::App* cmd, OptimizerFlags& f) {
  cmd->add_option("--rng", f.rng,
                  "Random stream: mt64 (std::mt19937_64) or numpy (legacy numpy MT19937)")
      ->check(CLI::IsMember({"mt64", "numpy"}))
      ->capture_default_str();
}

RngKind rng_from(const OptimizerFlags& f) {
  return f.rng == "numpy" ? RngKind::Numpy : RngKind::Mt64;
}

void add_penalty_flags(CLI::App* cmd, OptimizerFlags& f) {
  cmd->add_option("--penalty", f.penalty, "Constraint handling for constrained problems")
      ->check(CLI::IsMember({"none", "additive", "static"}))
      ->capture_default_str();
  cmd->add_option("--K", f.K, "Static penalty constant")->capture_default_str();
  cmd->add_option("--weights", f.weights,
                  "Additive penalty weights, one per constraint (default: all 1)")
      ->delimiter(',');
}

void add_output_flags(CLI::App* cmd, OutputFlags& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "markdown", "plain"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "Write output to this file instead of stdout");
  cmd->add_flag("--no-trace", o.no_trace, "Omit per-iteration traces from JSON output");
}

UepsParams ueps_params_from(const OptimizerFlags& f) {
  UepsParams p;
  p.amplitude = f.A;
  p.damping_rate = f.b;
  p.alpha = f.alpha;
  p.w_min = f.w_min;
  p.w_max = f.w_max;
  p.n_particles = f.particles;
  p.max_iter = f.iters;
  p.kernel = f.kernel == "text" ? OscillationKernel::Text : OscillationKernel::Code;
  p.schedule =
      f.pert == "const" ? PerturbationSchedule::Constant : PerturbationSchedule::Geometric;
  p.granularity = f.granularity == "dimension" ? RandomGranularity::PerDimension
                                               : RandomGranularity::PerParticle;
  return p;
}

PsoParams pso_params_from(const OptimizerFlags& f) {
  PsoParams p;
  p.c1 = f.c1;
  p.c2 = f.c2;
  p.w_min = f.w_min;
  p.w_max = f.w_max;
  p.n_particles = f.particles;
  p.max_iter = f.iters;
  return p;
}

PenaltyConfig penalty_from(const OptimizerFlags& f) {
  PenaltyConfig pc;
  pc.kind = f.penalty == "additive" ? PenaltyKind::Additive
            : f.penalty == "static" ? PenaltyKind::Static
                                    : PenaltyKind::None;
  pc.K = f.K;
  if (!f.weights.empty()) {
    if (pc.kind != PenaltyKind::Additive) {
      throw ConfigError("--weights only applies to --penalty additive");
    }
    // Registry problems only carry inequality constraints.
    pc.weights.inequality_weights = f.weights;
  } else if (pc.kind == PenaltyKind::Additive && !f.problem.empty()) {
    pc.weights = PenaltyWeights::unit(lookup(f.problem));
  }
  return pc;
}

ExperimentConfig config_from(const OptimizerFlags& f, std::size_t n_runs, std::uint64_t seed) {
  ExperimentConfig c;
  c.problem = f.problem;
  c.algorithm = f.algo == "pso" ? Algorithm::Pso : Algorithm::Ueps;
  c.params = c.algorithm == Algorithm::Ueps ? AlgorithmParams{ueps_params_from(f)}
                                            : AlgorithmParams{pso_params_from(f)};
  c.penalty = penalty_from(f);
  c.n_runs = n_runs;
  c.base_seed = seed;
  c.jobs = f.jobs;
  c.rng = rng_from(f);
  return c;
}

ReportFormat report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return ReportFormat::Markdown;
}

void emit(const std::string& text, const OutputFlags& o, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", o.out_path));
  file << text;
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", o.out_path));
}

std::string point6(std::span<const double> x) {
  std::vector<std::string> parts;
  for (double v : x) parts.push_back(fixed6(v));
  return fmt::format("({})", fmt::join(parts, ", "));
}

std::string ascii_plot(const Vector& trace) {
  if (trace.empty()) return {};
  constexpr std::size_t kRows = 12;
  const std::size_t cols = std::min<std::size_t>(trace.size(), 60);
  const auto [lo_it, hi_it] = std::minmax_element(trace.begin(), trace.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<std::string> grid(kRows, std::string(cols, ' '));
  for (std::size_t c = 0; c < cols; ++c) {
    const double v = trace[c * trace.size() / cols];
    const double frac = hi > lo ? (v - lo) / (hi - lo) : 0.0;
    const auto r = static_cast<std::size_t>(frac * (kRows - 1) + 0.5);
    grid[kRows - 1 - r][c] = '*';
  }
  std::string s = fmt::format("{:>14} +\n", fixed6(hi));
  for (const auto& row : grid) s += fmt::format("{:>14} |{}\n", "", row);
  s += fmt::format("{:>14} +{}\n", fixed6(lo), std::string(cols, '-'));
  return s;
}

std::string plain_run(const BatchReport& report, const std::string& plot) {
  const RunResult& r = report.runs.front();
  std::string s;
  s += fmt::format("problem: {}\n", report.problem);
  s += fmt::format("algorithm: {}\n", to_string(report.algorithm));
  s += fmt::format("penalty: {}\n", to_string(report.penalty.kind));
  s += fmt::format("seed: {} (rng {})\n", r.seed, to_string(report.rng));
  s += fmt::format("best_pos: {}\n", point6(r.best_pos));
  s += fmt::format("best_val: {}\n", fixed6(r.best_val));
  s += fmt::format("evaluations: {}\n", r.evaluations);
  s += fmt::format("wall_time_s: {}\n", fixed6(r.wall_time_s));

  const ObjectiveSpec raw = lookup(report.problem);
  if (raw.is_constrained()) {
    const auto rep = violations(raw, r.best_pos);
    s += "feasibility:\n";
    s += fmt::format("  raw objective: {}\n", fixed6(evaluate(raw, r.best_pos)));
    for (std::size_t k = 0; k < raw.inequality_constraints.size(); ++k) {
      const auto& g = raw.inequality_constraints[k];
      s += fmt::format("  g{} {}: value {} excess {}\n", k + 1, g.name, fixed6(g.fn(r.best_pos)),
                       fixed6(rep.inequality_excess[k]));
    }
    s += fmt::format("  satisfied: {}/{}\n", rep.satisfied_count, rep.total_count);
    s += fmt::format("  max relative violation: {:.3e}\n", max_relative_violation(raw, r.best_pos));
    s += fmt::format("  feasible (relative tolerance {:g}): {}\n", kDefaultRelativeTolerance,
                     is_feasible(raw, r.best_pos) ? "yes" : "no");
  }
  if (plot == "ascii") s += "trace:\n" + ascii_plot(r.trace.best_so_far);
  return s;
}

std::string plain_list() {
  std::string s;
  for (const auto& name : registry_names()) {
    const auto spec = lookup(name);
    std::vector<std::string> box;
    for (std::size_t i = 0; i < spec.arity; ++i) {
      box.push_back(fmt::format("[{}, {}]", spec.bounds.lower()[i], spec.bounds.upper()[i]));
    }
    s += fmt::format("{:<24} d={}  bounds {}", name, spec.arity, fmt::join(box, " x "));
    if (spec.is_constrained()) s += fmt::format("  constraints={}", spec.constraint_count());
    s += "\n";
  }
  return s;
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto end = csv.find(',', start);
    auto item = csv.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!item.empty()) out.push_back(item);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Underdamped particle swarm optimization and PSO benchmark tool", "ueps"};
  app.require_subcommand(1, 1);

  auto* list_cmd = app.add_subcommand("list", "List registry problems with dimensions and bounds");

  OptimizerFlags run_flags;
  OutputFlags run_out;
  std::uint64_t run_seed = 42;
  std::string plot;
  auto* run_cmd = app.add_subcommand("run", "Run one optimization");
  run_cmd->add_option("--problem", run_flags.problem, "Registry problem name")->required();
  run_cmd->add_option("--algo", run_flags.algo, "Algorithm")
      ->check(CLI::IsMember({"ueps", "pso"}))
      ->capture_default_str();
  run_cmd->add_option("--seed", run_seed, "Random seed")->capture_default_str();
  add_algorithm_flags(run_cmd, run_flags);
  add_penalty_flags(run_cmd, run_flags);
  add_rng_flag(run_cmd, run_flags);
  add_output_flags(run_cmd, run_out);
  run_cmd->add_option("--plot", plot, "Render the trace in plain output")
      ->check(CLI::IsMember({"ascii"}));

  OptimizerFlags bench_flags;
  OutputFlags bench_out;
  std::size_t bench_runs = 10;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Repeated runs with aggregate statistics");
  bench_cmd->add_option("--problem", bench_flags.problem, "Registry problem name")->required();
  bench_cmd->add_option("--algo", bench_flags.algo, "Algorithm")
      ->check(CLI::IsMember({"ueps", "pso"}))
      ->capture_default_str();
  bench_cmd->add_option("--runs", bench_runs, "Number of runs")->capture_default_str();
  bench_cmd->add_option("--base-seed", bench_seed, "Seed of the first run; run i uses base+i")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", bench_flags.jobs, "Worker threads")->capture_default_str();
  add_algorithm_flags(bench_cmd, bench_flags);
  add_penalty_flags(bench_cmd, bench_flags);
  add_rng_flag(bench_cmd, bench_flags);
  add_output_flags(bench_cmd, bench_out);

  OptimizerFlags cmp_flags;
  OutputFlags cmp_out;
  std::string cmp_problems = fmt::format("{}", fmt::join(kDefaultCompareProblems, ","));
  std::size_t cmp_runs = 10;
  std::uint64_t cmp_seed = 0;
  auto* cmp_cmd = app.add_subcommand("compare", "UEPS versus PSO on several problems");
  cmp_cmd->add_option("--problems", cmp_problems, "Comma-separated problem names")
      ->capture_default_str();
  cmp_cmd->add_option("--runs", cmp_runs, "Runs per algorithm and problem")->capture_default_str();
  cmp_cmd->add_option("--base-seed", cmp_seed, "Seed of the first run")->capture_default_str();
  cmp_cmd->add_option("--jobs", cmp_flags.jobs, "Worker threads")->capture_default_str();
  add_algorithm_flags(cmp_cmd, cmp_flags);
  add_penalty_flags(cmp_cmd, cmp_flags);
  add_rng_flag(cmp_cmd, cmp_flags);
  add_output_flags(cmp_cmd, cmp_out);

  double gamma = 0.0, omega0 = 1.0, amp_A = 1.0, amp_B = 0.0, phi = 0.0;
  double t_start = 0.0, t_end = 1.0;
  std::size_t samples = 200;
  std::string curve_out;
  auto* curve_cmd =
      app.add_subcommand("damping-curves", "CSV of a damped oscillator's closed-form response");
  curve_cmd->add_option("--gamma", gamma, "Damping rate c/(2m)")->required();
  curve_cmd->add_option("--omega0", omega0, "Natural angular frequency sqrt(k/m)")->required();
  curve_cmd->add_option("--A", amp_A, "Amplitude constant A")->capture_default_str();
  curve_cmd->add_option("--B", amp_B, "Second constant B (overdamped and critical)")
      ->capture_default_str();
  curve_cmd->add_option("--phi", phi, "Phase in radians (underdamped)")->capture_default_str();
  curve_cmd->add_option("--t-start", t_start, "First sample time")->capture_default_str();
  curve_cmd->add_option("--t-end", t_end, "Last sample time")->required();
  curve_cmd->add_option("--samples", samples, "Number of samples")->capture_default_str();
  curve_cmd->add_option("--out", curve_out, "CSV output file (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // --help lands here with a success code.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list_cmd->parsed()) {
      out << plain_list();
    } else if (run_cmd->parsed()) {
      const auto config = config_from(run_flags, 1, run_seed);
      const auto report = run_batch(config);
      const FormatOptions fo{!run_out.no_trace};
      emit(run_out.format == "plain" ? plain_run(report, plot)
                                     : format_report(report, report_format(run_out.format), fo),
           run_out, out);
    } else if (bench_cmd->parsed()) {
      const auto report = run_batch(config_from(bench_flags, bench_runs, bench_seed));
      emit(format_report(report, report_format(bench_out.format), {!bench_out.no_trace}), bench_out,
           out);
    } else if (cmp_cmd->parsed()) {
      const auto names = split_names(cmp_problems);
      const auto report =
          compare_algorithms(names, ueps_params_from(cmp_flags), pso_params_from(cmp_flags),
                             cmp_runs, cmp_seed, penalty_from(cmp_flags), cmp_flags.jobs,
                             rng_from(cmp_flags));
      emit(format_report(report, report_format(cmp_out.format), {!cmp_out.no_trace}), cmp_out,
           out);
    } else if (curve_cmd->parsed()) {
      if (!(gamma >= 0.0) || !(omega0 > 0.0)) {
        throw ParameterError("damping-curves: need --gamma >= 0 and --omega0 > 0");
      }
      const auto p = damping::OscillatorParams::from_rates(gamma, omega0, amp_A, amp_B, phi);
      const auto csv = damping::format_curve_csv(damping::sample_curve(p, t_start, t_end, samples));
      const std::string regime =
          fmt::format("regime: {}\n", damping::to_string(damping::classify_regime(p)));
      if (curve_out.empty()) {
        err << regime;
        out << csv;
      } else {
        emit(csv, OutputFlags{"csv", curve_out, false}, out);
        out << regime;
      }
    }
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace ueps::cli

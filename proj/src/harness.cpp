#include "ueps/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/core.h>

namespace ueps {

using nlohmann::json;

std::string_view to_string(Algorithm a) { return a == Algorithm::Ueps ? "ueps" : "pso"; }

std::string_view to_string(PenaltyKind p) {
  switch (p) {
    case PenaltyKind::None: return "none";
    case PenaltyKind::Additive: return "additive";
    case PenaltyKind::Static: return "static";
  }
  return "none";
}

namespace {

template <typename E>
E enum_from(std::string_view s, std::initializer_list<E> values, const char* what) {
  for (E v : values) {
    if (to_string(v) == s) return v;
  }
  throw ConfigError(fmt::format("unknown {} '{}'", what, s));
}

}  // namespace

ObjectiveSpec prepare_objective(const ExperimentConfig& config) {
  ObjectiveSpec spec = lookup(config.problem);
  switch (config.penalty.kind) {
    case PenaltyKind::None:
      if (spec.is_constrained()) {
        throw ConfigError(fmt::format(
            "'{}' is constrained; choose --penalty additive or --penalty static", spec.name));
      }
      return spec;
    case PenaltyKind::Additive: {
      if (!spec.is_constrained()) {
        throw ConfigError(fmt::format("'{}' has no constraints; use --penalty none", spec.name));
      }
      const bool unit = config.penalty.weights.inequality_weights.empty() &&
                        config.penalty.weights.equality_weights.empty();
      try {
        return additive_penalty_wrap(
            spec, unit ? PenaltyWeights::unit(spec) : config.penalty.weights);
      } catch (const ParameterError& e) {
        throw ConfigError(e.what());
      }
    }
    case PenaltyKind::Static:
      if (!spec.is_constrained()) {
        throw ConfigError(fmt::format("'{}' has no constraints; use --penalty none", spec.name));
      }
      try {
        return static_penalty_wrap(spec, config.penalty.K);
      } catch (const ParameterError& e) {
        throw ConfigError(e.what());
      }
  }
  return spec;
}

void validate_config(const ExperimentConfig& config) {
  if (config.n_runs < 1) throw ConfigError("need at least one run");
  const bool ueps_params = std::holds_alternative<UepsParams>(config.params);
  if (ueps_params != (config.algorithm == Algorithm::Ueps)) {
    throw ConfigError("parameter bundle does not match the selected algorithm");
  }
  std::visit([](const auto& p) { p.validate(); }, config.params);
  prepare_objective(config);
}

Aggregate aggregate_runs(const std::vector<RunResult>& runs) {
  if (runs.empty()) throw ParameterError("aggregate_runs: no runs");
  Aggregate a;
  const std::size_t n = runs.size();
  const std::size_t d = runs.front().best_pos.size();

  a.best_run = 0;
  double sum = 0.0;
  a.mean_best_pos.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (runs[i].best_val < runs[a.best_run].best_val) a.best_run = i;
    sum += runs[i].best_val;
    for (std::size_t j = 0; j < d; ++j) a.mean_best_pos[j] += runs[i].best_pos[j];
  }
  for (double& v : a.mean_best_pos) v /= static_cast<double>(n);
  a.best_val = runs[a.best_run].best_val;
  a.mean_val = sum / static_cast<double>(n);

  double ss = 0.0;
  for (const auto& r : runs) ss += (r.best_val - a.mean_val) * (r.best_val - a.mean_val);
  a.std_val = std::sqrt(ss / static_cast<double>(n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return runs[x].best_val < runs[y].best_val;
  });
  a.median_run = order[(n - 1) / 2];
  a.median_val = n % 2 == 1
                     ? runs[order[n / 2]].best_val
                     : 0.5 * (runs[order[n / 2 - 1]].best_val + runs[order[n / 2]].best_val);
  return a;
}

BatchReport run_batch(const ExperimentConfig& config) {
  validate_config(config);
  const ObjectiveSpec objective = prepare_objective(config);

  auto run_one = [&](std::size_t i) {
    const std::uint64_t seed = config.base_seed + i;
    if (const auto* up = std::get_if<UepsParams>(&config.params)) {
      return ueps_run(objective, *up, seed, config.rng);
    }
    return pso_run(objective, std::get<PsoParams>(config.params), seed, config.rng);
  };

  BatchReport report;
  report.problem = config.problem;
  report.algorithm = config.algorithm;
  report.params = config.params;
  report.penalty = config.penalty;
  report.n_runs = config.n_runs;
  report.base_seed = config.base_seed;
  report.rng = config.rng;
  report.runs.resize(config.n_runs);

  const std::size_t workers = std::min(std::max<std::size_t>(config.jobs, 1), config.n_runs);
  report.parallel = workers > 1;
  if (workers == 1) {
    for (std::size_t i = 0; i < config.n_runs; ++i) report.runs[i] = run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < config.n_runs; i = next++) {
          try {
            report.runs[i] = run_one(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  report.aggregate = aggregate_runs(report.runs);
  for (const auto& r : report.runs) {
    report.total_wall_time_s += r.wall_time_s;
    report.evaluations_total += r.evaluations;
  }
  return report;
}

ComparisonReport compare_algorithms(const std::vector<std::string>& problems,
                                    const UepsParams& ueps_params, const PsoParams& pso_params,
                                    std::size_t n_runs, std::uint64_t base_seed,
                                    const PenaltyConfig& penalty, std::size_t jobs,
                                    RngKind rng) {
  auto config_for = [&](const std::string& problem, Algorithm algo) {
    ExperimentConfig c;
    c.problem = problem;
    c.algorithm = algo;
    c.params = algo == Algorithm::Ueps ? AlgorithmParams{ueps_params} : AlgorithmParams{pso_params};
    c.penalty = penalty;
    c.n_runs = n_runs;
    c.base_seed = base_seed;
    c.jobs = jobs;
    c.rng = rng;
    return c;
  };

  // Reject bad input before spending time on any run.
  for (const auto& p : problems) {
    validate_config(config_for(p, Algorithm::Ueps));
    validate_config(config_for(p, Algorithm::Pso));
  }

  ComparisonReport report;
  report.n_runs = n_runs;
  report.base_seed = base_seed;
  for (const auto& p : problems) {
    ComparisonEntry e{p, run_batch(config_for(p, Algorithm::Ueps)),
                      run_batch(config_for(p, Algorithm::Pso))};
    report.ueps_wall_time_s += e.ueps.total_wall_time_s;
    report.pso_wall_time_s += e.pso.total_wall_time_s;
    report.entries.push_back(std::move(e));
  }
  report.total_wall_time_s = report.ueps_wall_time_s + report.pso_wall_time_s;
  return report;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json params_json(const AlgorithmParams& params) {
  if (const auto* u = std::get_if<UepsParams>(&params)) {
    return {{"A", u->amplitude},
            {"b", u->damping_rate},
            {"alpha", u->alpha},
            {"w_min", u->w_min},
            {"w_max", u->w_max},
            {"n_particles", u->n_particles},
            {"max_iter", u->max_iter},
            {"kernel", to_string(u->kernel)},
            {"perturbation", to_string(u->schedule)},
            {"granularity", to_string(u->granularity)}};
  }
  const auto& p = std::get<PsoParams>(params);
  return {{"c1", p.c1},
          {"c2", p.c2},
          {"w_min", p.w_min},
          {"w_max", p.w_max},
          {"n_particles", p.n_particles},
          {"max_iter", p.max_iter}};
}

AlgorithmParams params_from_json(Algorithm algo, const json& j) {
  if (algo == Algorithm::Ueps) {
    UepsParams u;
    u.amplitude = j.at("A").get<double>();
    u.damping_rate = j.at("b").get<double>();
    u.alpha = j.at("alpha").get<double>();
    u.w_min = j.at("w_min").get<double>();
    u.w_max = j.at("w_max").get<double>();
    u.n_particles = j.at("n_particles").get<std::size_t>();
    u.max_iter = j.at("max_iter").get<std::size_t>();
    u.kernel = enum_from(j.at("kernel").get<std::string>(),
                         {OscillationKernel::Text, OscillationKernel::Code}, "kernel");
    u.schedule = enum_from(j.at("perturbation").get<std::string>(),
                           {PerturbationSchedule::Constant, PerturbationSchedule::Geometric},
                           "perturbation schedule");
    u.granularity =
        enum_from(j.at("granularity").get<std::string>(),
                  {RandomGranularity::PerParticle, RandomGranularity::PerDimension},
                  "granularity");
    return u;
  }
  PsoParams p;
  p.c1 = j.at("c1").get<double>();
  p.c2 = j.at("c2").get<double>();
  p.w_min = j.at("w_min").get<double>();
  p.w_max = j.at("w_max").get<double>();
  p.n_particles = j.at("n_particles").get<std::size_t>();
  p.max_iter = j.at("max_iter").get<std::size_t>();
  return p;
}

json run_json(const RunResult& r, const FormatOptions& options) {
  json j = {{"seed", r.seed},
            {"best_pos", r.best_pos},
            {"best_val", r.best_val},
            {"wall_time_s", r.wall_time_s},
            {"evaluations", r.evaluations}};
  if (options.include_trace) j["trace"] = r.trace.best_so_far;
  return j;
}

}  // namespace

json to_json(const BatchReport& report, const FormatOptions& options) {
  json j;
  j["problem"] = report.problem;
  j["algorithm"] = to_string(report.algorithm);
  j["penalty"] = to_string(report.penalty.kind);
  if (report.penalty.kind == PenaltyKind::Static) {
    j["penalty_params"] = {{"K", report.penalty.K}};
  } else if (report.penalty.kind == PenaltyKind::Additive) {
    j["penalty_params"] = {{"inequality_weights", report.penalty.weights.inequality_weights},
                           {"equality_weights", report.penalty.weights.equality_weights}};
  }
  j["params"] = params_json(report.params);
  j["rng"] = to_string(report.rng);
  j["n_runs"] = report.n_runs;
  j["base_seed"] = report.base_seed;
  j["parallel"] = report.parallel;
  j["runs"] = json::array();
  for (const auto& r : report.runs) j["runs"].push_back(run_json(r, options));
  const auto& a = report.aggregate;
  j["aggregate"] = {{"best_val", a.best_val},
                    {"mean_val", a.mean_val},
                    {"median_val", a.median_val},
                    {"std_val", a.std_val},
                    {"mean_best_pos", a.mean_best_pos},
                    {"best_run", a.best_run},
                    {"median_run", a.median_run}};
  j["total_wall_time_s"] = report.total_wall_time_s;
  j["evaluations_total"] = report.evaluations_total;
  return j;
}

BatchReport batch_from_json(const json& j) {
  BatchReport r;
  r.problem = j.at("problem").get<std::string>();
  r.algorithm = enum_from(j.at("algorithm").get<std::string>(), {Algorithm::Ueps, Algorithm::Pso},
                          "algorithm");
  r.penalty.kind = enum_from(j.at("penalty").get<std::string>(),
                             {PenaltyKind::None, PenaltyKind::Additive, PenaltyKind::Static},
                             "penalty");
  if (j.contains("penalty_params")) {
    const auto& pp = j.at("penalty_params");
    if (pp.contains("K")) r.penalty.K = pp.at("K").get<double>();
    if (pp.contains("inequality_weights")) {
      r.penalty.weights.inequality_weights = pp.at("inequality_weights").get<Vector>();
      r.penalty.weights.equality_weights = pp.at("equality_weights").get<Vector>();
    }
  }
  r.params = params_from_json(r.algorithm, j.at("params"));
  r.n_runs = j.at("n_runs").get<std::size_t>();
  r.base_seed = j.at("base_seed").get<std::uint64_t>();
  r.rng = enum_from(j.at("rng").get<std::string>(), {RngKind::Mt64, RngKind::Numpy}, "rng");
  r.parallel = j.at("parallel").get<bool>();
  for (const auto& jr : j.at("runs")) {
    RunResult run;
    run.seed = jr.at("seed").get<std::uint64_t>();
    run.best_pos = jr.at("best_pos").get<Vector>();
    run.best_val = jr.at("best_val").get<double>();
    run.wall_time_s = jr.at("wall_time_s").get<double>();
    run.evaluations = jr.at("evaluations").get<std::size_t>();
    if (jr.contains("trace")) run.trace.best_so_far = jr.at("trace").get<Vector>();
    r.runs.push_back(std::move(run));
  }
  const auto& ja = j.at("aggregate");
  r.aggregate.best_val = ja.at("best_val").get<double>();
  r.aggregate.mean_val = ja.at("mean_val").get<double>();
  r.aggregate.median_val = ja.at("median_val").get<double>();
  r.aggregate.std_val = ja.at("std_val").get<double>();
  r.aggregate.mean_best_pos = ja.at("mean_best_pos").get<Vector>();
  r.aggregate.best_run = ja.at("best_run").get<std::size_t>();
  r.aggregate.median_run = ja.at("median_run").get<std::size_t>();
  r.total_wall_time_s = j.at("total_wall_time_s").get<double>();
  r.evaluations_total = j.at("evaluations_total").get<std::size_t>();
  return r;
}

json to_json(const ComparisonReport& report, const FormatOptions& options) {
  json j;
  j["n_runs"] = report.n_runs;
  j["base_seed"] = report.base_seed;
  j["problems"] = json::array();
  for (const auto& e : report.entries) {
    j["problems"].push_back(
        {{"problem", e.problem}, {"ueps", to_json(e.ueps, options)}, {"pso", to_json(e.pso, options)}});
  }
  j["timing"] = {{"ueps_wall_time_s", report.ueps_wall_time_s},
                 {"pso_wall_time_s", report.pso_wall_time_s},
                 {"total_wall_time_s", report.total_wall_time_s}};
  return j;
}

// ---------------------------------------------------------------------------
// Text formats

std::string fixed6(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

namespace {

std::string point6(const Vector& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += fixed6(x[i]);
  }
  return s + ")";
}

std::string csv_rows(const BatchReport& r) {
  std::string out;
  for (const auto& run : r.runs) {
    std::string pos;
    for (std::size_t i = 0; i < run.best_pos.size(); ++i) {
      if (i) pos += ';';
      pos += fmt::format("{}", run.best_pos[i]);
    }
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.problem, to_string(r.algorithm),
                       to_string(r.penalty.kind), run.seed, run.best_val, pos, run.wall_time_s,
                       run.evaluations);
  }
  return out;
}

constexpr const char* kCsvHeader =
    "problem,algorithm,penalty,seed,best_val,best_pos,wall_time_s,evaluations\n";

std::string range_text(const std::string& problem) {
  try {
    const auto spec = lookup(problem);
    const auto& lo = spec.bounds.lower();
    const auto& hi = spec.bounds.upper();
    std::string s;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (i) s += " x ";
      s += fmt::format("[{}, {}]", lo[i], hi[i]);
    }
    return s;
  } catch (const NotFoundError&) {
    return "?";
  }
}

std::string optimum_text(const std::string& problem) {
  try {
    const auto spec = lookup(problem);
    if (spec.known_optimum) return point6(spec.known_optimum->x);
  } catch (const NotFoundError&) {
  }
  return "-";
}

std::string markdown_row(const BatchReport& r) {
  const auto& a = r.aggregate;
  return fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n", r.problem,
                     to_string(r.algorithm), optimum_text(r.problem), range_text(r.problem),
                     point6(a.mean_best_pos), point6(r.runs.at(a.best_run).best_pos),
                     fixed6(a.best_val), fixed6(a.median_val), fixed6(a.mean_val),
                     fixed6(a.std_val));
}

constexpr const char* kMarkdownHeader =
    "| Function | Algorithm | Global minimum | Range | Mean approximation | Best run | Best "
    "f | Median f | Mean f | Std f |\n"
    "|---|---|---|---|---|---|---|---|---|---|\n";

}  // namespace

std::string format_report(const BatchReport& report, ReportFormat format,
                          const FormatOptions& options) {
  switch (format) {
    case ReportFormat::Json:
      return to_json(report, options).dump(2) + "\n";
    case ReportFormat::Csv:
      return kCsvHeader + csv_rows(report);
    case ReportFormat::Markdown:
      return std::string(kMarkdownHeader) + markdown_row(report) +
             fmt::format("\n{} runs, seeds {}..{}, wall time {} s\n", report.n_runs,
                         report.base_seed, report.base_seed + report.n_runs - 1,
                         fixed6(report.total_wall_time_s));
  }
  return {};
}

std::string format_report(const ComparisonReport& report, ReportFormat format,
                          const FormatOptions& options) {
  switch (format) {
    case ReportFormat::Json:
      return to_json(report, options).dump(2) + "\n";
    case ReportFormat::Csv: {
      std::string out = kCsvHeader;
      for (const auto& e : report.entries) out += csv_rows(e.ueps) + csv_rows(e.pso);
      return out;
    }
    case ReportFormat::Markdown: {
      std::string out = kMarkdownHeader;
      for (const auto& e : report.entries) out += markdown_row(e.ueps) + markdown_row(e.pso);
      out += "\n| Function | UEPS time (s) | PSO time (s) |\n|---|---|---|\n";
      for (const auto& e : report.entries) {
        out += fmt::format("| {} | {} | {} |\n", e.problem, fixed6(e.ueps.total_wall_time_s),
                           fixed6(e.pso.total_wall_time_s));
      }
      out += fmt::format("| total | {} | {} |\n", fixed6(report.ueps_wall_time_s),
                         fixed6(report.pso_wall_time_s));
      return out;
    }
  }
  return {};
}

}  // namespace ueps

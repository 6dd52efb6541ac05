#include "racgap/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "racgap/ceilings.hpp"
#include "racgap/config_io.hpp"
#include "racgap/harness.hpp"
#include "racgap/svg.hpp"
#include "racgap/trace_io.hpp"

namespace racgap {

namespace {

namespace fs = std::filesystem;

fs::path output_dir(const CliInvocation& inv) {
  std::string dir = inv.output_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("RACGAP_OUTPUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  fs::path path(dir);
  fs::create_directories(path);
  return path;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
  std::cout << "wrote " << path.string() << "\n";
}

RunConfig config_for(const CliInvocation& inv) {
  RunConfig config;
  if (!inv.config_path.empty()) {
    config = load_run_config(inv.config_path, inv.overrides);
  } else if (!inv.overrides.empty()) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& o : inv.overrides) apply_override(j, o);
    config = run_config_from_json(j);
  }
  if (!inv.preset.empty()) {
    const EvaluationPreset preset = evaluation_preset(inv.preset);
    config.scoring = preset.scoring;
    config.benchmark = preset.benchmark;
  }
  if (inv.seed) config.seed = *inv.seed;
  if (inv.alpha) config.confidence.alpha = *inv.alpha;
  if (inv.beta) config.confidence.beta = *inv.beta;
  if (inv.rounds) config.n_rounds = *inv.rounds;
  validate(config);
  return config;
}

// Benchmark resolution for ingested traces, where no simulation state
// exists: deterministic schedules only.
BenchmarkMode resolve_benchmark_external(const BenchmarkMode& benchmark,
                                         const RunConfig& config, std::int64_t n) {
  BenchmarkMode resolved = benchmark;
  const InputModelSpec& model = config.input_model;
  if (resolved.kind == BenchmarkKind::Effective && !resolved.known_eps) {
    if (model.variant == InputVariant::IidBias) {
      resolved.known_eps = model.epsilon;
    } else if (model.variant == InputVariant::Markov) {
      resolved.known_eps = stationary_bias(model.p00, model.p10);
    } else if (model.variant == InputVariant::DriftSine) {
      resolved.kind = BenchmarkKind::Nonstationary;
    } else {
      throw std::invalid_argument(
          "certify: EFFECTIVE benchmark is not derivable for this input model; "
          "set benchmark.known_eps");
    }
  }
  if (resolved.kind == BenchmarkKind::Nonstationary && resolved.schedule.empty()) {
    if (model.variant == InputVariant::DriftSine) {
      resolved.schedule.reserve(static_cast<std::size_t>(n));
      for (std::int64_t t = 1; t <= n; ++t) resolved.schedule.push_back(bias_at(model, t));
    } else if (model.variant == InputVariant::IidBias) {
      resolved.schedule.assign(static_cast<std::size_t>(n), model.epsilon);
    } else {
      throw std::invalid_argument(
          "certify: NONSTATIONARY benchmark needs an explicit schedule for this input model");
    }
  }
  return resolved;
}

std::vector<double> default_bias_grid() { return {0.0, 0.05, 0.1, 0.15, 0.2}; }
std::vector<double> default_fraction_grid() { return {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3}; }
std::vector<std::int64_t> default_rounds_grid() { return {2000, 5000, 10000, 20000}; }

std::vector<const SweepCell*> cells_with_label(const SweepResult& result,
                                               const std::string& label) {
  std::vector<const SweepCell*> out;
  for (const auto& cell : result.cells) {
    if (cell.label == label) out.push_back(&cell);
  }
  return out;
}

void plot_bias_sweep(const SweepResult& result, const fs::path& path,
                     const std::string& title, bool trailing) {
  const auto cells = cells_with_label(result, "EFFECTIVE");
  SvgSeries score{trailing ? "trailing score" : "mean score", {}, {}};
  SvgSeries low{"mean S_low", {}, {}};
  SvgSeries bench{"effective ceiling", {}, {}};
  for (const SweepCell* c : cells) {
    score.x.push_back(c->axis);
    score.y.push_back(trailing ? c->mean_trailing : c->mean_score);
    low.x.push_back(c->axis);
    low.y.push_back(c->mean_s_low);
    bench.x.push_back(c->axis);
    bench.y.push_back(c->benchmark);
  }
  write_line_chart(path.string(), title, "input bias", "score", {score, low, bench},
                   {{"nominal 0.75", 0.75}});
}

void plot_rate_sweep(const SweepResult& result, const fs::path& path,
                     const std::string& title, const std::string& x_label, double alpha) {
  std::vector<std::string> strategies;
  for (const auto& cell : result.cells) {
    if (std::find(strategies.begin(), strategies.end(), cell.strategy) == strategies.end()) {
      strategies.push_back(cell.strategy);
    }
  }
  std::vector<SvgSeries> series;
  for (const auto& strategy : strategies) {
    SvgSeries s{"careless " + strategy, {}, {}};
    for (const auto& cell : result.cells) {
      if (cell.strategy == strategy && cell.label == "CARELESS") {
        s.x.push_back(cell.axis);
        s.y.push_back(cell.accept_rate);
      }
    }
    series.push_back(std::move(s));
  }
  write_line_chart(path.string(), title, x_label, "false-acceptance rate", series,
                   {{"alpha", alpha}});
}

int cmd_simulate(const CliInvocation& inv) {
  const RunConfig config = config_for(inv);
  const fs::path dir = output_dir(inv);
  auto [trace, report] = run_once(config);
  write_trace_jsonl(trace, (dir / "trace.jsonl").string());
  std::cout << "wrote " << (dir / "trace.jsonl").string() << "\n";
  write_text(dir / "report.json", report_to_json(report));
  std::cout << report_table(report);
  return 0;
}

int cmd_certify(const CliInvocation& inv) {
  const RunConfig config = config_for(inv);
  const Trace trace = read_trace(inv.trace_path);
  const BenchmarkMode benchmark = resolve_benchmark_external(
      config.benchmark, config, static_cast<std::int64_t>(trace.rounds.size()));
  const ScoreReport report = certify(trace, config.scoring, benchmark, config.confidence);
  const fs::path dir = output_dir(inv);
  write_text(dir / "report.json", report_to_json(report));
  std::cout << report_table(report);
  return 0;
}

void print_strategy(const DeterministicStrategy& strategy, int n_y) {
  std::cout << "  argmax encoder f(a):";
  for (int m : strategy.encoder) std::cout << " " << m;
  std::cout << "\n  argmax decoder g(m,y):";
  for (std::size_t i = 0; i < strategy.decoder.size(); ++i) {
    if (i % static_cast<std::size_t>(n_y) == 0) std::cout << " |";
    std::cout << " " << strategy.decoder[i];
  }
  std::cout << "\n";
}

int cmd_ceiling(const CliInvocation& inv) {
  if (!inv.task_path.empty()) {
    const PamTask task = load_pam_task(inv.task_path);
    const EnumerationResult result = pam_ceiling_enumerate(task);
    std::cout << "  enumerated ceiling     " << result.value << "\n";
    print_strategy(result.argmax, task.n_y);
    return 0;
  }
  if (!inv.eps) throw std::invalid_argument("ceiling: give --eps or --task");
  const double eps = *inv.eps;
  const PamTask task = rac_task(eps);
  const EnumerationResult result = pam_ceiling_enumerate(task);
  std::cout << "  analytic ceiling       " << rac_effective_ceiling(eps) << "\n";
  std::cout << "  enumerated ceiling     " << result.value << "\n";
  std::cout << "  robust ceiling         " << robust_ceiling(std::abs(eps)) << "\n";
  print_strategy(result.argmax, task.n_y);
  return 0;
}

int cmd_sweep_bias(const CliInvocation& inv, bool trailing_plot, const std::string& stem) {
  const RunConfig config = config_for(inv);
  const std::vector<double> grid = inv.grid.empty() ? default_bias_grid() : inv.grid;
  const int m = inv.reps > 0 ? inv.reps : 50;
  const SweepResult result = sweep_bias(grid, config, m, inv.threads);
  const fs::path dir = output_dir(inv);
  write_text(dir / (stem + ".csv"), result.to_csv());
  write_text(dir / (stem + ".json"), result.to_json());
  if (inv.plot) {
    plot_bias_sweep(result, dir / (stem + ".svg"),
                    trailing_plot ? "Learner score vs effective ceiling"
                                  : "Score vs benchmarks under input bias",
                    trailing_plot);
    std::cout << "wrote " << (dir / (stem + ".svg")).string() << "\n";
  }
  return 0;
}

int cmd_sweep_rounds(const CliInvocation& inv, const std::string& stem, int default_reps) {
  RunConfig config = inv.config_path.empty() && inv.overrides.empty()
                         ? moderate_deviation_regime()
                         : config_for(inv);
  if (inv.seed) config.seed = *inv.seed;
  if (inv.alpha) config.confidence.alpha = *inv.alpha;
  if (inv.beta) config.confidence.beta = *inv.beta;
  const std::vector<std::int64_t> grid =
      inv.rounds_grid.empty() ? default_rounds_grid() : inv.rounds_grid;
  const int m = inv.reps > 0 ? inv.reps : default_reps;
  const SweepResult result = sweep_rounds(grid, config, m, {}, inv.threads);
  const fs::path dir = output_dir(inv);
  write_text(dir / (stem + ".csv"), result.to_csv());
  write_text(dir / (stem + ".json"), result.to_json());
  if (inv.plot) {
    plot_rate_sweep(result, dir / (stem + ".svg"), "Careless false-acceptance rate vs rounds",
                    "rounds", config.confidence.alpha);
    std::cout << "wrote " << (dir / (stem + ".svg")).string() << "\n";
  }
  return 0;
}

int cmd_stress_postselect(const CliInvocation& inv, const std::string& stem) {
  RunConfig config;
  if (!inv.config_path.empty() || !inv.overrides.empty()) {
    config = config_for(inv);
  } else {
    config.n_rounds = 20000;
    config.seed = 7004;
    config.input_model.variant = InputVariant::IidBias;
    config.input_model.epsilon = 0.1;
    config.strategy.variant = StrategyVariant::StaticA0;
    if (inv.seed) config.seed = *inv.seed;
    if (inv.alpha) config.confidence.alpha = *inv.alpha;
    if (inv.beta) config.confidence.beta = *inv.beta;
    if (inv.rounds) config.n_rounds = *inv.rounds;
  }
  const std::vector<double> grid = inv.grid.empty() ? default_fraction_grid() : inv.grid;
  const int m = inv.reps > 0 ? inv.reps : 200;
  const SweepResult result = stress_postselect(grid, config, m, inv.threads);
  const fs::path dir = output_dir(inv);
  write_text(dir / (stem + ".csv"), result.to_csv());
  write_text(dir / (stem + ".json"), result.to_json());
  if (inv.plot) {
    const auto careless = cells_with_label(result, "CARELESS");
    const auto aligned = cells_with_label(result, "ALIGNED");
    SvgSeries cond{"conditional score", {}, {}};
    SvgSeries uncond{"unconditional score", {}, {}};
    SvgSeries bench{"effective ceiling", {}, {}};
    for (const SweepCell* c : careless) {
      cond.x.push_back(c->axis);
      cond.y.push_back(c->mean_score);
    }
    for (const SweepCell* c : aligned) {
      uncond.x.push_back(c->axis);
      uncond.y.push_back(c->mean_score);
      bench.x.push_back(c->axis);
      bench.y.push_back(c->benchmark);
    }
    write_line_chart((dir / (stem + ".svg")).string(), "Postselection stress test",
                     "discard fraction", "score", {cond, uncond, bench},
                     {{"nominal 0.75", 0.75}});
    std::cout << "wrote " << (dir / (stem + ".svg")).string() << "\n";
  }
  return 0;
}

int cmd_reproduce(const CliInvocation& inv) {
  CliInvocation canned = inv;
  canned.plot = true;
  const fs::path dir = output_dir(inv);
  if (inv.figure == "fig2") {
    canned.overrides = {"rounds=100000", "strategy.variant=BIAS_AWARE",
                        "strategy.known_eps=0"};
    if (!inv.seed) canned.seed = 7002;
    if (inv.reps <= 0) canned.reps = 50;
    return cmd_sweep_bias(canned, false, "fig2");
  }
  if (inv.figure == "fig3") {
    canned.overrides = {"rounds=100000", "strategy.variant=BANDIT"};
    if (!inv.seed) canned.seed = 7003;
    if (inv.reps <= 0) canned.reps = 50;
    return cmd_sweep_bias(canned, true, "fig3");
  }
  if (inv.figure == "fig4") {
    if (!inv.seed) canned.seed = 7004;
    if (inv.reps <= 0) canned.reps = 200;
    return cmd_stress_postselect(canned, "fig4");
  }
  if (inv.figure == "fig5") {
    if (inv.reps <= 0) canned.reps = 500;
    write_text(dir / "fig5_config.json",
               run_config_to_json(moderate_deviation_regime()).dump(2) + "\n");
    return cmd_sweep_rounds(canned, "fig5", 500);
  }
  throw std::invalid_argument("reproduce: unknown figure '" + inv.figure + "'");
}

}  // namespace

int dispatch(const CliInvocation& inv) {
  try {
    if (inv.subcommand == "simulate") return cmd_simulate(inv);
    if (inv.subcommand == "certify") return cmd_certify(inv);
    if (inv.subcommand == "ceiling") return cmd_ceiling(inv);
    if (inv.subcommand == "sweep-bias") return cmd_sweep_bias(inv, false, "sweep_bias");
    if (inv.subcommand == "sweep-rounds") return cmd_sweep_rounds(inv, "sweep_rounds", 200);
    if (inv.subcommand == "stress-postselect") return cmd_stress_postselect(inv, "stress_postselect");
    if (inv.subcommand == "reproduce") return cmd_reproduce(inv);
    std::cerr << "error: unknown subcommand '" << inv.subcommand << "'\n";
    return 1;
  } catch (const capacity_error& err) {
    std::cerr << "capacity error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}

int run_cli(std::vector<std::string> args) {
  CLI::App app{"2->1 random access code simulation and certification toolkit", "racgap"};
  app.require_subcommand(1);
  CliInvocation inv;

  auto add_common = [&inv](CLI::App* sub) {
    sub->add_option("--config,-c", inv.config_path, "run configuration file (JSON)")
        ->check(CLI::ExistingFile);
    sub->add_option("--set", inv.overrides,
                    "config override section.key=value (repeatable)");
    sub->add_option("--out", inv.output_dir,
                    "output directory (default $RACGAP_OUTPUT_DIR or .)");
    sub->add_option("--seed", inv.seed, "override the run seed");
    sub->add_option("--alpha", inv.alpha, "override the score-bound significance");
    sub->add_option("--beta", inv.beta, "override the bias-interval significance");
    sub->add_option("--rounds", inv.rounds, "override the number of rounds");
    sub->add_option("--reps", inv.reps, "replicates per cell");
    sub->add_option("--threads", inv.threads, "worker threads (0 = hardware)");
    sub->add_flag("--plot", inv.plot, "also emit an SVG chart");
  };

  auto* simulate = app.add_subcommand("simulate", "run one simulation and certify it");
  add_common(simulate);
  simulate->add_option("--preset", inv.preset, "evaluation preset: ALIGNED or CARELESS");

  auto* certify_cmd = app.add_subcommand("certify", "certify an external round log");
  add_common(certify_cmd);
  certify_cmd->add_option("trace", inv.trace_path, "trace file (JSONL or CSV)")
      ->required()
      ->check(CLI::ExistingFile);
  certify_cmd->add_option("--preset", inv.preset, "evaluation preset: ALIGNED or CARELESS");

  auto* ceiling = app.add_subcommand("ceiling", "print analytic and enumerated ceilings");
  ceiling->add_option("--eps", inv.eps, "query bias");
  ceiling->add_option("--task", inv.task_path, "PAM task file")->check(CLI::ExistingFile);

  auto* sweep_bias_cmd = app.add_subcommand("sweep-bias", "bias sweep (nominal vs effective)");
  add_common(sweep_bias_cmd);
  sweep_bias_cmd->add_option("--grid", inv.grid, "comma-separated bias grid")->delimiter(',');

  auto* sweep_rounds_cmd =
      app.add_subcommand("sweep-rounds", "rounds sweep, static vs adaptive strategies");
  add_common(sweep_rounds_cmd);
  sweep_rounds_cmd->add_option("--grid", inv.rounds_grid, "comma-separated rounds grid")
      ->delimiter(',');

  auto* stress = app.add_subcommand("stress-postselect", "postselection stress test");
  add_common(stress);
  stress->add_option("--grid", inv.grid, "comma-separated discard-fraction grid")
      ->delimiter(',');

  auto* reproduce = app.add_subcommand("reproduce", "rebuild a canned figure dataset");
  add_common(reproduce);
  reproduce->add_option("figure", inv.figure, "fig2|fig3|fig4|fig5")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }
  inv.subcommand = app.get_subcommands().front()->get_name();
  return dispatch(inv);
}

}  // namespace racgap

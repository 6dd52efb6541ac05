#include "racgap/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "racgap/ceilings.hpp"
#include "racgap/rng.hpp"

namespace racgap {

void validate(const RunConfig& config) {
  if (config.n_rounds < 1) throw std::invalid_argument("run config: n_rounds must be >= 1");
  if (config.n_rounds > std::numeric_limits<std::int32_t>::max()) {
    throw std::invalid_argument("run config: n_rounds must fit in 31 bits");
  }
  validate(config.input_model);
  validate(config.strategy);
  validate(config.selection);
  validate(config.confidence);
}

SimResult simulate_run(const RunConfig& config) {
  validate(config);
  Rng rng(config.seed);
  InputState input_state = make_input_state(config.input_model, rng);
  BanditState strategy_state = make_strategy_state(config.strategy);
  const bool device = config.strategy.variant == StrategyVariant::ParamDevice;

  SimResult sim;
  sim.trace.seed = config.seed;
  sim.trace.model_tag = model_tag(config.input_model);
  sim.trace.rounds.reserve(static_cast<std::size_t>(config.n_rounds));
  sim.cond_bias.reserve(static_cast<std::size_t>(config.n_rounds));

  for (std::int64_t t = 1; t <= config.n_rounds; ++t) {
    const RoundInputs in = next_inputs(config.input_model, input_state, rng);
    sim.cond_bias.push_back(in.cond_bias);

    RoundRecord r;
    r.t = static_cast<std::int32_t>(t);
    r.a0 = in.a0;
    r.a1 = in.a1;
    r.y = in.y;
    if (device) {
      // The parametric device stands outside the encode/decode pipeline;
      // the record is backfilled so that x stays consistent with b = a_y.
      const Bit hit = device_outcome(config.strategy, rng);
      const Bit queried = in.y ? in.a1 : in.a0;
      r.b = hit ? queried : static_cast<Bit>(1 - queried);
      r.m = r.b;
      r.x = hit;
    } else {
      const ChosenMessage chosen =
          choose_message(config.strategy, strategy_state, in.a0, in.a1, rng);
      r.m = chosen.m;
      r.b = chosen.m;  // fixed decoding b = m
      r.x = success(in.a0, in.a1, in.y, r.b);
      update(config.strategy, strategy_state, chosen.action, r.x);
      observe_query(config.strategy, strategy_state, in.y);
    }
    r.kept = 1;
    sim.trace.rounds.push_back(r);
  }

  sim.trace = apply_selection(std::move(sim.trace), config.selection, rng);
  sim.q_final = export_q(config.strategy, strategy_state);
  return sim;
}

BenchmarkMode resolve_benchmark(const BenchmarkMode& benchmark, const RunConfig& config,
                                const SimResult& sim) {
  BenchmarkMode resolved = benchmark;
  switch (benchmark.kind) {
    case BenchmarkKind::Nominal:
    case BenchmarkKind::Robust:
      break;
    case BenchmarkKind::Effective:
      if (!resolved.known_eps) {
        if (config.input_model.variant == InputVariant::IidBias) {
          resolved.known_eps = config.input_model.epsilon;
        } else {
          // Memoryful or drifting inputs: the operationally consistent
          // reference is the schedule-aware per-round optimum.
          resolved.kind = BenchmarkKind::Nonstationary;
          resolved.schedule = sim.cond_bias;
        }
      }
      break;
    case BenchmarkKind::Nonstationary:
      if (resolved.schedule.empty()) resolved.schedule = sim.cond_bias;
      break;
  }
  return resolved;
}

std::pair<Trace, ScoreReport> run_once(const RunConfig& config) {
  SimResult sim = simulate_run(config);
  const BenchmarkMode benchmark = resolve_benchmark(config.benchmark, config, sim);
  ScoreReport report = certify(sim.trace, config.scoring, benchmark, config.confidence);
  report.q_final = sim.q_final;
  return {std::move(sim.trace), std::move(report)};
}

double trailing_score(const Trace& trace, std::int64_t window) {
  if (trace.rounds.empty()) throw std::domain_error("trailing_score: no rounds");
  const std::int64_t n = static_cast<std::int64_t>(trace.rounds.size());
  const std::int64_t w = std::min(window, n);
  std::int64_t hits = 0;
  for (std::int64_t i = n - w; i < n; ++i) {
    const auto& r = trace.rounds[static_cast<std::size_t>(i)];
    hits += r.kept && r.x;
  }
  return static_cast<double>(hits) / static_cast<double>(w);
}

namespace {

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = static_cast<int>(std::min<std::int64_t>(n_threads, count));
  if (n_threads <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int k = 0; k < n_threads; ++k) {
    pool.emplace_back([&, k]() {
      const std::int64_t lo = count * k / n_threads;
      const std::int64_t hi = count * (k + 1) / n_threads;
      try {
        for (std::int64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(k)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

double configured_score(const ScoreReport& report) {
  return report.scoring == ScoringMode::Unconditional ? report.s_uncond
                                                      : report.s_cond.value();
}

constexpr std::int64_t kTrailingWindow = 10000;

}  // namespace

std::vector<SweepCell> run_replicates_multi(const RunConfig& config, int m_reps,
                                            std::uint64_t base_seed,
                                            std::span<const EvalSpec> evals,
                                            int threads) {
  if (m_reps < 1) throw std::invalid_argument("run_replicates: m_reps must be >= 1");
  if (evals.empty()) throw std::invalid_argument("run_replicates: no evaluations given");
  validate(config);

  const std::size_t n_evals = evals.size();
  std::vector<std::vector<ScoreReport>> reports(
      static_cast<std::size_t>(m_reps));
  std::vector<double> trailing(static_cast<std::size_t>(m_reps), 0.0);

  parallel_for(m_reps, threads, [&](std::int64_t i) {
    RunConfig replicate = config;
    replicate.seed = derive_seed(base_seed, static_cast<std::uint64_t>(i));
    const SimResult sim = simulate_run(replicate);
    trailing[static_cast<std::size_t>(i)] = trailing_score(sim.trace, kTrailingWindow);
    auto& slot = reports[static_cast<std::size_t>(i)];
    slot.reserve(n_evals);
    for (const EvalSpec& eval : evals) {
      const BenchmarkMode benchmark = resolve_benchmark(eval.benchmark, replicate, sim);
      slot.push_back(certify(sim.trace, eval.scoring, benchmark, replicate.confidence));
    }
  });

  std::vector<SweepCell> cells(n_evals);
  for (std::size_t e = 0; e < n_evals; ++e) {
    SweepCell& cell = cells[e];
    cell.label = evals[e].label;
    cell.strategy = strategy_tag(config.strategy);
    cell.m_reps = m_reps;
    std::vector<double> deltas;
    deltas.reserve(static_cast<std::size_t>(m_reps));
    std::int64_t accepts = 0;
    double sum_score = 0, sum_low = 0, sum_bench = 0, sum_delta = 0, sum_trailing = 0;
    for (int i = 0; i < m_reps; ++i) {
      const ScoreReport& r = reports[static_cast<std::size_t>(i)][e];
      sum_score += configured_score(r);
      sum_low += r.s_low;
      sum_bench += r.benchmark_value;
      sum_delta += r.delta_rob;
      deltas.push_back(r.delta_rob);
      accepts += r.verdict == Verdict::Accept;
      sum_trailing += trailing[static_cast<std::size_t>(i)];
    }
    const double m = static_cast<double>(m_reps);
    cell.mean_score = sum_score / m;
    cell.mean_s_low = sum_low / m;
    cell.benchmark = sum_bench / m;
    cell.mean_delta_rob = sum_delta / m;
    cell.median_delta_rob = median(std::move(deltas));
    cell.accept_rate = static_cast<double>(accepts) / m;
    cell.accept_se = std::sqrt(cell.accept_rate * (1.0 - cell.accept_rate) / m);
    cell.mean_trailing = sum_trailing / m;
  }
  return cells;
}

SweepCell run_replicates(const RunConfig& config, int m_reps, std::uint64_t base_seed,
                         int threads) {
  const EvalSpec eval{"RUN", config.scoring, config.benchmark};
  return run_replicates_multi(config, m_reps, base_seed, {&eval, 1}, threads)[0];
}

SweepResult sweep_bias(std::span<const double> eps_grid, const RunConfig& config_template,
                       int m_reps, int threads) {
  if (eps_grid.empty()) throw std::invalid_argument("sweep_bias: empty grid");
  SweepResult result;
  result.axis_name = "epsilon";
  std::uint64_t cell_index = 0;
  for (double eps : eps_grid) {
    if (std::abs(eps) > 0.5) throw std::invalid_argument("sweep_bias: |eps| must be <= 1/2");
    RunConfig config = config_template;
    config.input_model = InputModelSpec{};
    config.input_model.variant = InputVariant::IidBias;
    config.input_model.epsilon = eps;
    if (config.strategy.variant == StrategyVariant::BiasAware) {
      config.strategy.known_eps = eps;
    }
    BenchmarkMode effective;
    effective.kind = BenchmarkKind::Effective;
    effective.known_eps = eps;
    const EvalSpec evals[2] = {
        {"NOMINAL", config.scoring, BenchmarkMode{}},
        {"EFFECTIVE", config.scoring, effective},
    };
    auto cells = run_replicates_multi(config, m_reps,
                                      derive_seed(config_template.seed, cell_index++),
                                      evals, threads);
    for (auto& cell : cells) {
      cell.axis = eps;
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

SweepResult sweep_rounds(std::span<const std::int64_t> n_grid,
                         const RunConfig& config_template, int m_reps,
                         std::span<const StrategySpec> strategies, int threads) {
  if (n_grid.empty()) throw std::invalid_argument("sweep_rounds: empty grid");
  std::vector<StrategySpec> defaults;
  if (strategies.empty()) {
    StrategySpec s;
    s.variant = StrategyVariant::StaticA0;
    defaults.push_back(s);
    s.variant = StrategyVariant::Bandit;
    defaults.push_back(s);
    s.variant = StrategyVariant::WindowedBandit;
    defaults.push_back(s);
    strategies = defaults;
  }
  SweepResult result;
  result.axis_name = "rounds";
  std::uint64_t cell_index = 0;
  for (std::int64_t n : n_grid) {
    if (n < 10) throw std::invalid_argument("sweep_rounds: n values must be >= 10");
    for (const StrategySpec& strategy : strategies) {
      RunConfig config = config_template;
      config.n_rounds = n;
      config.strategy = strategy;
      BenchmarkMode aligned;
      aligned.kind = BenchmarkKind::Effective;  // resolved per model
      const EvalSpec evals[2] = {
          {"CARELESS", ScoringMode::Conditional, BenchmarkMode{}},
          {"ALIGNED", ScoringMode::Unconditional, aligned},
      };
      auto cells = run_replicates_multi(config, m_reps,
                                        derive_seed(config_template.seed, cell_index++),
                                        evals, threads);
      for (auto& cell : cells) {
        cell.axis = static_cast<double>(n);
        result.cells.push_back(std::move(cell));
      }
    }
  }
  return result;
}

SweepResult stress_postselect(std::span<const double> f_grid,
                              const RunConfig& config_template, int m_reps,
                              int threads) {
  if (f_grid.empty()) throw std::invalid_argument("stress_postselect: empty grid");
  SweepResult result;
  result.axis_name = "discard_fraction";
  std::uint64_t cell_index = 0;
  for (double f : f_grid) {
    RunConfig config = config_template;
    config.selection.variant = config_template.selection.variant == SelectionVariant::None
                                   ? SelectionVariant::Adversarial
                                   : config_template.selection.variant;
    config.selection.discard_fraction = f;
    BenchmarkMode aligned;
    aligned.kind = BenchmarkKind::Effective;
    const EvalSpec evals[2] = {
        {"CARELESS", ScoringMode::Conditional, BenchmarkMode{}},
        {"ALIGNED", ScoringMode::Unconditional, aligned},
    };
    auto cells = run_replicates_multi(config, m_reps,
                                      derive_seed(config_template.seed, cell_index++),
                                      evals, threads);
    for (auto& cell : cells) {
      cell.axis = f;
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

RunConfig moderate_deviation_regime() {
  RunConfig config;
  config.n_rounds = 20000;
  config.seed = 7005;
  config.input_model.variant = InputVariant::DriftSine;
  config.input_model.epsilon0 = 0.005;
  config.input_model.amp = 0.12;
  config.input_model.period = 2000;
  config.selection.variant = SelectionVariant::Adversarial;
  config.selection.discard_fraction = 0.005;
  config.strategy.variant = StrategyVariant::WindowedBandit;
  return config;
}

std::string SweepResult::to_csv() const {
  std::string out = "axis,label,strategy,m_reps,mean_score,mean_s_low,benchmark,"
                    "mean_delta_rob,median_delta_rob,accept_rate,accept_se,mean_trailing\n";
  char buf[512];
  for (const SweepCell& c : cells) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%s,%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  c.axis, c.label.c_str(), c.strategy.c_str(), c.m_reps, c.mean_score,
                  c.mean_s_low, c.benchmark, c.mean_delta_rob, c.median_delta_rob,
                  c.accept_rate, c.accept_se, c.mean_trailing);
    out += buf;
  }
  return out;
}

std::string SweepResult::to_json() const {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["axis_name"] = axis_name;
  j["cells"] = nlohmann::ordered_json::array();
  for (const SweepCell& c : cells) {
    nlohmann::ordered_json cell;
    cell["axis"] = c.axis;
    cell["label"] = c.label;
    cell["strategy"] = c.strategy;
    cell["m_reps"] = c.m_reps;
    cell["mean_score"] = c.mean_score;
    cell["mean_s_low"] = c.mean_s_low;
    cell["benchmark"] = c.benchmark;
    cell["mean_delta_rob"] = c.mean_delta_rob;
    cell["median_delta_rob"] = c.median_delta_rob;
    cell["accept_rate"] = c.accept_rate;
    cell["accept_se"] = c.accept_se;
    cell["mean_trailing"] = c.mean_trailing;
    j["cells"].push_back(std::move(cell));
  }
  return j.dump(2) + "\n";
}

}  // namespace racgap

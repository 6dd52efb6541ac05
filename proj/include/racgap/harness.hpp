#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "racgap/certify.hpp"
#include "racgap/input_models.hpp"
#include "racgap/rac_core.hpp"
#include "racgap/selection.hpp"
#include "racgap/stats.hpp"
#include "racgap/strategies.hpp"

namespace racgap {

// Everything a single run needs. A fixed seed makes the run fully
// reproducible: one xoshiro stream drives inputs, strategy and selection
// in a documented order.
struct RunConfig {
  std::int64_t n_rounds = 10000;
  std::uint64_t seed = 1;
  InputModelSpec input_model;
  StrategySpec strategy;
  SelectionSpec selection;
  ScoringMode scoring = ScoringMode::Unconditional;
  BenchmarkMode benchmark;
  ConfidenceParams confidence;
};

void validate(const RunConfig& config);

// Simulation product kept around for benchmark resolution: the trace, the
// realized conditional-bias schedule Pr(y_t=0 | history) - 1/2, and the
// final learner table.
struct SimResult {
  Trace trace;
  std::vector<double> cond_bias;
  std::vector<double> q_final;
};

// Round order: draw inputs, choose the message before y is revealed,
// decode b = m, then update/observe_query; selection runs once at the end.
SimResult simulate_run(const RunConfig& config);

// Fills in whatever the benchmark mode left open: EFFECTIVE without
// known_eps becomes EFFECTIVE(model eps) for IID inputs and NONSTATIONARY
// with the realized conditional-bias schedule otherwise; an empty
// NONSTATIONARY schedule is likewise taken from the simulation.
BenchmarkMode resolve_benchmark(const BenchmarkMode& benchmark, const RunConfig& config,
                                const SimResult& sim);

std::pair<Trace, ScoreReport> run_once(const RunConfig& config);

// Unconditional mean of kept*x over the last min(window, N) rounds.
double trailing_score(const Trace& trace, std::int64_t window);

// One (scoring, benchmark) pair to evaluate on a simulated trace; the
// benchmark may be unresolved.
struct EvalSpec {
  std::string label;
  ScoringMode scoring = ScoringMode::Unconditional;
  BenchmarkMode benchmark;
};

// Aggregates over the replicates of one sweep cell.
struct SweepCell {
  double axis = 0.0;
  std::string label;
  std::string strategy;
  int m_reps = 0;
  double mean_score = 0.0;     // mean of the configured score
  double mean_s_low = 0.0;
  double benchmark = 0.0;      // mean benchmark value (varies when data driven)
  double mean_delta_rob = 0.0;
  double median_delta_rob = 0.0;
  double accept_rate = 0.0;
  double accept_se = 0.0;      // sqrt(r(1-r)/M)
  double mean_trailing = 0.0;  // trailing-window score, 1e4 rounds
};

struct SweepResult {
  std::string axis_name;
  std::vector<SweepCell> cells;

  std::string to_csv() const;
  std::string to_json() const;
};

// Replicate i runs with seed derive_seed(base_seed, i); aggregation is a
// fixed-order reduction over the replicate index, so results do not depend
// on the number of worker threads (threads <= 0 picks the hardware count).
SweepCell run_replicates(const RunConfig& config, int m_reps, std::uint64_t base_seed,
                         int threads = 0);

// Same replicates, several (scoring, benchmark) evaluations per trace.
std::vector<SweepCell> run_replicates_multi(const RunConfig& config, int m_reps,
                                            std::uint64_t base_seed,
                                            std::span<const EvalSpec> evals,
                                            int threads = 0);

// One cell per bias value, NOMINAL and EFFECTIVE benchmarks evaluated on
// the same traces. The input model is forced to IID_BIAS(eps); a
// BIAS_AWARE strategy is handed the cell's true eps.
SweepResult sweep_bias(std::span<const double> eps_grid, const RunConfig& config_template,
                       int m_reps, int threads = 0);

// CARELESS (conditional + nominal) and ALIGNED (unconditional +
// model-resolved) evaluations per round count, for each strategy in
// `strategies` (defaults to static vs adaptive: STATIC_A0, BANDIT,
// WINDOWED_BANDIT).
SweepResult sweep_rounds(std::span<const std::int64_t> n_grid,
                         const RunConfig& config_template, int m_reps,
                         std::span<const StrategySpec> strategies = {}, int threads = 0);

// Paired CARELESS/ALIGNED evaluations over a discard-fraction grid; the
// template's selection variant is kept unless it is NONE, in which case
// the adversarial rule is stressed.
SweepResult stress_postselect(std::span<const double> f_grid,
                              const RunConfig& config_template, int m_reps,
                              int threads = 0);

// The moderate-deviation regime for the memory-vs-misalignment study:
// slow sinusoidal drift around a mild baseline bias with light adversarial
// discarding. Sized so that at N = 2e4 a static strategy only occasionally
// crosses the careless threshold while a drift-tracking bandit does so
// with high probability.
RunConfig moderate_deviation_regime();

}  // namespace racgap

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "racgap/rac_core.hpp"
#include "racgap/stats.hpp"

namespace racgap {

enum class BenchmarkKind { Nominal, Effective, Robust, Nonstationary };
enum class EpsMaxSource { Given, DataDriven };
enum class Verdict { Accept, Reject };
enum class EvaluationTag { Aligned, Careless };

BenchmarkKind benchmark_kind_from_string(const std::string& s);
std::string to_string(BenchmarkKind kind);
std::string to_string(EpsMaxSource source);
std::string to_string(Verdict verdict);
std::string to_string(EvaluationTag tag);

// Which classical reference the verdict is taken against.
//   NOMINAL        3/4, the ideal ceiling.
//   EFFECTIVE      3/4 + |known_eps|/2. With known_eps unset the harness
//                  resolves it from the input model (EFFECTIVE for IID,
//                  NONSTATIONARY with the conditional-bias schedule
//                  otherwise); certify() itself requires it resolved.
//   ROBUST         3/4 + eps_max/2, with eps_max GIVEN or estimated from
//                  the trace's query counts (DATA_DRIVEN).
//   NONSTATIONARY  schedule-aware per-round optimum; schedule length must
//                  match the trace.
struct BenchmarkMode {
  BenchmarkKind kind = BenchmarkKind::Nominal;
  std::optional<double> known_eps;
  EpsMaxSource eps_max_source = EpsMaxSource::Given;
  std::optional<double> eps_max;
  std::vector<double> schedule;
};

// The certification triplet outputs. delta_rob = s_low - benchmark_value;
// ACCEPT iff s_low > benchmark_value (strict).
struct ScoreReport {
  std::int64_t n = 0;
  std::int64_t n_kept = 0;
  double s_uncond = 0.0;
  std::optional<double> s_cond;
  double s_low = 0.0;
  BiasEstimate bias{};
  ScoringMode scoring = ScoringMode::Unconditional;
  BenchmarkKind benchmark_kind = BenchmarkKind::Nominal;
  double benchmark_value = 0.0;
  double delta_rob = 0.0;
  std::optional<double> delta_rob_minimax;  // ROBUST benchmarks only
  Verdict verdict = Verdict::Reject;
  EvaluationTag evaluation_tag = EvaluationTag::Careless;
  double alpha = 0.05;
  double beta = 0.05;
  std::vector<double> q_final;  // learner value table, when one exists
};

// Scores the trace under the requested rule, applies the Azuma bound with
// n = N (unconditional) or n = n_kept (conditional), resolves the
// benchmark and fills the report. The conditional bound deliberately uses
// n_kept: it makes the careless evaluation maximally favourable to false
// acceptance, which is what the stress tests probe.
ScoreReport certify(const Trace& trace, ScoringMode scoring,
                    const BenchmarkMode& benchmark, const ConfidenceParams& params);

struct EvaluationPreset {
  ScoringMode scoring = ScoringMode::Unconditional;
  BenchmarkMode benchmark;
};

// "ALIGNED" -> (UNCONDITIONAL, EFFECTIVE-resolved-per-model);
// "CARELESS" -> (CONDITIONAL, NOMINAL). Throws on anything else.
EvaluationPreset evaluation_preset(const std::string& name);

// Flat JSON object (format_version 1).
std::string report_to_json(const ScoreReport& report);

// Aligned two-column text table for terminal output.
std::string report_table(const ScoreReport& report);

}  // namespace racgap

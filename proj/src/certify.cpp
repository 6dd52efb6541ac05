#include "racgap/certify.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "racgap/ceilings.hpp"

namespace racgap {

BenchmarkKind benchmark_kind_from_string(const std::string& s) {
  if (s == "NOMINAL") return BenchmarkKind::Nominal;
  if (s == "EFFECTIVE") return BenchmarkKind::Effective;
  if (s == "ROBUST") return BenchmarkKind::Robust;
  if (s == "NONSTATIONARY") return BenchmarkKind::Nonstationary;
  throw std::invalid_argument("unknown benchmark mode: " + s);
}

std::string to_string(BenchmarkKind kind) {
  switch (kind) {
    case BenchmarkKind::Nominal: return "NOMINAL";
    case BenchmarkKind::Effective: return "EFFECTIVE";
    case BenchmarkKind::Robust: return "ROBUST";
    case BenchmarkKind::Nonstationary: return "NONSTATIONARY";
  }
  return "?";
}

std::string to_string(EpsMaxSource source) {
  return source == EpsMaxSource::Given ? "GIVEN" : "DATA_DRIVEN";
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::Accept ? "ACCEPT" : "REJECT";
}

std::string to_string(EvaluationTag tag) {
  return tag == EvaluationTag::Aligned ? "ALIGNED" : "CARELESS";
}

ScoreReport certify(const Trace& trace, ScoringMode scoring,
                    const BenchmarkMode& benchmark, const ConfidenceParams& params) {
  validate(params);
  if (trace.rounds.empty()) throw std::domain_error("certify: trace has no rounds");

  ScoreReport report;
  report.n = static_cast<std::int64_t>(trace.rounds.size());
  report.n_kept = kept_count(trace);
  report.scoring = scoring;
  report.alpha = params.alpha;
  report.beta = params.beta;

  report.s_uncond = score_unconditional(trace);
  if (report.n_kept > 0) report.s_cond = score_conditional(trace);

  double configured_score = 0.0;
  std::int64_t n_eval = 0;
  if (scoring == ScoringMode::Unconditional) {
    configured_score = report.s_uncond;
    n_eval = report.n;
  } else {
    if (!report.s_cond) {
      throw std::domain_error("certify: conditional scoring with zero kept rounds");
    }
    configured_score = *report.s_cond;
    n_eval = report.n_kept;
  }
  report.s_low = azuma_lower(configured_score, n_eval, params.alpha);

  std::int64_t n_zero = 0;
  for (const auto& r : trace.rounds) n_zero += r.y == 0;
  report.bias = bias_interval(n_zero, report.n, params.beta);

  report.benchmark_kind = benchmark.kind;
  switch (benchmark.kind) {
    case BenchmarkKind::Nominal:
      report.benchmark_value = 0.75;
      break;
    case BenchmarkKind::Effective:
      if (!benchmark.known_eps) {
        throw std::invalid_argument("certify: EFFECTIVE benchmark needs known_eps resolved");
      }
      report.benchmark_value = rac_effective_ceiling(*benchmark.known_eps);
      break;
    case BenchmarkKind::Robust: {
      double eps_max = 0.0;
      if (benchmark.eps_max_source == EpsMaxSource::DataDriven) {
        eps_max = report.bias.eps_max;
      } else {
        if (!benchmark.eps_max) {
          throw std::invalid_argument("certify: ROBUST benchmark with GIVEN source needs eps_max");
        }
        eps_max = *benchmark.eps_max;
      }
      report.benchmark_value = robust_ceiling(eps_max);
      break;
    }
    case BenchmarkKind::Nonstationary:
      if (benchmark.schedule.empty()) {
        throw std::invalid_argument("certify: NONSTATIONARY benchmark needs a schedule");
      }
      if (static_cast<std::int64_t>(benchmark.schedule.size()) != report.n) {
        throw std::invalid_argument("certify: schedule length must equal the trace length");
      }
      report.benchmark_value = nonstationary_ceiling(benchmark.schedule);
      break;
  }

  report.delta_rob = report.s_low - report.benchmark_value;
  if (benchmark.kind == BenchmarkKind::Robust) {
    report.delta_rob_minimax = report.delta_rob;
  }
  report.verdict = report.s_low > report.benchmark_value ? Verdict::Accept : Verdict::Reject;
  report.evaluation_tag =
      (scoring == ScoringMode::Unconditional && benchmark.kind != BenchmarkKind::Nominal)
          ? EvaluationTag::Aligned
          : EvaluationTag::Careless;
  return report;
}

EvaluationPreset evaluation_preset(const std::string& name) {
  if (name == "CARELESS") {
    EvaluationPreset preset;
    preset.scoring = ScoringMode::Conditional;
    preset.benchmark.kind = BenchmarkKind::Nominal;
    return preset;
  }
  if (name == "ALIGNED") {
    EvaluationPreset preset;
    preset.scoring = ScoringMode::Unconditional;
    preset.benchmark.kind = BenchmarkKind::Effective;  // resolved per model
    return preset;
  }
  throw std::invalid_argument("unknown evaluation preset: " + name);
}

std::string report_to_json(const ScoreReport& report) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["n"] = report.n;
  j["n_kept"] = report.n_kept;
  j["s_uncond"] = report.s_uncond;
  if (report.s_cond) {
    j["s_cond"] = *report.s_cond;
  } else {
    j["s_cond"] = nullptr;
  }
  j["s_low"] = report.s_low;
  j["eps_hat"] = report.bias.eps_hat;
  j["delta"] = report.bias.delta;
  j["eps_max"] = report.bias.eps_max;
  j["bias_n"] = report.bias.n;
  j["scoring"] = to_string(report.scoring);
  j["benchmark_mode"] = to_string(report.benchmark_kind);
  j["benchmark_value"] = report.benchmark_value;
  j["delta_rob"] = report.delta_rob;
  if (report.delta_rob_minimax) {
    j["delta_rob_minimax"] = *report.delta_rob_minimax;
  } else {
    j["delta_rob_minimax"] = nullptr;
  }
  j["verdict"] = to_string(report.verdict);
  j["evaluation_tag"] = to_string(report.evaluation_tag);
  j["alpha"] = report.alpha;
  j["beta"] = report.beta;
  if (!report.q_final.empty()) j["q_final"] = report.q_final;
  return j.dump(2) + "\n";
}

std::string report_table(const ScoreReport& report) {
  std::ostringstream out;
  auto row = [&out](const std::string& key, const std::string& value) {
    out << "  " << std::left << std::setw(22) << key << value << "\n";
  };
  auto num = [](double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
  };
  row("rounds", std::to_string(report.n));
  row("kept", std::to_string(report.n_kept));
  row("S (unconditional)", num(report.s_uncond));
  row("S (conditional)", report.s_cond ? num(*report.s_cond) : std::string("undefined"));
  row("scoring", to_string(report.scoring));
  row("S_low", num(report.s_low));
  row("eps_hat", num(report.bias.eps_hat));
  row("eps_max", num(report.bias.eps_max));
  row("benchmark", to_string(report.benchmark_kind) + " = " + num(report.benchmark_value));
  row("delta_rob", num(report.delta_rob));
  if (report.delta_rob_minimax) row("delta_rob_minimax", num(*report.delta_rob_minimax));
  row("verdict", to_string(report.verdict) + "  [" + to_string(report.evaluation_tag) + "]");
  return out.str();
}

}  // namespace racgap

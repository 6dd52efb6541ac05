#include "racgap/config_io.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>

namespace racgap {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::string& section,
                         std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) {
      throw std::invalid_argument("config: unknown key '" + section + key + "'");
    }
  }
}

double get_number(const json& j, const char* key, const std::string& section) {
  if (!j.at(key).is_number()) {
    throw std::invalid_argument("config: '" + section + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

InputModelSpec input_model_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'input_model' must be an object");
  const std::string variant = j.value("variant", std::string("IID_BIAS"));
  InputModelSpec spec;
  spec.variant = input_variant_from_string(variant);
  switch (spec.variant) {
    case InputVariant::IidBias:
      reject_unknown_keys(j, "input_model.", {"variant", "epsilon"});
      if (j.contains("epsilon")) spec.epsilon = get_number(j, "epsilon", "input_model.");
      break;
    case InputVariant::Markov:
      reject_unknown_keys(j, "input_model.",
                          {"variant", "p00", "p10", "p_stay", "eps_target"});
      if (j.contains("p_stay") || j.contains("eps_target")) {
        if (j.contains("p00") || j.contains("p10")) {
          throw std::invalid_argument(
              "config: give either (p00,p10) or (p_stay,eps_target), not both");
        }
        spec = markov_from_stay(get_number(j, "p_stay", "input_model."),
                                get_number(j, "eps_target", "input_model."));
      } else {
        spec.p00 = get_number(j, "p00", "input_model.");
        spec.p10 = get_number(j, "p10", "input_model.");
      }
      break;
    case InputVariant::DriftSine:
      reject_unknown_keys(j, "input_model.", {"variant", "epsilon0", "amp", "period"});
      spec.epsilon0 = get_number(j, "epsilon0", "input_model.");
      spec.amp = get_number(j, "amp", "input_model.");
      spec.period = get_number(j, "period", "input_model.");
      break;
    case InputVariant::DriftWalk:
      reject_unknown_keys(j, "input_model.", {"variant", "step", "bound"});
      spec.step = get_number(j, "step", "input_model.");
      spec.bound = get_number(j, "bound", "input_model.");
      break;
  }
  validate(spec);
  return spec;
}

StrategySpec strategy_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'strategy' must be an object");
  const std::string variant = j.value("variant", std::string("STATIC_A0"));
  StrategySpec spec;
  spec.variant = strategy_variant_from_string(variant);
  switch (spec.variant) {
    case StrategyVariant::StaticA0:
    case StrategyVariant::StaticA1:
      reject_unknown_keys(j, "strategy.", {"variant"});
      break;
    case StrategyVariant::BiasAware:
      reject_unknown_keys(j, "strategy.", {"variant", "known_eps"});
      spec.known_eps = get_number(j, "known_eps", "strategy.");
      break;
    case StrategyVariant::Bandit:
    case StrategyVariant::WindowedBandit: {
      if (spec.variant == StrategyVariant::Bandit) {
        reject_unknown_keys(j, "strategy.", {"variant", "eta", "explore", "q_init"});
      } else {
        reject_unknown_keys(j, "strategy.",
                            {"variant", "eta", "explore", "q_init", "window"});
        if (j.contains("window")) spec.window = j.at("window").get<int>();
      }
      if (j.contains("eta")) spec.eta = get_number(j, "eta", "strategy.");
      if (j.contains("explore")) spec.explore = get_number(j, "explore", "strategy.");
      if (j.contains("q_init")) {
        const auto& q = j.at("q_init");
        if (!q.is_array() || q.size() != 2) {
          throw std::invalid_argument("config: 'strategy.q_init' must be [q0, q1]");
        }
        spec.q_init = {q[0].get<double>(), q[1].get<double>()};
      }
      break;
    }
    case StrategyVariant::ParamDevice:
      reject_unknown_keys(j, "strategy.", {"variant", "p_success"});
      spec.p_success = get_number(j, "p_success", "strategy.");
      break;
  }
  validate(spec);
  return spec;
}

SelectionSpec selection_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'selection' must be an object");
  reject_unknown_keys(j, "selection.", {"variant", "discard_fraction"});
  SelectionSpec spec;
  spec.variant = selection_variant_from_string(j.value("variant", std::string("NONE")));
  if (j.contains("discard_fraction")) {
    spec.discard_fraction = get_number(j, "discard_fraction", "selection.");
  }
  validate(spec);
  return spec;
}

BenchmarkMode benchmark_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'benchmark' must be an object");
  BenchmarkMode mode;
  mode.kind = benchmark_kind_from_string(j.value("mode", std::string("NOMINAL")));
  switch (mode.kind) {
    case BenchmarkKind::Nominal:
      reject_unknown_keys(j, "benchmark.", {"mode"});
      break;
    case BenchmarkKind::Effective:
      reject_unknown_keys(j, "benchmark.", {"mode", "known_eps"});
      if (j.contains("known_eps")) mode.known_eps = get_number(j, "known_eps", "benchmark.");
      break;
    case BenchmarkKind::Robust:
      reject_unknown_keys(j, "benchmark.", {"mode", "eps_max", "source"});
      if (j.contains("source")) {
        const std::string source = j.at("source").get<std::string>();
        if (source == "GIVEN") {
          mode.eps_max_source = EpsMaxSource::Given;
        } else if (source == "DATA_DRIVEN") {
          mode.eps_max_source = EpsMaxSource::DataDriven;
        } else {
          throw std::invalid_argument("config: 'benchmark.source' must be GIVEN or DATA_DRIVEN");
        }
      } else {
        mode.eps_max_source =
            j.contains("eps_max") ? EpsMaxSource::Given : EpsMaxSource::DataDriven;
      }
      if (j.contains("eps_max")) mode.eps_max = get_number(j, "eps_max", "benchmark.");
      if (mode.eps_max_source == EpsMaxSource::Given && !mode.eps_max) {
        throw std::invalid_argument("config: ROBUST benchmark with GIVEN source needs eps_max");
      }
      break;
    case BenchmarkKind::Nonstationary:
      reject_unknown_keys(j, "benchmark.", {"mode", "schedule"});
      if (j.contains("schedule")) {
        mode.schedule = j.at("schedule").get<std::vector<double>>();
      }
      break;
  }
  return mode;
}

ConfidenceParams confidence_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: 'confidence' must be an object");
  reject_unknown_keys(j, "confidence.", {"alpha", "beta"});
  ConfidenceParams params;
  if (j.contains("alpha")) params.alpha = get_number(j, "alpha", "confidence.");
  if (j.contains("beta")) params.beta = get_number(j, "beta", "confidence.");
  validate(params);
  return params;
}

}  // namespace

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: document must be a JSON object");
  reject_unknown_keys(j, "", {"rounds", "seed", "input_model", "strategy", "selection",
                              "scoring", "benchmark", "confidence"});
  RunConfig config;
  if (j.contains("rounds")) config.n_rounds = j.at("rounds").get<std::int64_t>();
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("input_model")) config.input_model = input_model_from_json(j.at("input_model"));
  if (j.contains("strategy")) config.strategy = strategy_from_json(j.at("strategy"));
  if (j.contains("selection")) config.selection = selection_from_json(j.at("selection"));
  if (j.contains("scoring")) config.scoring = scoring_from_string(j.at("scoring").get<std::string>());
  if (j.contains("benchmark")) config.benchmark = benchmark_from_json(j.at("benchmark"));
  if (j.contains("confidence")) config.confidence = confidence_from_json(j.at("confidence"));
  validate(config);
  return config;
}

nlohmann::json run_config_to_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["rounds"] = config.n_rounds;
  j["seed"] = config.seed;
  nlohmann::ordered_json model;
  model["variant"] = to_string(config.input_model.variant);
  switch (config.input_model.variant) {
    case InputVariant::IidBias: model["epsilon"] = config.input_model.epsilon; break;
    case InputVariant::Markov:
      model["p00"] = config.input_model.p00;
      model["p10"] = config.input_model.p10;
      break;
    case InputVariant::DriftSine:
      model["epsilon0"] = config.input_model.epsilon0;
      model["amp"] = config.input_model.amp;
      model["period"] = config.input_model.period;
      break;
    case InputVariant::DriftWalk:
      model["step"] = config.input_model.step;
      model["bound"] = config.input_model.bound;
      break;
  }
  j["input_model"] = model;
  nlohmann::ordered_json strategy;
  strategy["variant"] = to_string(config.strategy.variant);
  switch (config.strategy.variant) {
    case StrategyVariant::BiasAware: strategy["known_eps"] = config.strategy.known_eps; break;
    case StrategyVariant::WindowedBandit:
      strategy["window"] = config.strategy.window;
      [[fallthrough]];
    case StrategyVariant::Bandit:
      strategy["eta"] = config.strategy.eta;
      strategy["explore"] = config.strategy.explore;
      strategy["q_init"] = config.strategy.q_init;
      break;
    case StrategyVariant::ParamDevice: strategy["p_success"] = config.strategy.p_success; break;
    default: break;
  }
  j["strategy"] = strategy;
  nlohmann::ordered_json selection;
  selection["variant"] = to_string(config.selection.variant);
  if (config.selection.variant != SelectionVariant::None) {
    selection["discard_fraction"] = config.selection.discard_fraction;
  }
  j["selection"] = selection;
  j["scoring"] = to_string(config.scoring);
  nlohmann::ordered_json benchmark;
  benchmark["mode"] = to_string(config.benchmark.kind);
  if (config.benchmark.known_eps) benchmark["known_eps"] = *config.benchmark.known_eps;
  if (config.benchmark.kind == BenchmarkKind::Robust) {
    benchmark["source"] = to_string(config.benchmark.eps_max_source);
    if (config.benchmark.eps_max) benchmark["eps_max"] = *config.benchmark.eps_max;
  }
  if (!config.benchmark.schedule.empty()) benchmark["schedule"] = config.benchmark.schedule;
  j["benchmark"] = benchmark;
  j["confidence"] = {{"alpha", config.confidence.alpha}, {"beta", config.confidence.beta}};
  return j;
}

RunConfig load_run_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  for (const auto& o : overrides) apply_override(j, o);
  return run_config_from_json(j);
}

void apply_override(nlohmann::json& j, const std::string& key_eq_value) {
  const std::size_t eq = key_eq_value.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("override must look like section.key=value: " + key_eq_value);
  }
  const std::string path = key_eq_value.substr(0, eq);
  const std::string raw = key_eq_value.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // unquoted strings, e.g. scoring=CONDITIONAL
  }
  json* node = &j;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (key.empty()) throw std::invalid_argument("override has an empty key segment: " + key_eq_value);
    if (dot == std::string::npos) {
      (*node)[key] = value;
      break;
    }
    node = &(*node)[key];
    pos = dot + 1;
  }
}

PamTask load_pam_task(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open task file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  reject_unknown_keys(j, "", {"n_a", "n_y", "n_b", "n_m", "coeffs", "input_law"});
  PamTask task;
  task.n_a = j.at("n_a").get<int>();
  task.n_y = j.at("n_y").get<int>();
  task.n_b = j.at("n_b").get<int>();
  task.n_m = j.at("n_m").get<int>();
  task.coeffs = j.at("coeffs").get<std::vector<double>>();
  task.input_law = j.at("input_law").get<std::vector<double>>();
  validate(task);
  return task;
}

}  // namespace racgap

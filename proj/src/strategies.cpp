#include "racgap/strategies.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace racgap {

StrategyVariant strategy_variant_from_string(const std::string& s) {
  if (s == "STATIC_A0") return StrategyVariant::StaticA0;
  if (s == "STATIC_A1") return StrategyVariant::StaticA1;
  if (s == "BIAS_AWARE") return StrategyVariant::BiasAware;
  if (s == "BANDIT") return StrategyVariant::Bandit;
  if (s == "WINDOWED_BANDIT") return StrategyVariant::WindowedBandit;
  if (s == "PARAM_DEVICE") return StrategyVariant::ParamDevice;
  throw std::invalid_argument("unknown strategy variant: " + s);
}

std::string to_string(StrategyVariant v) {
  switch (v) {
    case StrategyVariant::StaticA0: return "STATIC_A0";
    case StrategyVariant::StaticA1: return "STATIC_A1";
    case StrategyVariant::BiasAware: return "BIAS_AWARE";
    case StrategyVariant::Bandit: return "BANDIT";
    case StrategyVariant::WindowedBandit: return "WINDOWED_BANDIT";
    case StrategyVariant::ParamDevice: return "PARAM_DEVICE";
  }
  return "?";
}

bool is_bandit(StrategyVariant v) {
  return v == StrategyVariant::Bandit || v == StrategyVariant::WindowedBandit;
}

void validate(const StrategySpec& spec) {
  if (is_bandit(spec.variant)) {
    if (!(spec.eta > 0 && spec.eta <= 1)) {
      throw std::invalid_argument("bandit: eta must be in (0,1]");
    }
    if (spec.explore < 0 || spec.explore > 1) {
      throw std::invalid_argument("bandit: explore must be in [0,1]");
    }
    for (double q : spec.q_init) {
      if (q < 0 || q > 1) throw std::invalid_argument("bandit: q_init entries must be in [0,1]");
    }
  }
  if (spec.variant == StrategyVariant::WindowedBandit && spec.window < 1) {
    throw std::invalid_argument("windowed bandit: window must be >= 1");
  }
  if (spec.variant == StrategyVariant::ParamDevice &&
      (spec.p_success < 0 || spec.p_success > 1)) {
    throw std::invalid_argument("param device: p_success must be in [0,1]");
  }
  if (spec.variant == StrategyVariant::BiasAware && std::abs(spec.known_eps) > 0.5) {
    throw std::invalid_argument("bias aware: |known_eps| must be <= 1/2");
  }
}

std::string strategy_tag(const StrategySpec& spec) {
  std::ostringstream out;
  out << to_string(spec.variant);
  switch (spec.variant) {
    case StrategyVariant::BiasAware: out << "(eps=" << spec.known_eps << ")"; break;
    case StrategyVariant::Bandit:
      out << "(eta=" << spec.eta << ",explore=" << spec.explore << ")";
      break;
    case StrategyVariant::WindowedBandit:
      out << "(eta=" << spec.eta << ",explore=" << spec.explore
          << ",W=" << spec.window << ")";
      break;
    case StrategyVariant::ParamDevice: out << "(p=" << spec.p_success << ")"; break;
    default: break;
  }
  return out.str();
}

BanditState make_strategy_state(const StrategySpec& spec) {
  validate(spec);
  BanditState state;
  state.q = {{{spec.q_init[0], spec.q_init[1]}, {spec.q_init[0], spec.q_init[1]}}};
  if (spec.variant == StrategyVariant::WindowedBandit) {
    state.window.assign(static_cast<std::size_t>(spec.window), Bit{0});
  }
  return state;
}

ChosenMessage choose_message(const StrategySpec& spec, BanditState& state,
                             Bit a0, Bit a1, Rng& rng) {
  int action = 0;
  switch (spec.variant) {
    case StrategyVariant::StaticA0: action = 0; break;
    case StrategyVariant::StaticA1: action = 1; break;
    case StrategyVariant::BiasAware: action = spec.known_eps >= 0 ? 0 : 1; break;
    case StrategyVariant::Bandit:
    case StrategyVariant::WindowedBandit: {
      const int s = spec.variant == StrategyVariant::WindowedBandit ? state.regime : 0;
      const bool explore_now = spec.explore > 0 && rng.next_double() < spec.explore;
      if (explore_now) {
        action = rng.bit();
      } else {
        action = state.q[s][1] > state.q[s][0] ? 1 : 0;  // ties -> action 0
      }
      state.last_action = action;
      state.last_regime = s;
      break;
    }
    case StrategyVariant::ParamDevice:
      throw std::domain_error("choose_message: PARAM_DEVICE bypasses the encoder");
  }
  return {action == 0 ? a0 : a1, action};
}

void update(const StrategySpec& spec, BanditState& state, int action, int reward) {
  if (!is_bandit(spec.variant)) return;
  double& q = state.q[static_cast<std::size_t>(state.last_regime)]
                     [static_cast<std::size_t>(action)];
  q += spec.eta * (static_cast<double>(reward) - q);
}

void observe_query(const StrategySpec& spec, BanditState& state, Bit y) {
  if (spec.variant != StrategyVariant::WindowedBandit) return;
  const int w = static_cast<int>(state.window.size());
  if (state.window_fill == w) {
    state.window_zeros -= state.window[static_cast<std::size_t>(state.window_head)] == 0;
  } else {
    ++state.window_fill;
  }
  state.window[static_cast<std::size_t>(state.window_head)] = y;
  state.window_zeros += y == 0;
  state.window_head = (state.window_head + 1) % w;
  // Empty/balanced windows estimate zero bias; the >= rule then selects
  // regime 0.
  const double eps_hat =
      state.window_fill > 0
          ? static_cast<double>(state.window_zeros) / state.window_fill - 0.5
          : 0.0;
  state.regime = eps_hat >= 0 ? 0 : 1;
}

Bit device_outcome(const StrategySpec& spec, Rng& rng) {
  if (spec.variant != StrategyVariant::ParamDevice) {
    throw std::domain_error("device_outcome: spec is not PARAM_DEVICE");
  }
  return rng.bernoulli(spec.p_success) ? Bit{1} : Bit{0};
}

std::vector<double> export_q(const StrategySpec& spec, const BanditState& state) {
  switch (spec.variant) {
    case StrategyVariant::Bandit: return {state.q[0][0], state.q[0][1]};
    case StrategyVariant::WindowedBandit:
      return {state.q[0][0], state.q[0][1], state.q[1][0], state.q[1][1]};
    default: return {};
  }
}

}  // namespace racgap

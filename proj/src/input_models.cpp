#include "racgap/input_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace racgap {

InputVariant input_variant_from_string(const std::string& s) {
  if (s == "IID_BIAS") return InputVariant::IidBias;
  if (s == "MARKOV") return InputVariant::Markov;
  if (s == "DRIFT_SINE") return InputVariant::DriftSine;
  if (s == "DRIFT_WALK") return InputVariant::DriftWalk;
  throw std::invalid_argument("unknown input model variant: " + s);
}

std::string to_string(InputVariant v) {
  switch (v) {
    case InputVariant::IidBias: return "IID_BIAS";
    case InputVariant::Markov: return "MARKOV";
    case InputVariant::DriftSine: return "DRIFT_SINE";
    case InputVariant::DriftWalk: return "DRIFT_WALK";
  }
  return "?";
}

void validate(const InputModelSpec& spec) {
  switch (spec.variant) {
    case InputVariant::IidBias:
      if (std::abs(spec.epsilon) > 0.5) {
        throw std::invalid_argument("IID_BIAS: |epsilon| must be <= 1/2");
      }
      break;
    case InputVariant::Markov:
      if (spec.p00 < 0 || spec.p00 > 1 || spec.p10 < 0 || spec.p10 > 1) {
        throw std::invalid_argument("MARKOV: transition probabilities must be in [0,1]");
      }
      if (spec.p00 >= 1.0 && spec.p10 <= 0.0) {
        throw std::invalid_argument("MARKOV: reducible chain (p00=1, p10=0)");
      }
      break;
    case InputVariant::DriftSine:
      if (spec.period <= 0) throw std::invalid_argument("DRIFT_SINE: period must be > 0");
      if (std::abs(spec.epsilon0) + std::abs(spec.amp) > 0.5 + 1e-12) {
        throw std::invalid_argument("DRIFT_SINE: |epsilon0| + amp must be <= 1/2");
      }
      break;
    case InputVariant::DriftWalk:
      if (spec.step < 0) throw std::invalid_argument("DRIFT_WALK: step must be >= 0");
      if (spec.bound < 0 || spec.bound > 0.5) {
        throw std::invalid_argument("DRIFT_WALK: bound must be in [0, 1/2]");
      }
      break;
  }
}

std::string model_tag(const InputModelSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.variant);
  switch (spec.variant) {
    case InputVariant::IidBias: out << "(eps=" << spec.epsilon << ")"; break;
    case InputVariant::Markov: out << "(p00=" << spec.p00 << ",p10=" << spec.p10 << ")"; break;
    case InputVariant::DriftSine:
      out << "(eps0=" << spec.epsilon0 << ",A=" << spec.amp << ",T=" << spec.period << ")";
      break;
    case InputVariant::DriftWalk:
      out << "(step=" << spec.step << ",bound=" << spec.bound << ")";
      break;
  }
  return out.str();
}

InputState make_input_state(const InputModelSpec& spec, Rng& rng) {
  validate(spec);
  InputState state;
  if (spec.variant == InputVariant::Markov) {
    const double q0 = 0.5 + stationary_bias(spec.p00, spec.p10);
    state.prev_y = rng.bernoulli(q0) ? Bit{0} : Bit{1};
  }
  return state;
}

RoundInputs next_inputs(const InputModelSpec& spec, InputState& state, Rng& rng) {
  RoundInputs out;
  out.a0 = rng.bit();
  out.a1 = rng.bit();
  double bias = 0.0;
  switch (spec.variant) {
    case InputVariant::IidBias: bias = spec.epsilon; break;
    case InputVariant::Markov:
      bias = (state.prev_y == 0 ? spec.p00 : spec.p10) - 0.5;
      break;
    case InputVariant::DriftSine: bias = bias_at(spec, state.t); break;
    case InputVariant::DriftWalk: bias = state.walk_eps; break;
  }
  out.cond_bias = bias;
  out.y = rng.bernoulli(0.5 + bias) ? Bit{0} : Bit{1};
  if (spec.variant == InputVariant::Markov) state.prev_y = out.y;
  if (spec.variant == InputVariant::DriftWalk) {
    const double direction = rng.bit() ? 1.0 : -1.0;
    state.walk_eps = std::clamp(state.walk_eps + spec.step * direction,
                                -spec.bound, spec.bound);
  }
  ++state.t;
  return out;
}

double stationary_bias(double p00, double p10) {
  if (p00 >= 1.0 && p10 <= 0.0) {
    throw std::domain_error("stationary_bias: reducible chain");
  }
  const double q = p10 / (1.0 - p00 + p10);
  return q - 0.5;
}

double bias_at(const InputModelSpec& spec, std::int64_t t) {
  if (spec.variant != InputVariant::DriftSine) {
    throw std::domain_error("bias_at: deterministic schedule defined for DRIFT_SINE only");
  }
  const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / spec.period;
  const double eps = spec.epsilon0 + spec.amp * std::sin(phase);
  return std::clamp(eps, -0.5, 0.5);
}

InputModelSpec markov_from_stay(double p_stay, double eps_target) {
  if (p_stay < 0 || p_stay > 1) {
    throw std::invalid_argument("markov_from_stay: p_stay must be in [0,1]");
  }
  if (std::abs(eps_target) >= 0.5) {
    throw std::invalid_argument("markov_from_stay: |eps_target| must be < 1/2");
  }
  const double q = 0.5 + eps_target;
  // Hold Pr(0->0) = p_stay; stationarity q = q*p00 + (1-q)*p10 fixes p10.
  const double p10 = q * (1.0 - p_stay) / (1.0 - q);
  if (p10 < 0 || p10 > 1) {
    std::ostringstream msg;
    msg << "markov_from_stay: infeasible target (requires p10=" << p10 << ")";
    throw std::invalid_argument(msg.str());
  }
  InputModelSpec spec;
  spec.variant = InputVariant::Markov;
  spec.p00 = p_stay;
  spec.p10 = p10;
  return spec;
}

}  // namespace racgap

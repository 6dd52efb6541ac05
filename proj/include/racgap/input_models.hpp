#pragma once

#include <cstdint>
#include <string>

#include "racgap/rac_core.hpp"
#include "racgap/rng.hpp"

namespace racgap {

enum class InputVariant { IidBias, Markov, DriftSine, DriftWalk };

InputVariant input_variant_from_string(const std::string& s);
std::string to_string(InputVariant v);

// Generative law for the per-round inputs (a0, a1, y). The preparation
// bits a0, a1 are always fair independent coins; only the query bit y
// follows the configured variant. Bias convention throughout:
// eps = Pr(y=0) - 1/2, in [-1/2, 1/2].
struct InputModelSpec {
  InputVariant variant = InputVariant::IidBias;
  double epsilon = 0.0;  // IID_BIAS
  double p00 = 0.5;      // MARKOV: Pr(y_t=0 | y_{t-1}=0)
  double p10 = 0.5;      // MARKOV: Pr(y_t=0 | y_{t-1}=1)
  double epsilon0 = 0.0;  // DRIFT_SINE baseline
  double amp = 0.0;       // DRIFT_SINE amplitude
  double period = 1.0;    // DRIFT_SINE period, rounds
  double step = 0.0;      // DRIFT_WALK step size
  double bound = 0.0;     // DRIFT_WALK clip magnitude
};

// Throws std::invalid_argument on out-of-range parameters or a reducible
// Markov chain.
void validate(const InputModelSpec& spec);

std::string model_tag(const InputModelSpec& spec);

struct InputState {
  Bit prev_y = 0;        // MARKOV
  double walk_eps = 0.0;  // DRIFT_WALK: bias to use for the next round
  std::int64_t t = 1;     // next round index
};

// Markov chains start in their stationary distribution (consumes one rng
// draw) so short runs carry no burn-in bias. The random walk starts at 0.
InputState make_input_state(const InputModelSpec& spec, Rng& rng);

struct RoundInputs {
  Bit a0 = 0;
  Bit a1 = 0;
  Bit y = 0;
  // Pr(y=0 | history) - 1/2 for this round: the conditional bias the
  // schedule-aware classical benchmark is built from.
  double cond_bias = 0.0;
};

// Draw order: a0, a1, then y; DRIFT_WALK consumes one extra draw to
// advance the walk after y is emitted.
RoundInputs next_inputs(const InputModelSpec& spec, InputState& state, Rng& rng);

// Stationary Pr(y=0) - 1/2 of the (p00, p10) chain.
double stationary_bias(double p00, double p10);

// Deterministic bias schedule eps0 + amp*sin(2*pi*t/period), clipped to
// [-1/2, 1/2]. DRIFT_SINE only; the walk schedule is stochastic and lives
// in the state.
double bias_at(const InputModelSpec& spec, std::int64_t t);

// Chain with 0-state persistence p_stay and stationary bias eps_target,
// solved from the stationarity equation. For eps_target = 0 this is the
// symmetric stay/flip chain. Throws when no valid transition row exists.
InputModelSpec markov_from_stay(double p_stay, double eps_target);

}  // namespace racgap

#pragma once

#include <array>
#include <string>
#include <vector>

#include "racgap/rac_core.hpp"
#include "racgap/rng.hpp"

namespace racgap {

enum class StrategyVariant {
  StaticA0,
  StaticA1,
  BiasAware,
  Bandit,
  WindowedBandit,
  ParamDevice,
};

StrategyVariant strategy_variant_from_string(const std::string& s);
std::string to_string(StrategyVariant v);
bool is_bandit(StrategyVariant v);

// Encoder policy. Actions are 0 = send a0, 1 = send a1; the decoder is
// always the fixed b = m. PARAM_DEVICE bypasses the encode/decode pipeline
// entirely and draws a Bernoulli success (a stand-in device so positive
// verdicts can be exercised).
struct StrategySpec {
  StrategyVariant variant = StrategyVariant::StaticA0;
  double eta = 0.05;     // bandit learning rate
  double explore = 0.05; // epsilon-greedy exploration probability
  int window = 200;      // WINDOWED_BANDIT query window
  std::array<double, 2> q_init{0.5, 0.5};
  double known_eps = 0.0; // BIAS_AWARE
  double p_success = 0.0; // PARAM_DEVICE
};

void validate(const StrategySpec& spec);
std::string strategy_tag(const StrategySpec& spec);

// Action-value tables plus the sliding query window used for regime
// detection. The plain bandit only ever touches regime row 0.
struct BanditState {
  std::array<std::array<double, 2>, 2> q{};  // q[regime][action]
  std::vector<Bit> window;                   // ring buffer of past queries
  int window_head = 0;
  int window_fill = 0;
  int window_zeros = 0;
  int regime = 0;       // 0 while the window is empty or balanced
  int last_action = 0;
  int last_regime = 0;
};

BanditState make_strategy_state(const StrategySpec& spec);

struct ChosenMessage {
  Bit m = 0;
  int action = 0;
};

// Select the message from (a0, a1) before the round's query is revealed.
// Bandits are epsilon-greedy on the regime-resolved q row with ties broken
// toward action 0; rng is consumed only when explore > 0, so an explore=0
// bandit shares its random stream with the static strategies.
ChosenMessage choose_message(const StrategySpec& spec, BanditState& state,
                             Bit a0, Bit a1, Rng& rng);

// Incremental value update q += eta*(reward - q) at the regime row that was
// active when the action was chosen. No-op for non-learning variants.
void update(const StrategySpec& spec, BanditState& state, int action, int reward);

// Push the revealed query into the window and refresh the regime estimate
// (WINDOWED_BANDIT); no-op otherwise. The window never includes the
// current round's query at decision time.
void observe_query(const StrategySpec& spec, BanditState& state, Bit y);

// Bernoulli(p_success) success indicator for the parametric device.
Bit device_outcome(const StrategySpec& spec, Rng& rng);

// Learned value table, flattened for the run's result record: {q0, q1} for
// BANDIT, {q[0][0], q[0][1], q[1][0], q[1][1]} for WINDOWED_BANDIT, empty
// otherwise.
std::vector<double> export_q(const StrategySpec& spec, const BanditState& state);

}  // namespace racgap

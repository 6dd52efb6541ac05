#include <doctest.h>

#include <cmath>

#include "racgap/ceilings.hpp"
#include "racgap/harness.hpp"
#include "racgap/strategies.hpp"

using namespace racgap;

namespace {

StrategySpec bandit_spec(double eta, double explore, std::array<double, 2> q_init) {
  StrategySpec spec;
  spec.variant = StrategyVariant::Bandit;
  spec.eta = eta;
  spec.explore = explore;
  spec.q_init = q_init;
  return spec;
}

}  // namespace

TEST_CASE("static and bias-aware message choices") {
  Rng rng(1);
  StrategySpec aware;
  aware.variant = StrategyVariant::BiasAware;
  aware.known_eps = 0.2;
  BanditState state = make_strategy_state(aware);
  const ChosenMessage chosen = choose_message(aware, state, 1, 0, rng);
  CHECK(chosen.m == 1);
  CHECK(chosen.action == 0);
  aware.known_eps = -0.2;
  CHECK(choose_message(aware, state, 1, 0, rng).action == 1);

  StrategySpec s0;
  s0.variant = StrategyVariant::StaticA0;
  BanditState st0 = make_strategy_state(s0);
  CHECK(choose_message(s0, st0, 0, 1, rng).m == 0);
  StrategySpec s1;
  s1.variant = StrategyVariant::StaticA1;
  BanditState st1 = make_strategy_state(s1);
  CHECK(choose_message(s1, st1, 0, 1, rng).m == 1);
}

TEST_CASE("greedy bandit takes the argmax and breaks ties toward action 0") {
  Rng rng(2);
  StrategySpec spec = bandit_spec(0.1, 0.0, {0.9, 0.1});
  BanditState state = make_strategy_state(spec);
  for (int i = 0; i < 50; ++i) CHECK(choose_message(spec, state, 0, 1, rng).action == 0);
  spec = bandit_spec(0.1, 0.0, {0.5, 0.5});
  state = make_strategy_state(spec);
  CHECK(choose_message(spec, state, 0, 1, rng).action == 0);
}

TEST_CASE("value update arithmetic") {
  StrategySpec spec = bandit_spec(0.1, 0.0, {0.0, 0.0});
  BanditState state = make_strategy_state(spec);
  state.last_regime = 0;
  update(spec, state, 0, 1);
  CHECK(state.q[0][0] == doctest::Approx(0.1));
  state.q[0][0] = 0.5;
  update(spec, state, 0, 0);
  CHECK(state.q[0][0] == doctest::Approx(0.45));
  state.q[0][0] = 1.0;
  update(spec, state, 0, 1);
  CHECK(state.q[0][0] == doctest::Approx(1.0));
}

TEST_CASE("q values stay inside [0,1] for any reward sequence") {
  Rng rng(3);
  StrategySpec spec;
  spec.variant = StrategyVariant::WindowedBandit;
  spec.eta = 0.3;
  spec.explore = 0.2;
  spec.window = 8;
  BanditState state = make_strategy_state(spec);
  for (int t = 0; t < 20000; ++t) {
    const ChosenMessage chosen = choose_message(spec, state, rng.bit(), rng.bit(), rng);
    update(spec, state, chosen.action, rng.bit());
    observe_query(spec, state, rng.bit());
    for (const auto& row : state.q) {
      for (double q : row) {
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
      }
    }
  }
}

TEST_CASE("window regime estimate") {
  StrategySpec spec;
  spec.variant = StrategyVariant::WindowedBandit;
  spec.window = 4;
  BanditState state = make_strategy_state(spec);
  for (Bit y : {0, 0, 0, 1}) observe_query(spec, state, y);
  CHECK(state.regime == 0);
  state = make_strategy_state(spec);
  for (Bit y : {1, 1, 1, 0}) observe_query(spec, state, y);
  CHECK(state.regime == 1);
  state = make_strategy_state(spec);
  for (Bit y : {0, 1}) observe_query(spec, state, y);  // balanced warm-up
  CHECK(state.regime == 0);
  // no-op on non-windowed variants
  StrategySpec plain = bandit_spec(0.1, 0.0, {0.5, 0.5});
  BanditState plain_state = make_strategy_state(plain);
  observe_query(plain, plain_state, 1);
  CHECK(plain_state.regime == 0);
}

TEST_CASE("parametric device draws Bernoulli successes") {
  StrategySpec spec;
  spec.variant = StrategyVariant::ParamDevice;
  spec.p_success = 1.0;
  Rng rng(4);
  for (int i = 0; i < 200; ++i) CHECK(device_outcome(spec, rng) == 1);
  spec.p_success = 0.0;
  for (int i = 0; i < 200; ++i) CHECK(device_outcome(spec, rng) == 0);
  spec.p_success = 0.85;
  int hits = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) hits += device_outcome(spec, rng);
  CHECK(std::abs(static_cast<double>(hits) / n - 0.85) < 0.0045);
  StrategySpec wrong;
  wrong.variant = StrategyVariant::Bandit;
  CHECK_THROWS_AS(device_outcome(wrong, rng), std::domain_error);
}

TEST_CASE("explore=0 bandit with decisive q_init replays the bias-aware strategy") {
  RunConfig config;
  config.n_rounds = 5000;
  config.seed = 99;
  config.input_model.variant = InputVariant::IidBias;
  config.input_model.epsilon = 0.15;
  config.strategy = bandit_spec(0.05, 0.0, {1.0, 0.0});
  const SimResult bandit_run = simulate_run(config);
  config.strategy.variant = StrategyVariant::BiasAware;
  config.strategy.known_eps = 0.15;
  const SimResult aware_run = simulate_run(config);
  REQUIRE(bandit_run.trace.rounds.size() == aware_run.trace.rounds.size());
  for (std::size_t i = 0; i < bandit_run.trace.rounds.size(); ++i) {
    CHECK(bandit_run.trace.rounds[i].m == aware_run.trace.rounds[i].m);
    CHECK(bandit_run.trace.rounds[i].x == aware_run.trace.rounds[i].x);
  }
}

TEST_CASE("every simulated round decodes b = m") {
  for (auto variant : {StrategyVariant::StaticA0, StrategyVariant::BiasAware,
                       StrategyVariant::Bandit, StrategyVariant::WindowedBandit,
                       StrategyVariant::ParamDevice}) {
    RunConfig config;
    config.n_rounds = 2000;
    config.seed = 5;
    config.input_model.variant = InputVariant::IidBias;
    config.input_model.epsilon = 0.1;
    config.strategy.variant = variant;
    config.strategy.known_eps = 0.1;
    config.strategy.p_success = 0.8;
    const SimResult sim = simulate_run(config);
    for (const auto& r : sim.trace.rounds) {
      CHECK(r.b == r.m);
      CHECK(r.x == success(r.a0, r.a1, r.y, r.b));
    }
  }
}

TEST_CASE("bandit recovers the effective ceiling under stationary bias") {
  RunConfig config;
  config.n_rounds = 100000;
  config.seed = 2024;
  config.input_model.variant = InputVariant::IidBias;
  config.input_model.epsilon = 0.15;
  config.strategy = bandit_spec(0.05, 0.05, {0.5, 0.5});
  const SimResult sim = simulate_run(config);
  const double trailing = trailing_score(sim.trace, 10000);
  const double ceiling = rac_effective_ceiling(0.15);
  const double sigma = std::sqrt(ceiling * (1 - ceiling) / 10000.0);
  CHECK(trailing >= ceiling - 0.03);
  CHECK(trailing <= ceiling + 3 * sigma);
}

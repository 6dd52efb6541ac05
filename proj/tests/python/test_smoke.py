import math

import pytest

import racgap


def test_success_truth_table():
    assert racgap.success(1, 0, 0, 1) == 1
    assert racgap.success(1, 0, 1, 1) == 0
    assert racgap.success(0, 0, 1, 0) == 1


def test_ceilings():
    assert racgap.rac_effective_ceiling(0.0) == pytest.approx(0.75)
    assert racgap.rac_effective_ceiling(0.1) == pytest.approx(0.80)
    assert racgap.robust_ceiling(0.2) == pytest.approx(0.85)
    assert racgap.nonstationary_ceiling([0.2, -0.2]) == pytest.approx(0.85)
    result = racgap.pam_ceiling_enumerate(racgap.rac_task(0.1))
    assert result.value == pytest.approx(0.80, abs=1e-12)


def test_capacity_guard():
    task = racgap.rac_task(0.0)
    task.n_a = 12
    task.n_m = 4
    task.coeffs = [0.0] * (12 * 2 * 2)
    task.input_law = [1.0 / 24.0] * 24
    with pytest.raises(racgap.CapacityError):
        racgap.pam_ceiling_enumerate(task)


def test_stats():
    assert racgap.azuma_lower(0.80, 10000, 0.05) == pytest.approx(
        0.80 - math.sqrt(math.log(20.0) / 20000.0), abs=1e-12
    )
    est = racgap.bias_interval(1100, 2000, 0.05)
    assert est.eps_hat == pytest.approx(0.05)
    assert est.eps_max == pytest.approx(abs(est.eps_hat) + est.delta)


def test_simulation_is_deterministic():
    config = racgap.RunConfig()
    config.n_rounds = 5000
    config.seed = 11
    config.input_model.variant = racgap.InputVariant.IID_BIAS
    config.input_model.epsilon = 0.15
    config.strategy.variant = racgap.StrategyVariant.BIAS_AWARE
    config.strategy.known_eps = 0.15
    trace_a, report_a = racgap.run_once(config)
    trace_b, report_b = racgap.run_once(config)
    assert report_a.s_uncond == report_b.s_uncond
    assert len(trace_a) == 5000
    assert report_a.to_json() == report_b.to_json()


def test_misalignment_flips_the_verdict():
    config = racgap.RunConfig()
    config.n_rounds = 100000
    config.seed = 3
    config.input_model.variant = racgap.InputVariant.IID_BIAS
    config.input_model.epsilon = 0.15
    config.strategy.variant = racgap.StrategyVariant.BIAS_AWARE
    config.strategy.known_eps = 0.15
    _, nominal = racgap.run_once(config)
    assert nominal.verdict == racgap.Verdict.ACCEPT  # false certification

    config.benchmark.kind = racgap.BenchmarkKind.EFFECTIVE
    config.benchmark.known_eps = 0.15
    _, aligned = racgap.run_once(config)
    assert aligned.verdict == racgap.Verdict.REJECT
    assert aligned.delta_rob < 0


def test_postselection_inflates_conditional_only():
    config = racgap.RunConfig()
    config.n_rounds = 20000
    config.seed = 5
    config.input_model.epsilon = 0.1
    config.selection.variant = racgap.SelectionVariant.ADVERSARIAL
    config.selection.discard_fraction = 0.4
    config.scoring = racgap.ScoringMode.CONDITIONAL
    _, careless = racgap.run_once(config)
    assert careless.s_cond == pytest.approx(1.0)
    assert careless.verdict == racgap.Verdict.ACCEPT

    config.scoring = racgap.ScoringMode.UNCONDITIONAL
    config.benchmark.kind = racgap.BenchmarkKind.EFFECTIVE
    config.benchmark.known_eps = 0.1
    _, aligned = racgap.run_once(config)
    assert aligned.verdict == racgap.Verdict.REJECT


def test_replicates_and_sweeps():
    config = racgap.RunConfig()
    config.n_rounds = 2000
    config.input_model.epsilon = 0.1
    config.strategy.variant = racgap.StrategyVariant.BIAS_AWARE
    config.strategy.known_eps = 0.1
    config.benchmark.kind = racgap.BenchmarkKind.EFFECTIVE
    cell = racgap.run_replicates(config, 8, 17)
    assert cell.m_reps == 8
    assert cell.accept_rate <= 0.2

    sweep = racgap.sweep_bias([0.0, 0.1], config, 3)
    assert len(sweep.cells) == 4
    assert "EFFECTIVE" in sweep.to_csv()


def test_trace_io_roundtrip(tmp_path):
    config = racgap.RunConfig()
    config.n_rounds = 200
    config.seed = 9
    trace, _ = racgap.run_once(config)
    path = str(tmp_path / "trace.jsonl")
    racgap.write_trace_jsonl(trace, path)
    loaded = racgap.read_trace(path)
    assert len(loaded) == len(trace)
    assert loaded.seed == trace.seed

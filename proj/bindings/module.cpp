#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "racgap/ceilings.hpp"
#include "racgap/certify.hpp"
#include "racgap/config_io.hpp"
#include "racgap/harness.hpp"
#include "racgap/rng.hpp"
#include "racgap/selection.hpp"
#include "racgap/trace_io.hpp"

namespace py = pybind11;
using namespace racgap;

PYBIND11_MODULE(_core, m) {
  m.doc() = "2->1 random access code simulation and certification toolkit";

  py::enum_<ScoringMode>(m, "ScoringMode")
      .value("UNCONDITIONAL", ScoringMode::Unconditional)
      .value("CONDITIONAL", ScoringMode::Conditional);
  py::enum_<InputVariant>(m, "InputVariant")
      .value("IID_BIAS", InputVariant::IidBias)
      .value("MARKOV", InputVariant::Markov)
      .value("DRIFT_SINE", InputVariant::DriftSine)
      .value("DRIFT_WALK", InputVariant::DriftWalk);
  py::enum_<StrategyVariant>(m, "StrategyVariant")
      .value("STATIC_A0", StrategyVariant::StaticA0)
      .value("STATIC_A1", StrategyVariant::StaticA1)
      .value("BIAS_AWARE", StrategyVariant::BiasAware)
      .value("BANDIT", StrategyVariant::Bandit)
      .value("WINDOWED_BANDIT", StrategyVariant::WindowedBandit)
      .value("PARAM_DEVICE", StrategyVariant::ParamDevice);
  py::enum_<SelectionVariant>(m, "SelectionVariant")
      .value("NONE", SelectionVariant::None)
      .value("RANDOM", SelectionVariant::Random)
      .value("ADVERSARIAL", SelectionVariant::Adversarial);
  py::enum_<BenchmarkKind>(m, "BenchmarkKind")
      .value("NOMINAL", BenchmarkKind::Nominal)
      .value("EFFECTIVE", BenchmarkKind::Effective)
      .value("ROBUST", BenchmarkKind::Robust)
      .value("NONSTATIONARY", BenchmarkKind::Nonstationary);
  py::enum_<EpsMaxSource>(m, "EpsMaxSource")
      .value("GIVEN", EpsMaxSource::Given)
      .value("DATA_DRIVEN", EpsMaxSource::DataDriven);
  py::enum_<Verdict>(m, "Verdict")
      .value("ACCEPT", Verdict::Accept)
      .value("REJECT", Verdict::Reject);
  py::enum_<EvaluationTag>(m, "EvaluationTag")
      .value("ALIGNED", EvaluationTag::Aligned)
      .value("CARELESS", EvaluationTag::Careless);

  py::class_<RoundRecord>(m, "RoundRecord")
      .def(py::init<>())
      .def_readwrite("t", &RoundRecord::t)
      .def_readwrite("a0", &RoundRecord::a0)
      .def_readwrite("a1", &RoundRecord::a1)
      .def_readwrite("y", &RoundRecord::y)
      .def_readwrite("m", &RoundRecord::m)
      .def_readwrite("b", &RoundRecord::b)
      .def_readwrite("x", &RoundRecord::x)
      .def_readwrite("kept", &RoundRecord::kept);

  py::class_<Trace>(m, "Trace")
      .def(py::init<>())
      .def_readwrite("rounds", &Trace::rounds)
      .def_readwrite("seed", &Trace::seed)
      .def_readwrite("model_tag", &Trace::model_tag)
      .def("__len__", [](const Trace& t) { return t.rounds.size(); });

  py::class_<InputModelSpec>(m, "InputModelSpec")
      .def(py::init<>())
      .def_readwrite("variant", &InputModelSpec::variant)
      .def_readwrite("epsilon", &InputModelSpec::epsilon)
      .def_readwrite("p00", &InputModelSpec::p00)
      .def_readwrite("p10", &InputModelSpec::p10)
      .def_readwrite("epsilon0", &InputModelSpec::epsilon0)
      .def_readwrite("amp", &InputModelSpec::amp)
      .def_readwrite("period", &InputModelSpec::period)
      .def_readwrite("step", &InputModelSpec::step)
      .def_readwrite("bound", &InputModelSpec::bound);

  py::class_<StrategySpec>(m, "StrategySpec")
      .def(py::init<>())
      .def_readwrite("variant", &StrategySpec::variant)
      .def_readwrite("eta", &StrategySpec::eta)
      .def_readwrite("explore", &StrategySpec::explore)
      .def_readwrite("window", &StrategySpec::window)
      .def_readwrite("q_init", &StrategySpec::q_init)
      .def_readwrite("known_eps", &StrategySpec::known_eps)
      .def_readwrite("p_success", &StrategySpec::p_success);

  py::class_<SelectionSpec>(m, "SelectionSpec")
      .def(py::init<>())
      .def_readwrite("variant", &SelectionSpec::variant)
      .def_readwrite("discard_fraction", &SelectionSpec::discard_fraction);

  py::class_<BenchmarkMode>(m, "BenchmarkMode")
      .def(py::init<>())
      .def_readwrite("kind", &BenchmarkMode::kind)
      .def_readwrite("known_eps", &BenchmarkMode::known_eps)
      .def_readwrite("eps_max_source", &BenchmarkMode::eps_max_source)
      .def_readwrite("eps_max", &BenchmarkMode::eps_max)
      .def_readwrite("schedule", &BenchmarkMode::schedule);

  py::class_<ConfidenceParams>(m, "ConfidenceParams")
      .def(py::init<>())
      .def_readwrite("alpha", &ConfidenceParams::alpha)
      .def_readwrite("beta", &ConfidenceParams::beta);

  py::class_<BiasEstimate>(m, "BiasEstimate")
      .def_readonly("eps_hat", &BiasEstimate::eps_hat)
      .def_readonly("delta", &BiasEstimate::delta)
      .def_readonly("eps_max", &BiasEstimate::eps_max)
      .def_readonly("n", &BiasEstimate::n);

  py::class_<ScoreReport>(m, "ScoreReport")
      .def_readonly("n", &ScoreReport::n)
      .def_readonly("n_kept", &ScoreReport::n_kept)
      .def_readonly("s_uncond", &ScoreReport::s_uncond)
      .def_readonly("s_cond", &ScoreReport::s_cond)
      .def_readonly("s_low", &ScoreReport::s_low)
      .def_readonly("bias", &ScoreReport::bias)
      .def_readonly("scoring", &ScoreReport::scoring)
      .def_readonly("benchmark_kind", &ScoreReport::benchmark_kind)
      .def_readonly("benchmark_value", &ScoreReport::benchmark_value)
      .def_readonly("delta_rob", &ScoreReport::delta_rob)
      .def_readonly("delta_rob_minimax", &ScoreReport::delta_rob_minimax)
      .def_readonly("verdict", &ScoreReport::verdict)
      .def_readonly("evaluation_tag", &ScoreReport::evaluation_tag)
      .def_readonly("alpha", &ScoreReport::alpha)
      .def_readonly("beta", &ScoreReport::beta)
      .def_readonly("q_final", &ScoreReport::q_final)
      .def("to_json", &report_to_json)
      .def("__repr__", [](const ScoreReport& r) {
        return "<ScoreReport " + to_string(r.verdict) + " s_low=" +
               std::to_string(r.s_low) + " benchmark=" + std::to_string(r.benchmark_value) +
               ">";
      });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("n_rounds", &RunConfig::n_rounds)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("input_model", &RunConfig::input_model)
      .def_readwrite("strategy", &RunConfig::strategy)
      .def_readwrite("selection", &RunConfig::selection)
      .def_readwrite("scoring", &RunConfig::scoring)
      .def_readwrite("benchmark", &RunConfig::benchmark)
      .def_readwrite("confidence", &RunConfig::confidence);

  py::class_<SweepCell>(m, "SweepCell")
      .def_readonly("axis", &SweepCell::axis)
      .def_readonly("label", &SweepCell::label)
      .def_readonly("strategy", &SweepCell::strategy)
      .def_readonly("m_reps", &SweepCell::m_reps)
      .def_readonly("mean_score", &SweepCell::mean_score)
      .def_readonly("mean_s_low", &SweepCell::mean_s_low)
      .def_readonly("benchmark", &SweepCell::benchmark)
      .def_readonly("mean_delta_rob", &SweepCell::mean_delta_rob)
      .def_readonly("median_delta_rob", &SweepCell::median_delta_rob)
      .def_readonly("accept_rate", &SweepCell::accept_rate)
      .def_readonly("accept_se", &SweepCell::accept_se)
      .def_readonly("mean_trailing", &SweepCell::mean_trailing);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("axis_name", &SweepResult::axis_name)
      .def_readonly("cells", &SweepResult::cells)
      .def("to_csv", &SweepResult::to_csv)
      .def("to_json", &SweepResult::to_json);

  py::class_<PamTask>(m, "PamTask")
      .def(py::init<>())
      .def_readwrite("n_a", &PamTask::n_a)
      .def_readwrite("n_y", &PamTask::n_y)
      .def_readwrite("n_b", &PamTask::n_b)
      .def_readwrite("n_m", &PamTask::n_m)
      .def_readwrite("coeffs", &PamTask::coeffs)
      .def_readwrite("input_law", &PamTask::input_law);

  py::class_<DeterministicStrategy>(m, "DeterministicStrategy")
      .def_readonly("encoder", &DeterministicStrategy::encoder)
      .def_readonly("decoder", &DeterministicStrategy::decoder);

  py::class_<EnumerationResult>(m, "EnumerationResult")
      .def_readonly("value", &EnumerationResult::value)
      .def_readonly("argmax", &EnumerationResult::argmax);

  py::register_exception<capacity_error>(m, "CapacityError");

  m.def("success", &success, py::arg("a0"), py::arg("a1"), py::arg("y"), py::arg("b"));
  m.def("score_unconditional", &score_unconditional);
  m.def("score_conditional", &score_conditional);
  m.def("rac_effective_ceiling", &rac_effective_ceiling, py::arg("eps"));
  m.def("robust_ceiling", &robust_ceiling, py::arg("eps_max"));
  m.def(
      "nonstationary_ceiling",
      [](const std::vector<double>& schedule) { return nonstationary_ceiling(schedule); },
      py::arg("bias_schedule"));
  m.def("strategy_score", &strategy_score);
  m.def("pam_ceiling_enumerate", &pam_ceiling_enumerate, py::arg("task"));
  m.def("rac_task", &rac_task, py::arg("eps"));
  m.def("azuma_lower", &azuma_lower, py::arg("s_hat"), py::arg("n"), py::arg("alpha"));
  m.def("bias_interval", &bias_interval, py::arg("n0"), py::arg("n"), py::arg("beta"));
  m.def("stationary_bias", &stationary_bias, py::arg("p00"), py::arg("p10"));
  m.def("markov_from_stay", &markov_from_stay, py::arg("p_stay"), py::arg("eps_target"));
  m.def(
      "apply_selection",
      [](Trace trace, const SelectionSpec& spec, std::uint64_t seed) {
        Rng rng(seed);
        return apply_selection(std::move(trace), spec, rng);
      },
      py::arg("trace"), py::arg("spec"), py::arg("seed"));
  m.def("certify", &certify, py::arg("trace"), py::arg("scoring"), py::arg("benchmark"),
        py::arg("params"));
  m.def("evaluation_preset", [](const std::string& name) {
    const EvaluationPreset preset = evaluation_preset(name);
    return py::make_tuple(preset.scoring, preset.benchmark);
  });
  m.def("run_once", &run_once, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_replicates", &run_replicates, py::arg("config"), py::arg("m_reps"),
        py::arg("base_seed"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "sweep_bias",
      [](const std::vector<double>& grid, const RunConfig& config, int m_reps, int threads) {
        return sweep_bias(grid, config, m_reps, threads);
      },
      py::arg("eps_grid"), py::arg("config"), py::arg("m_reps"), py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "sweep_rounds",
      [](const std::vector<std::int64_t>& grid, const RunConfig& config, int m_reps,
         int threads) { return sweep_rounds(grid, config, m_reps, {}, threads); },
      py::arg("n_grid"), py::arg("config"), py::arg("m_reps"), py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "stress_postselect",
      [](const std::vector<double>& grid, const RunConfig& config, int m_reps, int threads) {
        return stress_postselect(grid, config, m_reps, threads);
      },
      py::arg("f_grid"), py::arg("config"), py::arg("m_reps"), py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def("moderate_deviation_regime", &moderate_deviation_regime);
  m.def("derive_seed", &derive_seed, py::arg("base_seed"), py::arg("index"));
  m.def("write_trace_jsonl", &write_trace_jsonl, py::arg("trace"), py::arg("path"));
  m.def("read_trace", &read_trace, py::arg("path"));
  m.def("report_table", &report_table, py::arg("report"));
}

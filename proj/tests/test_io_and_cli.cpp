#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "racgap/cli.hpp"
#include "racgap/config_io.hpp"
#include "racgap/harness.hpp"
#include "racgap/trace_io.hpp"

using namespace racgap;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("racgap_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("trace jsonl roundtrip") {
  const fs::path dir = temp_dir("trace_roundtrip");
  RunConfig config;
  config.n_rounds = 500;
  config.seed = 12;
  config.input_model.epsilon = 0.2;
  config.selection.variant = SelectionVariant::Random;
  config.selection.discard_fraction = 0.1;
  const SimResult sim = simulate_run(config);
  const std::string path = (dir / "trace.jsonl").string();
  write_trace_jsonl(sim.trace, path);
  const Trace loaded = read_trace(path);
  REQUIRE(loaded.rounds.size() == sim.trace.rounds.size());
  CHECK(loaded.seed == sim.trace.seed);
  CHECK(loaded.model_tag == sim.trace.model_tag);
  for (std::size_t i = 0; i < loaded.rounds.size(); ++i) {
    CHECK(loaded.rounds[i].t == sim.trace.rounds[i].t);
    CHECK(loaded.rounds[i].x == sim.trace.rounds[i].x);
    CHECK(loaded.rounds[i].kept == sim.trace.rounds[i].kept);
  }
}

TEST_CASE("headerless csv ingestion") {
  const fs::path dir = temp_dir("trace_csv");
  const fs::path path = dir / "trace.csv";
  {
    std::ofstream out(path);
    out << "1,1,0,0,1,1,1,1\n";
    out << "2,0,1,1,1,1,1,0\n";
  }
  const Trace trace = read_trace(path.string());
  REQUIRE(trace.rounds.size() == 2);
  CHECK(trace.rounds[0].x == 1);
  CHECK(trace.rounds[1].kept == 0);
}

TEST_CASE("trace parse errors carry line diagnostics") {
  const fs::path dir = temp_dir("trace_errors");
  const fs::path path = dir / "bad.jsonl";
  {
    std::ofstream out(path);
    out << "1,1,0,0,1,1,1,1\n";
    out << "2,0,1,1,1,0,1,1\n";  // x inconsistent with b != a_y... (b=0? fields)
  }
  try {
    read_trace(path.string());
    FAIL("expected a parse error");
  } catch (const std::runtime_error& err) {
    CHECK(std::string(err.what()).find(":2:") != std::string::npos);
  }

  const fs::path gap = dir / "gap.csv";
  {
    std::ofstream out(gap);
    out << "1,1,0,0,1,1,1,1\n";
    out << "3,1,0,0,1,1,1,1\n";  // skipped round index
  }
  CHECK_THROWS_AS(read_trace(gap.string()), std::runtime_error);
}

TEST_CASE("config documents parse strictly") {
  const nlohmann::json doc = {
      {"rounds", 5000},
      {"seed", 42},
      {"input_model", {{"variant", "MARKOV"}, {"p_stay", 0.7}, {"eps_target", 0.1}}},
      {"strategy", {{"variant", "WINDOWED_BANDIT"}, {"window", 150}}},
      {"selection", {{"variant", "ADVERSARIAL"}, {"discard_fraction", 0.05}}},
      {"scoring", "CONDITIONAL"},
      {"benchmark", {{"mode", "ROBUST"}, {"eps_max", 0.1}}},
      {"confidence", {{"alpha", 0.01}, {"beta", 0.1}}},
  };
  const RunConfig config = run_config_from_json(doc);
  CHECK(config.n_rounds == 5000);
  CHECK(config.input_model.variant == InputVariant::Markov);
  CHECK(stationary_bias(config.input_model.p00, config.input_model.p10) ==
        doctest::Approx(0.1));
  CHECK(config.strategy.window == 150);
  CHECK(config.scoring == ScoringMode::Conditional);
  CHECK(config.benchmark.kind == BenchmarkKind::Robust);
  CHECK(config.benchmark.eps_max_source == EpsMaxSource::Given);
  CHECK(config.confidence.alpha == doctest::Approx(0.01));

  nlohmann::json typo = doc;
  typo["strategy"]["etaa"] = 0.1;
  CHECK_THROWS_WITH_AS(run_config_from_json(typo),
                       "config: unknown key 'strategy.etaa'", std::invalid_argument);
  nlohmann::json top = doc;
  top["round"] = 10;
  CHECK_THROWS_AS(run_config_from_json(top), std::invalid_argument);
}

TEST_CASE("config overrides rewrite nested keys") {
  nlohmann::json doc = {{"rounds", 100}, {"input_model", {{"variant", "IID_BIAS"}}}};
  apply_override(doc, "input_model.epsilon=0.25");
  apply_override(doc, "scoring=CONDITIONAL");
  apply_override(doc, "rounds=2000");
  const RunConfig config = run_config_from_json(doc);
  CHECK(config.input_model.epsilon == doctest::Approx(0.25));
  CHECK(config.scoring == ScoringMode::Conditional);
  CHECK(config.n_rounds == 2000);
  CHECK_THROWS_AS(apply_override(doc, "no_equals_sign"), std::invalid_argument);
}

TEST_CASE("robust benchmark defaults to the data-driven source") {
  const nlohmann::json doc = {{"benchmark", {{"mode", "ROBUST"}}}};
  const RunConfig config = run_config_from_json(doc);
  CHECK(config.benchmark.eps_max_source == EpsMaxSource::DataDriven);
  const nlohmann::json bad = {{"benchmark", {{"mode", "ROBUST"}, {"source", "GIVEN"}}}};
  CHECK_THROWS_AS(run_config_from_json(bad), std::invalid_argument);
}

TEST_CASE("pam task file loads and validates") {
  const fs::path dir = temp_dir("task");
  const fs::path path = dir / "task.json";
  {
    std::ofstream out(path);
    const PamTask task = rac_task(0.1);
    nlohmann::json j;
    j["n_a"] = task.n_a;
    j["n_y"] = task.n_y;
    j["n_b"] = task.n_b;
    j["n_m"] = task.n_m;
    j["coeffs"] = task.coeffs;
    j["input_law"] = task.input_law;
    out << j.dump();
  }
  const PamTask task = load_pam_task(path.string());
  CHECK(pam_ceiling_enumerate(task).value == doctest::Approx(0.80).epsilon(1e-12));
}

TEST_CASE("cli simulate is byte-identical across runs") {
  const fs::path dir_a = temp_dir("cli_sim_a");
  const fs::path dir_b = temp_dir("cli_sim_b");
  CliInvocation inv;
  inv.subcommand = "simulate";
  inv.overrides = {"rounds=2000", "input_model.variant=IID_BIAS", "input_model.epsilon=0.1",
                   "strategy.variant=STATIC_A0", "seed=77"};
  inv.output_dir = dir_a.string();
  REQUIRE(dispatch(inv) == 0);
  inv.output_dir = dir_b.string();
  REQUIRE(dispatch(inv) == 0);
  CHECK(slurp(dir_a / "trace.jsonl") == slurp(dir_b / "trace.jsonl"));
  CHECK(slurp(dir_a / "report.json") == slurp(dir_b / "report.json"));
}

TEST_CASE("cli certify consumes emitted traces") {
  const fs::path dir = temp_dir("cli_certify");
  CliInvocation sim;
  sim.subcommand = "simulate";
  sim.overrides = {"rounds=5000", "input_model.epsilon=0.1", "strategy.variant=STATIC_A0",
                   "selection.variant=ADVERSARIAL", "selection.discard_fraction=0.4",
                   "seed=5"};
  sim.output_dir = dir.string();
  REQUIRE(dispatch(sim) == 0);

  CliInvocation cert;
  cert.subcommand = "certify";
  cert.trace_path = (dir / "trace.jsonl").string();
  cert.preset = "CARELESS";
  cert.output_dir = (dir / "careless").string();
  REQUIRE(dispatch(cert) == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "careless" / "report.json"));
  CHECK(report["scoring"] == "CONDITIONAL");
  CHECK(report["s_cond"] == 1.0);
  CHECK(report["verdict"] == "ACCEPT");

  cert.preset.clear();
  cert.overrides = {"scoring=UNCONDITIONAL", "benchmark.mode=EFFECTIVE",
                    "benchmark.known_eps=0.1"};
  cert.output_dir = (dir / "aligned").string();
  REQUIRE(dispatch(cert) == 0);
  const auto aligned = nlohmann::json::parse(slurp(dir / "aligned" / "report.json"));
  CHECK(aligned["verdict"] == "REJECT");
  CHECK(aligned["evaluation_tag"] == "ALIGNED");
}

TEST_CASE("cli ceiling reports both routes and honours the capacity guard") {
  CliInvocation inv;
  inv.subcommand = "ceiling";
  inv.eps = 0.1;
  CHECK(dispatch(inv) == 0);

  const fs::path dir = temp_dir("cli_capacity");
  const fs::path path = dir / "huge.json";
  {
    std::ofstream out(path);
    nlohmann::json j;
    j["n_a"] = 12;
    j["n_y"] = 1;
    j["n_b"] = 2;
    j["n_m"] = 4;
    j["coeffs"] = std::vector<double>(12 * 1 * 2, 0.0);
    j["input_law"] = std::vector<double>(12, 1.0 / 12.0);
    out << j.dump();
  }
  CliInvocation capacity;
  capacity.subcommand = "ceiling";
  capacity.task_path = path.string();
  CHECK(dispatch(capacity) == 2);

  CliInvocation missing;
  missing.subcommand = "ceiling";
  CHECK(dispatch(missing) == 1);
}

TEST_CASE("cli sweeps and reproduce emit csv artifacts") {
  const fs::path dir = temp_dir("cli_sweeps");
  CliInvocation sweep;
  sweep.subcommand = "sweep-bias";
  sweep.overrides = {"rounds=1000", "strategy.variant=BIAS_AWARE", "strategy.known_eps=0"};
  sweep.grid = {0.0, 0.1};
  sweep.reps = 3;
  sweep.plot = true;
  sweep.output_dir = dir.string();
  REQUIRE(dispatch(sweep) == 0);
  CHECK(fs::exists(dir / "sweep_bias.csv"));
  CHECK(fs::exists(dir / "sweep_bias.json"));
  CHECK(fs::exists(dir / "sweep_bias.svg"));
  const std::string csv = slurp(dir / "sweep_bias.csv");
  CHECK(csv.find("NOMINAL") != std::string::npos);
  CHECK(csv.find("EFFECTIVE") != std::string::npos);

  CliInvocation stress;
  stress.subcommand = "stress-postselect";
  stress.grid = {0.0, 0.3};
  stress.reps = 3;
  stress.rounds = 1000;
  stress.output_dir = dir.string();
  REQUIRE(dispatch(stress) == 0);
  CHECK(fs::exists(dir / "stress_postselect.csv"));

  CliInvocation rounds;
  rounds.subcommand = "sweep-rounds";
  rounds.rounds_grid = {500, 1000};
  rounds.reps = 2;
  rounds.output_dir = dir.string();
  REQUIRE(dispatch(rounds) == 0);
  CHECK(fs::exists(dir / "sweep_rounds.csv"));

  CliInvocation bad;
  bad.subcommand = "reproduce";
  bad.figure = "fig9";
  bad.output_dir = dir.string();
  CHECK(dispatch(bad) == 1);
}

TEST_CASE("run_cli parses subcommands") {
  CHECK(run_cli({"ceiling", "--eps", "0.1"}) == 0);
  CHECK(run_cli({"ceiling"}) == 1);
  CHECK(run_cli({"nonsense"}) == 1);
}

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace racgap {

struct CliInvocation {
  std::string subcommand;
  std::string config_path;
  std::string trace_path;  // certify
  std::string figure;      // reproduce
  std::string output_dir;  // empty -> $RACGAP_OUTPUT_DIR, else "."
  std::string task_path;   // ceiling
  std::string preset;      // ALIGNED / CARELESS
  std::vector<std::string> overrides;     // section.key=value
  std::vector<double> grid;               // sweep-bias / stress-postselect
  std::vector<std::int64_t> rounds_grid;  // sweep-rounds
  std::optional<double> eps;              // ceiling
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<std::int64_t> rounds;
  int reps = 0;     // 0 -> subcommand default
  int threads = 0;  // 0 -> hardware
  bool plot = false;
};

// Executes one parsed invocation. Exit status 0 on success, 1 on
// validation or i/o failure (diagnostic on stderr), 2 when the strategy
// enumeration guard is exceeded.
int dispatch(const CliInvocation& invocation);

// Parses argv (without the program name) and dispatches.
int run_cli(std::vector<std::string> args);

}  // namespace racgap

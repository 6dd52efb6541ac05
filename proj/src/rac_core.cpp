#include "racgap/rac_core.hpp"

#include <stdexcept>

namespace racgap {

ScoringMode scoring_from_string(const std::string& s) {
  if (s == "UNCONDITIONAL") return ScoringMode::Unconditional;
  if (s == "CONDITIONAL") return ScoringMode::Conditional;
  throw std::invalid_argument("unknown scoring mode: " + s);
}

std::string to_string(ScoringMode mode) {
  return mode == ScoringMode::Unconditional ? "UNCONDITIONAL" : "CONDITIONAL";
}

Bit success(Bit a0, Bit a1, Bit y, Bit b) {
  const Bit queried = y ? a1 : a0;
  return b == queried ? Bit{1} : Bit{0};
}

double score_unconditional(const Trace& trace) {
  if (trace.rounds.empty()) throw std::domain_error("score_unconditional: no rounds");
  std::int64_t hits = 0;
  for (const auto& r : trace.rounds) hits += r.kept && r.x;
  return static_cast<double>(hits) / static_cast<double>(trace.rounds.size());
}

double score_conditional(const Trace& trace) {
  if (trace.rounds.empty()) throw std::domain_error("score_conditional: no rounds");
  std::int64_t hits = 0;
  std::int64_t kept = 0;
  for (const auto& r : trace.rounds) {
    if (!r.kept) continue;
    ++kept;
    hits += r.x;
  }
  if (kept == 0) throw std::domain_error("score_conditional: conditional score undefined (zero kept rounds)");
  return static_cast<double>(hits) / static_cast<double>(kept);
}

std::int64_t kept_count(const Trace& trace) {
  std::int64_t kept = 0;
  for (const auto& r : trace.rounds) kept += r.kept != 0;
  return kept;
}

void validate(const RoundRecord& r) {
  auto check_bit = [](Bit v, const char* name) {
    if (v > 1) throw std::invalid_argument(std::string("round field not a bit: ") + name);
  };
  if (r.t < 1) throw std::invalid_argument("round index t must be >= 1");
  check_bit(r.a0, "a0");
  check_bit(r.a1, "a1");
  check_bit(r.y, "y");
  check_bit(r.m, "m");
  check_bit(r.b, "b");
  check_bit(r.x, "x");
  check_bit(r.kept, "kept");
  if (r.x != success(r.a0, r.a1, r.y, r.b)) {
    throw std::invalid_argument("success flag x inconsistent with (a0, a1, y, b)");
  }
}

}  // namespace racgap

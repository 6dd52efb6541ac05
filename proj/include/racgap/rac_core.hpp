#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace racgap {

using Bit = std::uint8_t;  // value in {0, 1}

// One trial of the 2->1 random access code. The decoder is fixed to b = m
// in every simulated round; m and b are stored separately anyway so that
// external logs with nontrivial decoders can be ingested and scored.
struct RoundRecord {
  std::int32_t t = 0;  // 1-based round index
  Bit a0 = 0;
  Bit a1 = 0;
  Bit y = 0;     // query bit
  Bit m = 0;     // message sent
  Bit b = 0;     // output
  Bit x = 0;     // success indicator, 1 iff b == (y ? a1 : a0)
  Bit kept = 1;  // selection flag
};

struct Trace {
  std::vector<RoundRecord> rounds;
  std::uint64_t seed = 0;
  std::string model_tag;
};

enum class ScoringMode { Unconditional, Conditional };

ScoringMode scoring_from_string(const std::string& s);
std::string to_string(ScoringMode mode);

// 1 iff the output matches the queried input bit.
Bit success(Bit a0, Bit a1, Bit y, Bit b);

// Success count divided by the number of attempted rounds; discarded
// rounds contribute zero.
double score_unconditional(const Trace& trace);

// Success rate over kept rounds only. Inflatable by postselection; kept
// here because it is the misaligned scoring rule under study.
double score_conditional(const Trace& trace);

std::int64_t kept_count(const Trace& trace);

// Field-level checks for records arriving from external logs; throws
// std::invalid_argument naming the offending field.
void validate(const RoundRecord& record);

}  // namespace racgap

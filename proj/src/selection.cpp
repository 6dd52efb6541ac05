#include "racgap/selection.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace racgap {

SelectionVariant selection_variant_from_string(const std::string& s) {
  if (s == "NONE") return SelectionVariant::None;
  if (s == "RANDOM") return SelectionVariant::Random;
  if (s == "ADVERSARIAL") return SelectionVariant::Adversarial;
  throw std::invalid_argument("unknown selection variant: " + s);
}

std::string to_string(SelectionVariant v) {
  switch (v) {
    case SelectionVariant::None: return "NONE";
    case SelectionVariant::Random: return "RANDOM";
    case SelectionVariant::Adversarial: return "ADVERSARIAL";
  }
  return "?";
}

void validate(const SelectionSpec& spec) {
  if (spec.discard_fraction < 0 || spec.discard_fraction >= 1) {
    throw std::invalid_argument("selection: discard_fraction must be in [0,1)");
  }
}

std::string selection_tag(const SelectionSpec& spec) {
  if (spec.variant == SelectionVariant::None) return "NONE";
  std::ostringstream out;
  out << to_string(spec.variant) << "(f=" << spec.discard_fraction << ")";
  return out.str();
}

namespace {

// Discard k indices drawn uniformly without replacement (partial
// Fisher-Yates over the candidate list).
void discard_uniform(std::vector<RoundRecord>& rounds, std::vector<std::size_t>& candidates,
                     std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
    rounds[candidates[i]].kept = 0;
  }
}

}  // namespace

Trace apply_selection(Trace trace, const SelectionSpec& spec, Rng& rng) {
  validate(spec);
  for (const auto& r : trace.rounds) {
    if (!r.kept) throw std::domain_error("apply_selection: double selection");
  }
  if (spec.variant == SelectionVariant::None || trace.rounds.empty()) return trace;

  const std::size_t n = trace.rounds.size();
  const auto k = static_cast<std::size_t>(
      std::floor(spec.discard_fraction * static_cast<double>(n) + 0.5));
  if (k == 0) return trace;

  if (spec.variant == SelectionVariant::Random) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    discard_uniform(trace.rounds, all, k, rng);
    return trace;
  }

  // Adversarial: failures first, then successes once failures run out.
  std::vector<std::size_t> failures;
  std::vector<std::size_t> successes;
  for (std::size_t i = 0; i < n; ++i) {
    (trace.rounds[i].x ? successes : failures).push_back(i);
  }
  if (k <= failures.size()) {
    discard_uniform(trace.rounds, failures, k, rng);
  } else {
    for (std::size_t i : failures) trace.rounds[i].kept = 0;
    discard_uniform(trace.rounds, successes, k - failures.size(), rng);
  }
  return trace;
}

}  // namespace racgap

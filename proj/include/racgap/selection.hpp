#pragma once

#include <string>

#include "racgap/rac_core.hpp"
#include "racgap/rng.hpp"

namespace racgap {

enum class SelectionVariant { None, Random, Adversarial };

SelectionVariant selection_variant_from_string(const std::string& s);
std::string to_string(SelectionVariant v);

// Post-hoc selection rule over a completed trace. ADVERSARIAL is the
// offline worst case: it discards failures first, which weakly dominates
// any online failure-preferential rule at the same budget.
struct SelectionSpec {
  SelectionVariant variant = SelectionVariant::None;
  double discard_fraction = 0.0;  // f in [0, 1)
};

void validate(const SelectionSpec& spec);
std::string selection_tag(const SelectionSpec& spec);

// Sets kept flags on a fresh trace. Exactly round(f*N) rounds are
// discarded (half-up rounding): uniformly for RANDOM; failures first,
// uniformly within each class, for ADVERSARIAL. Throws std::domain_error
// if any round is already discarded ("double selection").
Trace apply_selection(Trace trace, const SelectionSpec& spec, Rng& rng);

}  // namespace racgap

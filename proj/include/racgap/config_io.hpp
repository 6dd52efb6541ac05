#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "racgap/ceilings.hpp"
#include "racgap/harness.hpp"

namespace racgap {

// Run configuration document: a JSON object with sections mirroring
// RunConfig. Unknown keys anywhere are errors; a silent typo in eps or
// alpha would corrupt certification claims.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& config);

RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides = {});

// "section.key=value" override applied to the raw document before
// parsing; the value is parsed as JSON when possible, else as a string.
void apply_override(nlohmann::json& j, const std::string& key_eq_value);

// PamTask file: {"n_a":..,"n_y":..,"n_b":..,"n_m":..,
//                "coeffs":[(a,y,b)-major],"input_law":[(a,y)-major]}
PamTask load_pam_task(const std::string& path);

}  // namespace racgap

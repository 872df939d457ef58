#pragma once

#include <vector>

#include "flockspec/config.hpp"

namespace flockspec {

std::vector<std::string> scenario_names();

// Initial state for the configured scenario. Every generator yields strictly
// positive density and fields band-limited below the dealiasing cut.
FlowState make_scenario(const SimConfig& c);

}  // namespace flockspec

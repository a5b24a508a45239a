#pragma once

#include <string>

#include "airfilm/platform_design.hpp"

namespace airfilm::design {

/// JSON document for a platform design. All lengths in meters, pressures in
/// Pa, forces in N; supply units listed individually.
std::string design_to_json(const PlatformDesign& design);

/// Human-readable summary table (mm / MPa with explicit unit suffixes).
std::string design_table(const PlatformDesign& design);

}  // namespace airfilm::design

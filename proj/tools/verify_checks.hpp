#pragma once

#include <string>
#include <vector>

namespace airfilm::verify {

struct Check {
  std::string name;
  std::string note;        // where the expectation comes from
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool at_least = false;   // pass when measured >= expected instead of |diff| <= tol
  bool advisory = false;   // reported and flagged, never fails the run
  bool pass = false;
};

struct Report {
  std::vector<Check> checks;  // sorted by name
  bool all_pass = false;      // advisory checks excluded
};

/// Runs every verification check whose name contains `only` (all when empty).
Report run_checks(const std::string& only);

std::string report_table(const Report& report);
std::string report_json(const Report& report);

}  // namespace airfilm::verify

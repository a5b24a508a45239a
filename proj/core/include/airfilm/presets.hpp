#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "airfilm/scenario.hpp"

// Canned experiments on the platform model, each paired with the checks that
// characterize it (conservation, stopping distance, pinned rotation, ...).
namespace airfilm::sim {

enum class Preset {
  self_rotation_floating,
  self_rotation_friction,
  external_couple,
  magnet_separation,
  film_boundary_glide,
};

std::optional<Preset> preset_from_name(std::string_view name);
const char* preset_name(Preset preset);
std::vector<std::string> preset_names();

struct PresetParams {
  std::optional<double> dt_s;     // per-preset default when unset
  std::optional<double> t_end_s;  // per-preset default when unset

  // self-rotation presets
  double joint_sweep_rad = 1.5707963267948966;  // pi/2
  double half_mass_kg = 0.5;
  double half_inertia_kg_m2 = 1e-3;

  // external couple
  double couple_nm = 0.01;
  double couple_duration_s = 1.0;
  double body_inertia_kg_m2 = 1e-3;

  // magnet separation
  double impulse_kg_m_s = 0.01;
  double body_mass_kg = 0.5;

  // boundary glide
  double entry_speed_m_s = 0.1;
  double mu = 0.2;
};

enum class CheckKind { within, at_least };

struct CheckLine {
  std::string name;
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::within;
  bool pass = false;
  std::string note;
};

struct PresetRun {
  Scenario scenario;
  Trajectory trajectory;
  std::vector<CheckLine> checks;
  bool all_pass = false;
};

/// Builds the preset scenario, simulates it, and evaluates its checks.
PresetRun run_preset(Preset preset, const PresetParams& params = {});

}  // namespace airfilm::sim

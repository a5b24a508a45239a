#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "airfilm/geometry.hpp"
#include "airfilm/porous_flow.hpp"

// Sizing procedure: from a robot specification to a complete platform design
// (glass puck, hole spacing, plate thickness, supply-unit layout, load
// capacity), with the covering constraint that the glass always sits over at
// least four inlet holes.
namespace airfilm::design {

struct RobotSpec {
  double footprint_side_m = 0.092;  // bounding square of one module
  double module_mass_kg = 1.0;
  int module_count = 1;
  double workspace_width_m = 1.0;
  double workspace_depth_m = 1.0;

  bool operator==(const RobotSpec&) const = default;
  void validate() const;  // throws std::domain_error
};

enum class GlassShape { circle, square };

struct GlassPuck {
  GlassShape shape = GlassShape::circle;
  double size_m = 0.080;  // diameter (circle) or side (square)
  double mass_kg = 0.0;   // negligible by design
  std::string surface_note = "low roughness and high flatness";

  bool operator==(const GlassPuck&) const = default;
  double contact_area_m2() const;
  void validate() const;
};

// One 3D-printed manifold cell feeding a 2x2 block of inlet holes. Units are
// chained by hoses; exactly one edge unit connects to the pressure source.
struct SupplyUnit {
  int row = 0;
  int col = 0;
  std::vector<long> holes_served;  // row-major hole indices, 1-4 per unit
  std::vector<int> hose_links;     // neighbour unit indices on the hose path
  bool is_source_unit = false;
};

enum class DesignMode { generic, targeted };

struct PlatformDesign {
  DesignMode mode = DesignMode::targeted;
  flow::PorousPlate plate;
  GlassPuck glass;
  std::vector<SupplyUnit> supply_units;
  double supply_pressure_pa = 400e3;
  double film_pressure_pa = 20e3;
  double estimated_capacity_n = 0.0;
  double required_load_n = 0.0;
  // The metal leveling plate matches the porous plate plan.
  double metal_plate_width_m = 0.0;
  double metal_plate_depth_m = 0.0;
  int min_covered_holes = 0;
  int max_covered_holes = 0;
};

class DesignInfeasibleError : public std::runtime_error {
 public:
  DesignInfeasibleError(std::string constraint, const std::string& detail)
      : std::runtime_error(constraint + ": " + detail), constraint_(std::move(constraint)) {}
  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

// Fixed linear glass-sizing rule, diameter = factor * footprint rounded to
// the nearest millimeter (0.87 maps a 92 mm module to an 80 mm puck).
inline constexpr double kGlassSizingFactor = 0.87;

GlassPuck size_glass(const RobotSpec& robot, double factor = kGlassSizingFactor);

/// Number of square-grid points (infinite grid, the given pitch) inside the
/// glass contact region centered at `center`. Boundary points count.
int count_holes_under_glass(Vec2 center, const GlassPuck& glass, double spacing_m);

struct CoverRange {
  int min_holes = 0;
  int max_holes = 0;
};

/// Exhaustive sweep of glass center positions over one grid cell
/// (pitch = spacing / sweep_divisions per axis, default fine enough to be
/// stable under 2x refinement).
CoverRange min_max_covered_holes(const GlassPuck& glass, double spacing_m,
                                 int sweep_divisions = 200);

/// Largest spacing on a 1 mm grid for which every glass position covers at
/// least four holes.
double max_hole_spacing(const GlassPuck& glass);

/// film_pressure * glass contact area.
double load_capacity(const GlassPuck& glass, double film_pressure_pa);

/// Tiles the plate's hole grid into 2x2 blocks, row-major; edge blocks may
/// serve fewer than four holes. Hose links form a serpentine path visiting
/// every unit; the first unit is the source.
std::vector<SupplyUnit> supply_unit_layout(const flow::PorousPlate& plate);

struct DesignOptions {
  double spacing_request_m = 0.030;  // capped at max_hole_spacing(glass)
  double thickness_floor_m = 0.030;
  double hole_diameter_m = 0.002;
  double film_pressure_pa = 20e3;
  double supply_pressure_pa = 400e3;
  double glass_factor = kGlassSizingFactor;
  double gravity_m_s2 = 9.81;
};

/// generic: fixed 2 m / 30 mm thickness / 10 mm spacing preset.
/// targeted: glass from the robot, spacing = min(request, computed optimum),
/// plate plan = robot workspace, thickness = max(floor, spacing).
/// Throws DesignInfeasibleError naming the failing constraint.
PlatformDesign design_platform(const RobotSpec& robot, DesignMode mode,
                               const DesignOptions& opts = {});

}  // namespace airfilm::design

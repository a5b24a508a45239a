#include "airfilm/platform_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace airfilm::design {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

double round_to_mm(double meters) { return std::round(meters * 1000.0) / 1000.0; }

}  // namespace

void RobotSpec::validate() const {
  require(footprint_side_m > 0.0, "robot footprint must be > 0");
  require(module_mass_kg > 0.0, "module mass must be > 0");
  require(module_count >= 1, "module count must be >= 1");
  require(workspace_width_m > 0.0 && workspace_depth_m > 0.0, "workspace dimensions must be > 0");
}

double GlassPuck::contact_area_m2() const {
  if (shape == GlassShape::circle) {
    const double r = 0.5 * size_m;
    return std::numbers::pi * r * r;
  }
  return size_m * size_m;
}

void GlassPuck::validate() const {
  require(size_m > 0.0, "glass size must be > 0");
  require(mass_kg >= 0.0, "glass mass must be >= 0");
}

GlassPuck size_glass(const RobotSpec& robot, double factor) {
  robot.validate();
  require(factor > 0.0, "glass sizing factor must be > 0");
  GlassPuck glass;
  glass.shape = GlassShape::circle;
  glass.size_m = round_to_mm(factor * robot.footprint_side_m);
  glass.mass_kg = 0.0;
  return glass;
}

int count_holes_under_glass(Vec2 center, const GlassPuck& glass, double spacing_m) {
  glass.validate();
  require(spacing_m > 0.0, "hole spacing must be > 0");

  // Candidate ranges widened by one row/column, then the exact containment
  // test per point; this keeps results identical to brute-force enumeration
  // even when ceil/floor round across a boundary.
  const double half = 0.5 * glass.size_m;
  const long i_lo = static_cast<long>(std::ceil((center.x - half) / spacing_m)) - 1;
  const long i_hi = static_cast<long>(std::floor((center.x + half) / spacing_m)) + 1;
  int count = 0;

  if (glass.shape == GlassShape::square) {
    const long j_lo = static_cast<long>(std::ceil((center.y - half) / spacing_m)) - 1;
    const long j_hi = static_cast<long>(std::floor((center.y + half) / spacing_m)) + 1;
    int cols = 0;
    for (long i = i_lo; i <= i_hi; ++i)
      if (std::abs(i * spacing_m - center.x) <= half) ++cols;
    int rows = 0;
    for (long j = j_lo; j <= j_hi; ++j)
      if (std::abs(j * spacing_m - center.y) <= half) ++rows;
    return cols * rows;
  }

  const double r2 = half * half;
  for (long i = i_lo; i <= i_hi; ++i) {
    const double dx = i * spacing_m - center.x;
    const double rem = r2 - dx * dx;
    if (rem < 0.0) continue;
    const double h = std::sqrt(rem);
    const long j_lo = static_cast<long>(std::ceil((center.y - h) / spacing_m)) - 1;
    const long j_hi = static_cast<long>(std::floor((center.y + h) / spacing_m)) + 1;
    for (long j = j_lo; j <= j_hi; ++j) {
      const double dy = j * spacing_m - center.y;
      if (dx * dx + dy * dy <= r2) ++count;
    }
  }
  return count;
}

CoverRange min_max_covered_holes(const GlassPuck& glass, double spacing_m, int sweep_divisions) {
  glass.validate();
  require(spacing_m > 0.0, "hole spacing must be > 0");
  require(sweep_divisions >= 1, "sweep divisions must be >= 1");

  const double pitch = spacing_m / sweep_divisions;
  CoverRange r{std::numeric_limits<int>::max(), 0};
  for (int kj = 0; kj <= sweep_divisions; ++kj) {
    for (int ki = 0; ki <= sweep_divisions; ++ki) {
      const int n = count_holes_under_glass({ki * pitch, kj * pitch}, glass, spacing_m);
      r.min_holes = std::min(r.min_holes, n);
      r.max_holes = std::max(r.max_holes, n);
    }
  }
  return r;
}

double max_hole_spacing(const GlassPuck& glass) {
  glass.validate();
  const auto feasible = [&](long mm) {
    return min_max_covered_holes(glass, mm / 1000.0).min_holes >= 4;
  };
  // Covered count at the worst position is monotone in glass-size/spacing,
  // so binary search over the millimeter grid applies.
  long lo = 1;
  long hi = std::max<long>(1, static_cast<long>(std::floor(glass.size_m * 1000.0)));
  if (!feasible(lo)) throw std::domain_error("glass too small to cover four holes at any spacing");
  while (lo < hi) {
    const long mid = lo + (hi - lo + 1) / 2;
    if (feasible(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo / 1000.0;
}

double load_capacity(const GlassPuck& glass, double film_pressure_pa) {
  glass.validate();
  require(film_pressure_pa > 0.0, "film pressure must be > 0");
  return film_pressure_pa * glass.contact_area_m2();
}

std::vector<SupplyUnit> supply_unit_layout(const flow::PorousPlate& plate) {
  plate.validate();
  const int nx = plate.holes_x();
  const int ny = plate.holes_y();
  if (nx <= 0 || ny <= 0) throw std::domain_error("plate has no holes to supply");

  const int ux = (nx + 1) / 2;
  const int uy = (ny + 1) / 2;
  std::vector<SupplyUnit> units;
  units.reserve(static_cast<std::size_t>(ux) * uy);

  // Serpentine order: row 0 left-to-right, row 1 right-to-left, ... so that
  // consecutive units in the list are always hose neighbours.
  for (int r = 0; r < uy; ++r) {
    for (int k = 0; k < ux; ++k) {
      const int c = (r % 2 == 0) ? k : (ux - 1 - k);
      SupplyUnit u;
      u.row = r;
      u.col = c;
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          const int hi = 2 * c + di;
          const int hj = 2 * r + dj;
          if (hi < nx && hj < ny) u.holes_served.push_back(static_cast<long>(hj) * nx + hi);
        }
      }
      units.push_back(std::move(u));
    }
  }
  for (std::size_t k = 0; k < units.size(); ++k) {
    if (k > 0) units[k].hose_links.push_back(static_cast<int>(k - 1));
    if (k + 1 < units.size()) units[k].hose_links.push_back(static_cast<int>(k + 1));
  }
  units.front().is_source_unit = true;
  return units;
}

PlatformDesign design_platform(const RobotSpec& robot, DesignMode mode, const DesignOptions& opts) {
  robot.validate();
  require(opts.spacing_request_m > 0.0, "requested spacing must be > 0");
  require(opts.thickness_floor_m > 0.0, "thickness floor must be > 0");
  require(opts.film_pressure_pa > 0.0, "film pressure must be > 0");
  require(opts.supply_pressure_pa > 0.0, "supply pressure must be > 0");

  PlatformDesign d;
  d.mode = mode;
  d.glass = size_glass(robot, opts.glass_factor);
  d.supply_pressure_pa = opts.supply_pressure_pa;
  d.film_pressure_pa = opts.film_pressure_pa;

  if (mode == DesignMode::generic) {
    d.plate.plan_width_m = 2.0;
    d.plate.plan_depth_m = 2.0;
    d.plate.thickness_m = 0.030;
    d.plate.hole_spacing_m = 0.010;
  } else {
    d.plate.plan_width_m = robot.workspace_width_m;
    d.plate.plan_depth_m = robot.workspace_depth_m;
    const double optimum = max_hole_spacing(d.glass);
    double spacing = std::min(opts.spacing_request_m, optimum);
    spacing = std::floor(spacing * 1000.0 + 1e-9) / 1000.0;  // whole millimeters
    d.plate.hole_spacing_m = spacing;
    d.plate.thickness_m = std::max(opts.thickness_floor_m, spacing);
  }
  d.plate.hole_diameter_m = opts.hole_diameter_m;
  d.plate.validate();

  d.metal_plate_width_m = d.plate.plan_width_m;
  d.metal_plate_depth_m = d.plate.plan_depth_m;
  d.supply_units = supply_unit_layout(d.plate);

  const CoverRange cover = min_max_covered_holes(d.glass, d.plate.hole_spacing_m);
  d.min_covered_holes = cover.min_holes;
  d.max_covered_holes = cover.max_holes;

  d.estimated_capacity_n = load_capacity(d.glass, d.film_pressure_pa);
  d.required_load_n =
      opts.gravity_m_s2 * (robot.module_mass_kg * robot.module_count + d.glass.mass_kg);

  if (d.min_covered_holes < 4) {
    std::ostringstream msg;
    msg << "worst-case glass position covers " << d.min_covered_holes
        << " holes at spacing " << d.plate.hole_spacing_m << " m; at least 4 required";
    throw DesignInfeasibleError("hole covering", msg.str());
  }
  if (d.estimated_capacity_n < d.required_load_n) {
    std::ostringstream msg;
    msg << "estimated capacity " << d.estimated_capacity_n << " N below required load "
        << d.required_load_n << " N";
    throw DesignInfeasibleError("load capacity", msg.str());
  }
  return d;
}

}  // namespace airfilm::design

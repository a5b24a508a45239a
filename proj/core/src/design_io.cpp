#include "airfilm/design_io.hpp"

#include <json.hpp>

#include <sstream>

namespace airfilm::design {

namespace {

using nlohmann::json;

const char* mode_name(DesignMode m) {
  return m == DesignMode::generic ? "generic" : "targeted";
}

const char* shape_name(GlassShape s) {
  return s == GlassShape::circle ? "circle" : "square";
}

}  // namespace

std::string design_to_json(const PlatformDesign& d) {
  json j;
  j["mode"] = mode_name(d.mode);
  j["plate"] = {{"thickness_m", d.plate.thickness_m},
                {"plan_width_m", d.plate.plan_width_m},
                {"plan_depth_m", d.plate.plan_depth_m},
                {"hole_spacing_m", d.plate.hole_spacing_m},
                {"hole_diameter_m", d.plate.hole_diameter_m},
                {"porosity", d.plate.porosity},
                {"particle_size_min_um", d.plate.particle_size_min_um},
                {"particle_size_max_um", d.plate.particle_size_max_um},
                {"holes_x", d.plate.holes_x()},
                {"holes_y", d.plate.holes_y()},
                {"hole_count", d.plate.hole_count()}};
  j["glass"] = {{"shape", shape_name(d.glass.shape)},
                {"size_m", d.glass.size_m},
                {"mass_kg", d.glass.mass_kg},
                {"surface_note", d.glass.surface_note}};
  j["supply_pressure_pa"] = d.supply_pressure_pa;
  j["film_pressure_pa"] = d.film_pressure_pa;
  j["estimated_capacity_n"] = d.estimated_capacity_n;
  j["required_load_n"] = d.required_load_n;
  j["metal_plate"] = {{"width_m", d.metal_plate_width_m}, {"depth_m", d.metal_plate_depth_m}};
  j["covering"] = {{"min_holes", d.min_covered_holes}, {"max_holes", d.max_covered_holes}};

  json units = json::array();
  for (const SupplyUnit& u : d.supply_units)
    units.push_back({{"row", u.row},
                     {"col", u.col},
                     {"holes", u.holes_served},
                     {"links", u.hose_links},
                     {"source", u.is_source_unit}});
  j["supply_units"] = std::move(units);
  return j.dump(2) + "\n";
}

std::string design_table(const PlatformDesign& d) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  const int units_x = d.supply_units.empty() ? 0 : (d.plate.holes_x() + 1) / 2;
  const int units_y = d.supply_units.empty() ? 0 : (d.plate.holes_y() + 1) / 2;

  os << "platform design (" << mode_name(d.mode) << ")\n";
  os.precision(0);
  os << "  glass      " << shape_name(d.glass.shape) << ", "
     << (d.glass.shape == GlassShape::circle ? "diameter " : "side ") << d.glass.size_m * 1000.0
     << " mm\n";
  os << "  plate      ";
  os.precision(2);
  os << d.plate.plan_width_m << " m x " << d.plate.plan_depth_m << " m, thickness ";
  os.precision(0);
  os << d.plate.thickness_m * 1000.0 << " mm, porosity ";
  os << d.plate.porosity * 100.0 << "%\n";
  os << "  holes      " << d.plate.holes_x() << " x " << d.plate.holes_y() << " at "
     << d.plate.hole_spacing_m * 1000.0 << " mm pitch, diameter "
     << d.plate.hole_diameter_m * 1000.0 << " mm (" << d.plate.hole_count() << " total)\n";
  os << "  supply     " << d.supply_units.size() << " units (" << units_x << " x " << units_y
     << "), serpentine hose path, 1 source unit\n";
  os.precision(3);
  os << "  pressure   supply " << d.supply_pressure_pa / 1e6 << " MPa, film "
     << d.film_pressure_pa / 1e6 << " MPa\n";
  os.precision(1);
  os << "  capacity   " << d.estimated_capacity_n << " N (required " << d.required_load_n
     << " N)\n";
  os << "  covering   " << d.min_covered_holes << ".." << d.max_covered_holes
     << " holes under the glass (minimum required 4)\n";
  return os.str();
}

}  // namespace airfilm::design

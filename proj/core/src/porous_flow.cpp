#include "airfilm/porous_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace airfilm::flow {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

int PorousPlate::holes_x() const {
  return static_cast<int>(std::floor(plan_width_m / hole_spacing_m)) + 1;
}

int PorousPlate::holes_y() const {
  return static_cast<int>(std::floor(plan_depth_m / hole_spacing_m)) + 1;
}

long PorousPlate::hole_count() const {
  return static_cast<long>(holes_x()) * static_cast<long>(holes_y());
}

Vec2 PorousPlate::hole_position(int i, int j) const {
  const double span_x = (holes_x() - 1) * hole_spacing_m;
  const double span_y = (holes_y() - 1) * hole_spacing_m;
  const double off_x = 0.5 * (plan_width_m - span_x);
  const double off_y = 0.5 * (plan_depth_m - span_y);
  return {off_x + i * hole_spacing_m, off_y + j * hole_spacing_m};
}

double PorousPlate::hole_area_m2() const {
  const double r = 0.5 * hole_diameter_m;
  return std::numbers::pi * r * r;
}

void PorousPlate::validate() const {
  require(thickness_m > 0.0, "plate thickness must be > 0");
  require(plan_width_m > 0.0 && plan_depth_m > 0.0, "plate plan dimensions must be > 0");
  require(hole_spacing_m > 0.0, "hole spacing must be > 0");
  require(hole_diameter_m > 0.0, "hole diameter must be > 0");
  require(hole_diameter_m < hole_spacing_m, "hole diameter must be smaller than the spacing");
  require(porosity > 0.0 && porosity < 1.0, "porosity must lie in (0, 1)");
  require(particle_size_min_um > 0.0 && particle_size_max_um >= particle_size_min_um,
          "particle size range is invalid");
}

void InletState::validate() const {
  require(supply_pressure_pa > 0.0, "supply pressure must be > 0");
  require(ambient_pressure_pa > 0.0, "ambient pressure must be > 0");
}

EnvelopePoint EnvelopePoint::at_surface(double x_m, double thickness_m, double v0_m_s) {
  require(thickness_m > 0.0, "plate thickness must be > 0");
  EnvelopePoint p;
  p.x_m = x_m;
  p.r0_m = thickness_m;
  p.r_m = std::sqrt(thickness_m * thickness_m + x_m * x_m);
  p.v0_m_s = v0_m_s;
  p.v_m_s = envelope_velocity(p.r_m, p.r0_m, v0_m_s);
  return p;
}

double envelope_velocity(double r_m, double r0_m, double v0_m_s) {
  require(r0_m > 0.0, "envelope radius r0 must be > 0");
  require(r_m > 0.0, "envelope radius r must be > 0");
  require(r_m >= r0_m, "envelope radius r must be >= r0");
  require(v0_m_s >= 0.0, "v0 must be >= 0");
  const double q = r0_m / r_m;
  return v0_m_s * q * q;
}

double surface_velocity_ratio(double x_m, double thickness_m) {
  require(thickness_m > 0.0, "plate thickness must be > 0");
  const double h2 = thickness_m * thickness_m;
  return h2 / (h2 + x_m * x_m);
}

std::vector<FlowSample> flow_curve(double thickness_m, double x_max_m, double step_m) {
  require(thickness_m > 0.0, "plate thickness must be > 0");
  require(x_max_m >= 0.0, "x_max must be >= 0");
  require(step_m > 0.0, "step must be > 0");
  if (x_max_m > 0.0) require(step_m <= x_max_m, "step must be <= x_max");

  std::vector<FlowSample> out;
  const int n = static_cast<int>(std::floor(x_max_m / step_m + 1e-9));
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double x = k * step_m;
    out.push_back({x, surface_velocity_ratio(x, thickness_m)});
  }
  return out;
}

double superposed_surface_speed(Vec2 point, const PorousPlate& plate, double v0_m_s) {
  plate.validate();
  require(point.x >= 0.0 && point.x <= plate.plan_width_m && point.y >= 0.0 &&
              point.y <= plate.plan_depth_m,
          "point lies outside the plate plan");

  const double h2 = plate.thickness_m * plate.thickness_m;
  const int nx = plate.holes_x();
  const int ny = plate.holes_y();
  double sum = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Vec2 d = point - plate.hole_position(i, j);
      sum += h2 / (h2 + d.norm2());
    }
  }
  return v0_m_s * sum;
}

double mass_flux_product(double pressure_pa, double velocity_m_s, double radius_m) {
  require(pressure_pa > 0.0, "pressure must be > 0");
  require(velocity_m_s >= 0.0, "velocity must be >= 0");
  require(radius_m > 0.0, "radius must be > 0");
  return pressure_pa * velocity_m_s * radius_m * radius_m;
}

double contact_force(double pressure_pa, double area_m2) {
  require(pressure_pa >= 0.0, "pressure must be >= 0");
  require(area_m2 >= 0.0, "area must be >= 0");
  return pressure_pa * area_m2;
}

ForceReduction inlet_force_reduction(const PorousPlate& plate, const InletState& inlet) {
  plate.validate();
  inlet.validate();
  ForceReduction r;
  r.naive_force_n = contact_force(inlet.supply_pressure_pa, plate.plan_area_m2());
  r.inlet_force_n =
      contact_force(inlet.supply_pressure_pa, static_cast<double>(plate.hole_count()) * plate.hole_area_m2());
  r.ratio = r.naive_force_n / r.inlet_force_n;
  return r;
}

SurfaceVelocityField sample_surface_field(const PorousPlate& plate, double pitch_m) {
  plate.validate();
  require(pitch_m > 0.0, "sample pitch must be > 0");

  SurfaceVelocityField f;
  f.pitch_m = pitch_m;
  f.nx = static_cast<int>(std::floor(plate.plan_width_m / pitch_m + 1e-9)) + 1;
  f.ny = static_cast<int>(std::floor(plate.plan_depth_m / pitch_m + 1e-9)) + 1;
  f.ratio.resize(static_cast<std::size_t>(f.nx) * static_cast<std::size_t>(f.ny));
  for (int j = 0; j < f.ny; ++j) {
    for (int i = 0; i < f.nx; ++i) {
      Vec2 p = f.point(i, j);
      // The last sample can overshoot the plan edge by one rounding step.
      p.x = std::min(p.x, plate.plan_width_m);
      p.y = std::min(p.y, plate.plan_depth_m);
      f.ratio[static_cast<std::size_t>(j) * f.nx + i] = superposed_surface_speed(p, plate, 1.0);
    }
  }
  return f;
}

}  // namespace airfilm::flow

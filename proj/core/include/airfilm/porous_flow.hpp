#pragma once

#include <vector>

#include "airfilm/geometry.hpp"

// Envelope-surface model of gas diffusion through a porous plate.
//
// High-pressure gas enters the plate through a small drilled hole on the
// lower face; the inlet is small enough to treat as a point source. By
// isotropy, surfaces of equal mass flow inside the material are hemispheres
// centered on the inlet, so conservation of flow across envelopes gives
//
//     v * r^2 = v0 * r0^2
//
// with r0 the radius of the envelope tangent to the top surface (equal to
// the plate thickness H) and v0 the outflow speed there. A point on the top
// surface at horizontal distance x from the inlet axis lies on the envelope
// of radius r = sqrt(H^2 + x^2), which yields the surface profile
//
//     v(x) = H^2 / (H^2 + x^2) * v0.
//
// The absolute scale v0 is never needed by the toolkit; fields are reported
// as v/v0 unless a caller supplies v0.
namespace airfilm::flow {

// Graphite plate with a square array of inlet holes drilled into the lower
// face. Lengths in meters. Porosity and particle size are material
// descriptors only; the flow model does not consume them.
struct PorousPlate {
  double thickness_m = 0.030;
  double plan_width_m = 1.0;
  double plan_depth_m = 1.0;
  double hole_spacing_m = 0.030;
  double hole_diameter_m = 0.002;
  double porosity = 0.17;
  double particle_size_min_um = 13.0;
  double particle_size_max_um = 15.0;

  bool operator==(const PorousPlate&) const = default;

  int holes_x() const;
  int holes_y() const;
  long hole_count() const;
  // Hole (i, j) position in plate coordinates; the grid spans
  // (holes-1)*spacing per axis and is centered within the plan.
  Vec2 hole_position(int i, int j) const;
  double hole_area_m2() const;
  double plan_area_m2() const { return plan_width_m * plan_depth_m; }

  // Throws std::domain_error when a field is out of range.
  void validate() const;
};

struct InletState {
  double supply_pressure_pa = 400e3;  // gauge
  double ambient_pressure_pa = 101325.0;

  bool operator==(const InletState&) const = default;
  void validate() const;
};

// Point on one iso-flow envelope. On the top surface r^2 = x^2 + H^2.
struct EnvelopePoint {
  double r_m = 0.0;
  double r0_m = 0.0;
  double x_m = 0.0;
  double v_m_s = 0.0;
  double v0_m_s = 0.0;

  // Envelope point where the radius through surface offset x meets the top
  // surface of a plate of the given thickness.
  static EnvelopePoint at_surface(double x_m, double thickness_m, double v0_m_s);
};

struct FlowSample {
  double x_m = 0.0;
  double ratio = 0.0;  // v / v0
  bool operator==(const FlowSample&) const = default;
};

// Normalized outflow speed (multiples of v0) sampled on a uniform grid over
// the plate plan, row-major with x fastest.
struct SurfaceVelocityField {
  int nx = 0;
  int ny = 0;
  double pitch_m = 0.0;
  std::vector<double> ratio;

  double at(int i, int j) const { return ratio[static_cast<std::size_t>(j) * nx + i]; }
  Vec2 point(int i, int j) const { return {i * pitch_m, j * pitch_m}; }
};

/// Speed on the envelope of radius r given speed v0 on radius r0: v0*r0^2/r^2.
double envelope_velocity(double r_m, double r0_m, double v0_m_s);

/// Top-surface speed ratio v/v0 = H^2/(H^2 + x^2); symmetric in x.
double surface_velocity_ratio(double x_m, double thickness_m);

/// Tabulates surface_velocity_ratio on [0, x_max] at the given step.
std::vector<FlowSample> flow_curve(double thickness_m, double x_max_m, double step_m);

/// Linear superposition of single-hole surface profiles over the plate's
/// hole array. `point` must lie within the plate plan.
double superposed_surface_speed(Vec2 point, const PorousPlate& plate, double v0_m_s = 1.0);

/// p * v * r^2; constant across envelopes of one steady flow. The hemisphere
/// area factor 2*pi is omitted since only ratios and invariance matter.
double mass_flux_product(double pressure_pa, double velocity_m_s, double radius_m);

/// Force of a uniform pressure acting on an area.
double contact_force(double pressure_pa, double area_m2);

struct ForceReduction {
  double naive_force_n = 0.0;  // pressure applied to the full lower plane
  double inlet_force_n = 0.0;  // pressure applied to the drilled inlets only
  double ratio = 0.0;          // naive / inlet
};

/// Compares full-plane pressurization against inlet-hole pressurization.
ForceReduction inlet_force_reduction(const PorousPlate& plate, const InletState& inlet);

/// Samples superposed_surface_speed (v0 = 1) over the whole plate plan.
SurfaceVelocityField sample_surface_field(const PorousPlate& plate, double pitch_m);

}  // namespace airfilm::flow

#include "verify_checks.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "airfilm/csv.hpp"
#include "airfilm/design_io.hpp"
#include "airfilm/platform_design.hpp"
#include "airfilm/porous_flow.hpp"
#include "airfilm/presets.hpp"
#include "airfilm/scenario.hpp"

namespace airfilm::verify {

namespace {

Check within(std::string name, double expected, double measured, double tol, std::string note) {
  Check c;
  c.name = std::move(name);
  c.expected = expected;
  c.measured = measured;
  c.tolerance = tol;
  c.note = std::move(note);
  c.pass = std::isfinite(measured) && std::abs(measured - expected) <= tol;
  return c;
}

Check at_least(std::string name, double expected, double measured, std::string note) {
  Check c;
  c.name = std::move(name);
  c.expected = expected;
  c.measured = measured;
  c.at_least = true;
  c.note = std::move(note);
  c.pass = std::isfinite(measured) && measured >= expected;
  return c;
}

Check advisory(Check c) {
  c.advisory = true;
  return c;
}

Check from_preset(const std::string& name, const sim::CheckLine& line) {
  Check c;
  c.name = name;
  c.expected = line.expected;
  c.measured = line.measured;
  c.tolerance = line.tolerance;
  c.at_least = line.kind == sim::CheckKind::at_least;
  c.note = line.note;
  c.pass = line.pass;
  return c;
}

const sim::CheckLine& preset_check(const sim::PresetRun& run, const std::string& name) {
  for (const sim::CheckLine& c : run.checks)
    if (c.name == name) return c;
  throw std::logic_error("preset check '" + name + "' missing");
}

// ---------------------------------------------------------------- flow model

std::vector<Check> flow_checks() {
  std::vector<Check> out;
  out.push_back(within("flow.on_axis_max", 1.0, flow::surface_velocity_ratio(0.0, 0.015), 1e-15,
                       "profile maximum sits on the inlet axis"));
  out.push_back(within("flow.half_ratio_at_thickness", 0.5,
                       flow::surface_velocity_ratio(0.015, 0.015), 1e-15,
                       "x = H halves the surface speed"));

  std::mt19937_64 rng(0x5eedf10au);
  std::uniform_real_distribution<double> ux(-0.25, 0.25);
  std::uniform_real_distribution<double> uh(0.003, 0.120);
  std::uniform_real_distribution<double> ur(1.0, 100.0);
  std::uniform_real_distribution<double> uv(0.0, 10.0);

  double worst_comp = 0.0;
  double worst_inv = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = ux(rng);
    const double h = uh(rng);
    const double a = flow::surface_velocity_ratio(x, h);
    const double b = flow::envelope_velocity(std::sqrt(h * h + x * x), h, 1.0);
    worst_comp = std::max(worst_comp, std::abs(a - b) / b);

    const double r0 = uh(rng);
    const double r = r0 * ur(rng);
    const double v0 = uv(rng);
    const double v = flow::envelope_velocity(r, r0, v0);
    const double lhs = v * r * r;
    const double rhs = v0 * r0 * r0;
    worst_inv = std::max(worst_inv, std::abs(lhs - rhs) / (rhs + 1e-300));
  }
  out.push_back(within("flow.envelope_composition", 0.0, worst_comp, 1e-12,
                       "surface profile equals the envelope form, 1e4 samples"));
  out.push_back(within("flow.inverse_square_invariant", 0.0, worst_inv, 1e-12,
                       "v*r^2 preserved across envelopes, 1e4 samples"));

  const auto curve = flow::flow_curve(0.015, 0.2, 1e-3);
  int violations = 0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].ratio >= curve[i - 1].ratio) ++violations;
  out.push_back(within("flow.curve_monotone", 0.0, violations, 0.0,
                       "surface profile strictly decreases away from the inlet"));

  const double h = 0.015;
  const double p = 101325.0;
  double worst_flux = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = 0.002 * i;
    const double r = std::sqrt(h * h + x * x);
    const double prod = flow::mass_flux_product(p, flow::surface_velocity_ratio(x, h), r);
    const double ref = p * h * h;
    worst_flux = std::max(worst_flux, std::abs(prod - ref) / ref);
  }
  out.push_back(within("flow.flux_product_invariant", 0.0, worst_flux, 1e-12,
                       "pressure-flow product constant along the surface profile"));
  return out;
}

// ------------------------------------------------------------ contact forces

std::vector<Check> force_checks() {
  std::vector<Check> out;
  out.push_back(within("force.naive_contact", 4.0e5, flow::contact_force(0.4e6, 1.0), 0.0,
                       "0.4 MPa over a 1 m2 lower plane"));

  flow::PorousPlate generic;
  generic.plan_width_m = 2.0;
  generic.plan_depth_m = 2.0;
  generic.thickness_m = 0.030;
  generic.hole_spacing_m = 0.010;
  generic.hole_diameter_m = 0.002;
  const flow::ForceReduction fr = flow::inlet_force_reduction(generic, flow::InletState{});
  out.push_back(at_least("force.inlet_reduction_ratio", 10.0, fr.ratio,
                         "point-inlet feed versus full-plane contact"));
  return out;
}

// -------------------------------------------------- capacity, covering, design

std::vector<Check> design_checks() {
  std::vector<Check> out;

  design::GlassPuck glass;
  glass.shape = design::GlassShape::circle;
  glass.size_m = 0.080;
  out.push_back(within("capacity.glass_80mm", 100.0, design::load_capacity(glass, 20e3), 5.0,
                       "measured capacity of the 80 mm puck at 0.02 MPa"));

  const design::CoverRange cover = design::min_max_covered_holes(glass, 0.030);
  out.push_back(within("covering.min_holes", 4.0, cover.min_holes, 0.0,
                       "worst glass position over a 30 mm grid"));
  out.push_back(advisory(within("covering.max_holes", 7.0, cover.max_holes, 0.0,
                                "best glass position; reported, not asserted")));

  design::RobotSpec ubot;
  ubot.footprint_side_m = 0.092;
  ubot.module_mass_kg = 1.0;
  ubot.module_count = 1;
  ubot.workspace_width_m = 1.0;
  ubot.workspace_depth_m = 1.0;

  out.push_back(within("design.glass_diameter", 0.080, design::size_glass(ubot).size_m, 1e-12,
                       "sizing rule on the 92 mm module"));
  out.push_back(at_least("design.spacing_feasible", 0.030, design::max_hole_spacing(glass),
                         "30 mm pitch admissible for the 80 mm puck"));

  const design::PlatformDesign d = design::design_platform(ubot, design::DesignMode::targeted);
  out.push_back(within("design.thickness", 0.030, d.plate.thickness_m, 1e-12,
                       "30 mm plate for the targeted build"));
  out.push_back(at_least("design.capacity_margin", 0.0,
                         d.estimated_capacity_n - d.required_load_n,
                         "capacity covers robot and glass weight"));
  return out;
}

// ----------------------------------------------------------------- sim presets

std::vector<Check> glide_checks() {
  std::vector<Check> out;
  sim::PresetParams params;
  const sim::PresetRun run = sim::run_preset(sim::Preset::film_boundary_glide, params);
  out.push_back(from_preset("glide.speed_constancy", preset_check(run, "glide_speed_constancy")));
  out.push_back(from_preset("glide.stop_distance", preset_check(run, "stop_distance")));

  const double exact = preset_check(run, "stop_distance").expected;
  const double err_full = std::abs(preset_check(run, "stop_distance").measured - exact);
  sim::PresetParams half = params;
  half.dt_s = 0.5e-4;
  const sim::PresetRun run_half = sim::run_preset(sim::Preset::film_boundary_glide, half);
  const double err_half = std::abs(preset_check(run_half, "stop_distance").measured - exact);
  out.push_back(within("glide.convergence_order", 0.5, err_half / err_full, 0.1,
                       "halving dt halves the stopping-distance error"));
  return out;
}

std::vector<Check> rotation_checks() {
  std::vector<Check> out;
  const sim::PresetRun floating =
      sim::run_preset(sim::Preset::self_rotation_floating, sim::PresetParams{});
  out.push_back(from_preset("rotation.upper_half", preset_check(floating, "upper_rotation")));
  out.push_back(from_preset("rotation.lower_half", preset_check(floating, "lower_rotation")));
  out.push_back(from_preset("rotation.conservation_angular_momentum",
                            preset_check(floating, "angular_momentum_max")));

  const sim::PresetRun pinned =
      sim::run_preset(sim::Preset::self_rotation_friction, sim::PresetParams{});
  out.push_back(from_preset("rotation.pinned_lower", preset_check(pinned, "lower_rotation")));
  out.push_back(from_preset("rotation.pinned_upper_sweep", preset_check(pinned, "upper_rotation")));
  return out;
}

std::vector<Check> couple_checks() {
  std::vector<Check> out;
  const sim::PresetRun run = sim::run_preset(sim::Preset::external_couple, sim::PresetParams{});
  out.push_back(from_preset("couple.spin_after", preset_check(run, "spin_after_couple")));
  out.push_back(from_preset("couple.spin_constancy", preset_check(run, "spin_constancy")));
  out.push_back(from_preset("couple.hold_steps", preset_check(run, "hold_steps")));
  return out;
}

std::vector<Check> separation_checks() {
  std::vector<Check> out;
  const sim::PresetRun run = sim::run_preset(sim::Preset::magnet_separation, sim::PresetParams{});
  out.push_back(from_preset("separation.speed_left", preset_check(run, "speed_left")));
  out.push_back(from_preset("separation.speed_right", preset_check(run, "speed_right")));
  out.push_back(
      from_preset("separation.antisymmetry", preset_check(run, "velocity_antisymmetry")));
  out.push_back(
      from_preset("separation.conservation_momentum", preset_check(run, "momentum_max")));
  out.push_back(from_preset("separation.edge_arrival", preset_check(run, "edge_arrival_spread")));
  return out;
}

// --------------------------------------------- determinism & mirror symmetry

std::string trajectory_bytes(const sim::Trajectory& traj) {
  std::ostringstream os;
  io::write_trajectory_csv(os, traj);
  return os.str();
}

std::vector<Check> determinism_checks() {
  std::vector<Check> out;
  const sim::PresetRun a = sim::run_preset(sim::Preset::magnet_separation, sim::PresetParams{});
  const sim::PresetRun b = sim::run_preset(sim::Preset::magnet_separation, sim::PresetParams{});
  const int mismatch = trajectory_bytes(a.trajectory) == trajectory_bytes(b.trajectory) ? 0 : 1;
  out.push_back(within("sim.determinism", 0.0, mismatch, 0.0,
                       "identical runs produce byte-identical trajectories"));
  return out;
}

sim::Scenario mirror_case() {
  sim::Scenario sc;
  sc.name = "mirror_case";
  sc.dt_s = 1e-3;
  sc.t_end_s = 3.0;
  sc.output_interval_s = 0.05;
  sc.map.bounds = {-0.4, -0.4, 0.4, 0.4};
  sc.map.regions.push_back({Rect{0.05, -0.4, 0.4, 0.4}, false, 0.15});

  sim::Body2D a;
  a.id = "a";
  a.mass_kg = 0.5;
  a.inertia_kg_m2 = 1e-3;
  a.pos = {-0.10, 0.02};
  a.vel = {0.05, 0.01};
  a.footprint_radius_m = 0.03;
  sim::Body2D b = a;
  b.id = "b";
  b.mass_kg = 0.8;
  b.pos = {0.02, -0.03};
  b.vel = {-0.02, 0.0};
  sim::Body2D mu = a;
  mu.id = "mu";
  mu.mass_kg = 0.4;
  mu.pos = {0.15, 0.10};
  mu.vel = {0.0, 0.0};
  sim::Body2D ml = mu;
  ml.id = "ml";
  sc.bodies = {a, b, mu, ml};

  sim::JointedModule mod;
  mod.id = "mod";
  mod.upper_id = "mu";
  mod.lower_id = "ml";
  mod.pin_torque_nm = 0.05;
  mod.joint_torque = {{0.0, 1.0, 0.002}};
  sc.modules.push_back(std::move(mod));

  sim::MagnetLink link;
  link.id = "link";
  link.body_a = "a";
  link.body_b = "b";
  link.state = sim::MagnetState::attract;
  link.model.kind = sim::MagnetModelKind::impulse;
  link.model.impulse_kg_m_s = 0.005;
  sc.links.push_back(std::move(link));
  sc.events.push_back({0.5, sim::EventKind::magnet_release, "link"});

  sc.external_torques.push_back({"a", {{0.0, 1.0, 0.003}}});
  return sc;
}

sim::Scenario mirror_about_y(sim::Scenario sc) {
  for (sim::Body2D& b : sc.bodies) {
    b.pos.x = -b.pos.x;
    b.vel.x = -b.vel.x;
    b.theta_rad = -b.theta_rad;
    b.omega_rad_s = -b.omega_rad_s;
  }
  for (sim::JointedModule& m : sc.modules)
    for (sim::TorqueSegment& s : m.joint_torque) s.torque_nm = -s.torque_nm;
  for (sim::BodyTorque& bt : sc.external_torques)
    for (sim::TorqueSegment& s : bt.profile) s.torque_nm = -s.torque_nm;
  const Rect bounds = sc.map.bounds;
  sc.map.bounds = {-bounds.x_max, bounds.y_min, -bounds.x_min, bounds.y_max};
  for (sim::FrictionRegion& r : sc.map.regions)
    r.rect = {-r.rect.x_max, r.rect.y_min, -r.rect.x_min, r.rect.y_max};
  return sc;
}

std::vector<Check> mirror_checks() {
  std::vector<Check> out;
  const sim::Scenario base = mirror_case();
  const sim::Trajectory t0 = sim::simulate(base);
  const sim::Trajectory t1 = sim::simulate(mirror_about_y(base));

  double worst = 0.0;
  if (t0.samples.size() != t1.samples.size()) {
    worst = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t k = 0; k < t0.samples.size(); ++k) {
      for (std::size_t i = 0; i < t0.samples[k].bodies.size(); ++i) {
        const sim::Body2D& p = t0.samples[k].bodies[i];
        const sim::Body2D& q = t1.samples[k].bodies[i];
        worst = std::max({worst, std::abs(q.pos.x + p.pos.x), std::abs(q.pos.y - p.pos.y),
                          std::abs(q.theta_rad + p.theta_rad), std::abs(q.vel.x + p.vel.x),
                          std::abs(q.vel.y - p.vel.y), std::abs(q.omega_rad_s + p.omega_rad_s)});
      }
    }
  }
  out.push_back(within("sim.mirror_symmetry", 0.0, worst, 1e-12,
                       "reflected scenario produces the reflected trajectory"));
  return out;
}

// ------------------------------------------------------------------- oracles

int brute_count(Vec2 center, const design::GlassPuck& glass, double s) {
  const double half = 0.5 * glass.size_m;
  const long i_lo = static_cast<long>(std::floor((center.x - half) / s)) - 2;
  const long i_hi = static_cast<long>(std::ceil((center.x + half) / s)) + 2;
  const long j_lo = static_cast<long>(std::floor((center.y - half) / s)) - 2;
  const long j_hi = static_cast<long>(std::ceil((center.y + half) / s)) + 2;
  int n = 0;
  for (long i = i_lo; i <= i_hi; ++i) {
    for (long j = j_lo; j <= j_hi; ++j) {
      const double dx = i * s - center.x;
      const double dy = j * s - center.y;
      if (glass.shape == design::GlassShape::circle) {
        if (dx * dx + dy * dy <= half * half) ++n;
      } else {
        if (std::abs(dx) <= half && std::abs(dy) <= half) ++n;
      }
    }
  }
  return n;
}

std::vector<Check> oracle_checks() {
  std::vector<Check> out;
  std::mt19937_64 rng(0x0c0ffee5u);
  std::uniform_real_distribution<double> us(0.005, 0.05);
  std::uniform_real_distribution<double> ud(0.5, 6.0);
  std::uniform_real_distribution<double> uc(-10.0, 10.0);

  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const double s = us(rng);
    design::GlassPuck glass;
    glass.shape = (i % 4 == 0) ? design::GlassShape::square : design::GlassShape::circle;
    glass.size_m = ud(rng) * s;
    const Vec2 center{uc(rng) * s, uc(rng) * s};
    if (design::count_holes_under_glass(center, glass, s) != brute_count(center, glass, s))
      ++mismatches;
  }
  out.push_back(within("oracle.covering_brute_force", 0.0, mismatches, 0.0,
                       "fast covering count versus exhaustive enumeration, 1000 cases"));

  std::uniform_real_distribution<double> up(0.05, 2.0);
  int unit_mismatches = 0;
  for (int i = 0; i < 100; ++i) {
    flow::PorousPlate plate;
    plate.plan_width_m = up(rng);
    plate.plan_depth_m = up(rng);
    plate.hole_spacing_m = us(rng);
    plate.hole_diameter_m = 0.4 * plate.hole_spacing_m;
    const auto units = design::supply_unit_layout(plate);
    const long expected = static_cast<long>((plate.holes_x() + 1) / 2) *
                          static_cast<long>((plate.holes_y() + 1) / 2);
    if (static_cast<long>(units.size()) != expected) ++unit_mismatches;
  }
  out.push_back(within("oracle.unit_count_formula", 0.0, unit_mismatches, 0.0,
                       "unit layout count versus ceil(nx/2)*ceil(ny/2), 100 grids"));
  return out;
}

using Group = std::vector<Check> (*)();

struct GroupEntry {
  const char* names[8];  // representative name prefixes for filtering
  Group runner;
};

bool group_matches(const GroupEntry& g, const std::string& only) {
  if (only.empty()) return true;
  for (const char* n : g.names) {
    if (n == nullptr) break;
    if (std::string(n).find(only) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

Report run_checks(const std::string& only) {
  static const GroupEntry groups[] = {
      {{"flow.on_axis_max", "flow.half_ratio_at_thickness", "flow.envelope_composition",
        "flow.inverse_square_invariant", "flow.curve_monotone", "flow.flux_product_invariant",
        nullptr},
       flow_checks},
      {{"force.naive_contact", "force.inlet_reduction_ratio", nullptr}, force_checks},
      {{"capacity.glass_80mm", "covering.min_holes", "covering.max_holes",
        "design.glass_diameter", "design.spacing_feasible", "design.thickness",
        "design.capacity_margin", nullptr},
       design_checks},
      {{"glide.speed_constancy", "glide.stop_distance", "glide.convergence_order", nullptr},
       glide_checks},
      {{"rotation.upper_half", "rotation.lower_half", "rotation.conservation_angular_momentum",
        "rotation.pinned_lower", "rotation.pinned_upper_sweep", nullptr},
       rotation_checks},
      {{"couple.spin_after", "couple.spin_constancy", "couple.hold_steps", nullptr},
       couple_checks},
      {{"separation.speed_left", "separation.speed_right", "separation.antisymmetry",
        "separation.conservation_momentum", "separation.edge_arrival", nullptr},
       separation_checks},
      {{"sim.determinism", nullptr}, determinism_checks},
      {{"sim.mirror_symmetry", nullptr}, mirror_checks},
      {{"oracle.covering_brute_force", "oracle.unit_count_formula", nullptr}, oracle_checks},
  };

  Report report;
  for (const GroupEntry& g : groups) {
    if (!group_matches(g, only)) continue;
    for (Check& c : g.runner()) {
      if (!only.empty() && c.name.find(only) == std::string::npos) continue;
      report.checks.push_back(std::move(c));
    }
  }
  std::sort(report.checks.begin(), report.checks.end(),
            [](const Check& a, const Check& b) { return a.name < b.name; });
  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const Check& c) { return c.advisory || c.pass; });
  return report;
}

std::string report_table(const Report& report) {
  std::ostringstream os;
  std::size_t width = 4;
  for (const Check& c : report.checks) width = std::max(width, c.name.size());

  char buf[64];
  auto fmt = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };

  for (const Check& c : report.checks) {
    const char* status = c.advisory ? (c.pass ? "info" : "FLAG") : (c.pass ? "pass" : "FAIL");
    os << status << "  " << c.name;
    os << std::string(width - c.name.size() + 2, ' ');
    os << "expected " << (c.at_least ? ">= " : "") << fmt(c.expected);
    if (!c.at_least && c.tolerance > 0.0) os << " (tol " << fmt(c.tolerance) << ")";
    os << ", measured " << fmt(c.measured);
    if (!c.note.empty()) os << "  [" << c.note << "]";
    os << '\n';
  }
  os << (report.all_pass ? "all checks passed" : "CHECKS FAILED") << " ("
     << report.checks.size() << " run)\n";
  return os.str();
}

std::string report_json(const Report& report) {
  nlohmann::json j;
  j["all_pass"] = report.all_pass;
  j["checks"] = nlohmann::json::array();
  for (const Check& c : report.checks)
    j["checks"].push_back({{"name", c.name},
                           {"note", c.note},
                           {"expected", c.expected},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"comparison", c.at_least ? "at_least" : "within"},
                           {"advisory", c.advisory},
                           {"pass", c.pass}});
  return j.dump(2) + "\n";
}

}  // namespace airfilm::verify

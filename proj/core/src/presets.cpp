#include "airfilm/presets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace airfilm::sim {

namespace {

CheckLine within(std::string name, double expected, double measured, double tol, std::string note) {
  CheckLine c;
  c.name = std::move(name);
  c.expected = expected;
  c.measured = measured;
  c.tolerance = tol;
  c.kind = CheckKind::within;
  c.pass = std::isfinite(measured) && std::abs(measured - expected) <= tol;
  c.note = std::move(note);
  return c;
}

CheckLine at_least(std::string name, double expected, double measured, std::string note) {
  CheckLine c;
  c.name = std::move(name);
  c.expected = expected;
  c.measured = measured;
  c.tolerance = 0.0;
  c.kind = CheckKind::at_least;
  c.pass = std::isfinite(measured) && measured >= expected;
  c.note = std::move(note);
  return c;
}

Body2D make_body(std::string id, double mass, double inertia, Vec2 pos, Vec2 vel,
                 double footprint) {
  Body2D b;
  b.id = std::move(id);
  b.mass_kg = mass;
  b.inertia_kg_m2 = inertia;
  b.pos = pos;
  b.vel = vel;
  b.footprint_radius_m = footprint;
  return b;
}

// Module with a bang-bang joint torque profile sized so the driven half
// sweeps exactly half_sweep under semi-implicit Euler: a constant angular
// acceleration a over n steps then -a over n steps turns the half by
// a*(n*dt)^2, independent of how the remainder distributes over the phases.
struct RotationSetup {
  Scenario scenario;
  long settle_steps = 0;
};

RotationSetup rotation_scenario(const PresetParams& params, bool friction_variant) {
  const double dt = params.dt_s.value_or(1e-3);
  const long n_half = std::max<long>(1, std::llround(0.25 / dt));
  const long n_settle = std::max<long>(1, std::llround(0.5 / dt));
  const double phase = static_cast<double>(n_half) * dt;

  // Floating: both halves share the sweep. Friction: the pinned lower half
  // leaves the whole sweep to the upper one.
  const double upper_target =
      friction_variant ? params.joint_sweep_rad : 0.5 * params.joint_sweep_rad;
  const double tau = params.half_inertia_kg_m2 * upper_target / (phase * phase);

  Scenario sc;
  sc.name = friction_variant ? "self_rotation_friction" : "self_rotation_floating";
  sc.dt_s = dt;
  sc.t_end_s = static_cast<double>(2 * n_half + n_settle) * dt;
  sc.output_interval_s = std::max(dt, 0.01);
  sc.map.bounds = {-1.0, -1.0, 1.0, 1.0};
  sc.map.default_pressurized = true;

  const Vec2 pos = friction_variant ? Vec2{0.5, 0.0} : Vec2{0.0, 0.0};
  if (friction_variant) {
    sc.map.regions.push_back({Rect{0.0, -1.0, 1.0, 1.0}, false, 0.2});
  }

  sc.bodies.push_back(
      make_body("upper", params.half_mass_kg, params.half_inertia_kg_m2, pos, {0, 0}, 0.046));
  sc.bodies.push_back(
      make_body("lower", params.half_mass_kg, params.half_inertia_kg_m2, pos, {0, 0}, 0.046));

  JointedModule m;
  m.id = "module";
  m.upper_id = "upper";
  m.lower_id = "lower";
  m.pin_torque_nm = 10.0 * tau;
  m.joint_torque = {{0.0, phase, tau}, {phase, 2.0 * phase, -tau}};
  sc.modules.push_back(std::move(m));

  if (params.t_end_s) sc.t_end_s = *params.t_end_s;
  return {std::move(sc), n_settle};
}

PresetRun run_rotation(const PresetParams& params, bool friction_variant) {
  PresetRun run;
  auto setup = rotation_scenario(params, friction_variant);
  run.scenario = std::move(setup.scenario);

  double max_abs_l = 0.0;
  const StepObserver observer = [&](const SimState& s) {
    max_abs_l = std::max(max_abs_l, std::abs(total_angular_momentum(s)));
  };
  run.trajectory = simulate(run.scenario, observer);

  const SimState& first = run.trajectory.samples.front();
  const SimState& last = run.trajectory.samples.back();
  const double du = last.body("upper").theta_rad - first.body("upper").theta_rad;
  const double dl = last.body("lower").theta_rad - first.body("lower").theta_rad;
  const double sweep = params.joint_sweep_rad;

  if (friction_variant) {
    run.checks.push_back(within("upper_rotation", sweep, du, 1e-6, "pinned-rotor kinematics"));
    run.checks.push_back(within("lower_rotation", 0.0, dl, 1e-9, "static grip on the plate"));
    const double drift = (last.body("upper").pos - first.body("upper").pos).norm();
    run.checks.push_back(within("translation_drift", 0.0, drift, 1e-12, "no driving force"));
  } else {
    run.checks.push_back(
        within("upper_rotation", 0.5 * sweep, du, 1e-6, "angular momentum balance"));
    run.checks.push_back(
        within("lower_rotation", -0.5 * sweep, dl, 1e-6, "angular momentum balance"));
    run.checks.push_back(
        within("joint_sweep", sweep, du - dl, 1e-6, "commanded joint excursion"));
    run.checks.push_back(
        within("angular_momentum_max", 0.0, max_abs_l, 1e-9, "internal torques only"));
    run.checks.push_back(within("orientation_mean_change", 0.0, 0.5 * (du + dl), 1e-9,
                                "equal-inertia halves cancel"));
  }
  run.all_pass = std::all_of(run.checks.begin(), run.checks.end(),
                             [](const CheckLine& c) { return c.pass; });
  return run;
}

PresetRun run_external_couple(const PresetParams& params) {
  const double dt = params.dt_s.value_or(1e-3);
  const long n_couple = std::max<long>(1, std::llround(params.couple_duration_s / dt));
  const long n_hold_default = 100000;
  const double couple_end = static_cast<double>(n_couple) * dt;

  PresetRun run;
  Scenario& sc = run.scenario;
  sc.name = "external_couple";
  sc.dt_s = dt;
  sc.t_end_s = params.t_end_s.value_or(static_cast<double>(n_couple + n_hold_default) * dt);
  sc.output_interval_s = std::max(dt, 1.0);
  sc.map.bounds = {-1.0, -1.0, 1.0, 1.0};
  sc.bodies.push_back(make_body("rotor", 0.5, params.body_inertia_kg_m2, {0, 0}, {0, 0}, 0.05));
  sc.external_torques.push_back({"rotor", {{0.0, couple_end, params.couple_nm}}});

  // Track omega from the step that ends exactly at couple_end, so every
  // post-couple step contributes one constancy comparison.
  double max_step_domega = 0.0;
  long hold_steps = 0;
  double prev_omega = 0.0;
  bool have_prev = false;
  const double track_from = couple_end - 0.5 * dt;
  const StepObserver observer = [&](const SimState& s) {
    if (s.time_s > track_from) {
      if (have_prev) {
        max_step_domega = std::max(max_step_domega, std::abs(s.body("rotor").omega_rad_s - prev_omega));
        ++hold_steps;
      }
      prev_omega = s.body("rotor").omega_rad_s;
      have_prev = true;
    }
  };
  run.trajectory = simulate(sc, observer);

  const double omega_final = run.trajectory.samples.back().body("rotor").omega_rad_s;
  const double omega_expected = params.couple_nm * couple_end / params.body_inertia_kg_m2;
  run.checks.push_back(
      within("spin_after_couple", omega_expected, omega_final, 1e-9, "omega = tau*T/I"));
  run.checks.push_back(
      within("spin_constancy", 0.0, max_step_domega, 1e-12, "max per-step |d omega| after couple"));
  run.checks.push_back(at_least("hold_steps", 1e5, static_cast<double>(hold_steps),
                                "steps observed after the couple ended"));
  run.all_pass = std::all_of(run.checks.begin(), run.checks.end(),
                             [](const CheckLine& c) { return c.pass; });
  return run;
}

PresetRun run_magnet_separation(const PresetParams& params) {
  const double dt = params.dt_s.value_or(1e-3);
  const double release_time = 1.0;

  PresetRun run;
  Scenario& sc = run.scenario;
  sc.name = "magnet_separation";
  sc.dt_s = dt;
  sc.t_end_s = params.t_end_s.value_or(20.0);
  sc.output_interval_s = std::max(dt, 0.01);
  sc.map.bounds = {-0.3, -0.3, 0.3, 0.3};
  sc.bodies.push_back(make_body("left", params.body_mass_kg, 1e-3, {-0.05, 0.0}, {0, 0}, 0.05));
  sc.bodies.push_back(make_body("right", params.body_mass_kg, 1e-3, {0.05, 0.0}, {0, 0}, 0.05));

  MagnetLink link;
  link.id = "magnets";
  link.body_a = "left";
  link.body_b = "right";
  link.state = MagnetState::attract;
  link.model.kind = MagnetModelKind::impulse;
  link.model.impulse_kg_m_s = params.impulse_kg_m_s;
  sc.links.push_back(std::move(link));
  sc.events.push_back({release_time, EventKind::magnet_release, "magnets"});

  double max_abs_p = 0.0;
  const StepObserver observer = [&](const SimState& s) {
    max_abs_p = std::max(max_abs_p, total_momentum(s).norm());
  };
  run.trajectory = simulate(sc, observer);

  const SimState& last = run.trajectory.samples.back();
  const Vec2 va = last.body("left").vel;
  const Vec2 vb = last.body("right").vel;
  const double expected_speed = params.impulse_kg_m_s / params.body_mass_kg;
  run.checks.push_back(
      within("speed_left", expected_speed, va.norm(), 1e-12, "impulse over mass"));
  run.checks.push_back(
      within("speed_right", expected_speed, vb.norm(), 1e-12, "impulse over mass"));
  run.checks.push_back(
      within("velocity_antisymmetry", 0.0, (va + vb).norm(), 1e-12, "equal and opposite"));
  run.checks.push_back(
      within("momentum_max", 0.0, max_abs_p, 1e-9, "no external forces"));

  const auto arrivals = edge_arrival_times(run.trajectory, sc.map);
  double spread = std::numeric_limits<double>::quiet_NaN();
  if (arrivals.size() == 2 && arrivals[0].time_s && arrivals[1].time_s)
    spread = std::abs(*arrivals[0].time_s - *arrivals[1].time_s);
  run.checks.push_back(within("edge_arrival_spread", 0.0, spread, sc.output_interval_s,
                              "symmetric start reaches both edges together"));
  run.all_pass = std::all_of(run.checks.begin(), run.checks.end(),
                             [](const CheckLine& c) { return c.pass; });
  return run;
}

PresetRun run_boundary_glide(const PresetParams& params) {
  const double dt = params.dt_s.value_or(1e-4);
  const double v0 = params.entry_speed_m_s;

  PresetRun run;
  Scenario& sc = run.scenario;
  sc.name = "film_boundary_glide";
  sc.dt_s = dt;
  sc.t_end_s = params.t_end_s.value_or(3.0);
  sc.output_interval_s = std::max(dt, 0.01);
  sc.map.bounds = {-0.2, -0.1, 0.4, 0.1};
  sc.map.default_pressurized = true;
  sc.map.regions.push_back({Rect{0.0, -0.1, 0.4, 0.1}, false, params.mu});

  // The glider demonstrates the boundary crossing; the stopper starts exactly
  // on the friction edge so its travel measures the stopping distance alone.
  sc.bodies.push_back(make_body("glider", 0.5, 1e-3, {-0.15, 0.0}, {v0, 0.0}, 0.04));
  sc.bodies.push_back(make_body("stopper", 0.5, 1e-3, {0.0, 0.0}, {v0, 0.0}, 0.04));

  double max_glide_dspeed = 0.0;
  double prev_speed = v0;
  double prev_x = -0.15;
  const StepObserver observer = [&](const SimState& s) {
    const Body2D& g = s.body("glider");
    if (prev_x < 0.0 && g.pos.x < 0.0)
      max_glide_dspeed = std::max(max_glide_dspeed, std::abs(g.vel.norm() - prev_speed));
    prev_speed = g.vel.norm();
    prev_x = g.pos.x;
  };
  run.trajectory = simulate(sc, observer);

  const SimState& last = run.trajectory.samples.back();
  const double stop_distance = last.body("stopper").pos.x;  // friction edge is x = 0
  const double expected =
      v0 * v0 / (2.0 * params.mu * run.scenario.params.gravity_m_s2);
  run.checks.push_back(within("glide_speed_constancy", 0.0, max_glide_dspeed, 1e-9,
                              "per-step speed change on the film"));
  run.checks.push_back(within("stop_distance", expected, stop_distance, 0.01 * expected,
                              "uniform deceleration v0^2/(2*mu*g)"));
  run.checks.push_back(
      within("glider_final_speed", 0.0, last.body("glider").vel.norm(), 1e-9, "stops off film"));
  run.all_pass = std::all_of(run.checks.begin(), run.checks.end(),
                             [](const CheckLine& c) { return c.pass; });
  return run;
}

}  // namespace

std::optional<Preset> preset_from_name(std::string_view name) {
  if (name == "self_rotation_floating") return Preset::self_rotation_floating;
  if (name == "self_rotation_friction") return Preset::self_rotation_friction;
  if (name == "external_couple") return Preset::external_couple;
  if (name == "magnet_separation") return Preset::magnet_separation;
  if (name == "film_boundary_glide") return Preset::film_boundary_glide;
  return std::nullopt;
}

const char* preset_name(Preset preset) {
  switch (preset) {
    case Preset::self_rotation_floating: return "self_rotation_floating";
    case Preset::self_rotation_friction: return "self_rotation_friction";
    case Preset::external_couple: return "external_couple";
    case Preset::magnet_separation: return "magnet_separation";
    case Preset::film_boundary_glide: return "film_boundary_glide";
  }
  return "unknown";
}

std::vector<std::string> preset_names() {
  return {"self_rotation_floating", "self_rotation_friction", "external_couple",
          "magnet_separation", "film_boundary_glide"};
}

PresetRun run_preset(Preset preset, const PresetParams& params) {
  switch (preset) {
    case Preset::self_rotation_floating: return run_rotation(params, false);
    case Preset::self_rotation_friction: return run_rotation(params, true);
    case Preset::external_couple: return run_external_couple(params);
    case Preset::magnet_separation: return run_magnet_separation(params);
    case Preset::film_boundary_glide: return run_boundary_glide(params);
  }
  throw std::domain_error("unknown preset");
}

}  // namespace airfilm::sim

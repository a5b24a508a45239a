#include <doctest.h>

#include <cmath>
#include <random>

#include "airfilm/film_dynamics.hpp"
#include "airfilm/presets.hpp"
#include "airfilm/scenario.hpp"

using namespace airfilm;
using doctest::Approx;

namespace {

sim::Body2D body(std::string id, double mass, Vec2 pos, Vec2 vel) {
  sim::Body2D b;
  b.id = std::move(id);
  b.mass_kg = mass;
  b.inertia_kg_m2 = 1e-3;
  b.pos = pos;
  b.vel = vel;
  return b;
}

sim::PlatformRegionMap open_film() {
  sim::PlatformRegionMap map;
  map.bounds = {-10.0, -10.0, 10.0, 10.0};
  map.default_pressurized = true;
  return map;
}

sim::PlatformRegionMap rough_floor(double mu) {
  sim::PlatformRegionMap map;
  map.bounds = {-10.0, -10.0, 10.0, 10.0};
  map.default_pressurized = false;
  map.default_mu = mu;
  return map;
}

}  // namespace

TEST_CASE("profile_torque picks the active segment") {
  const sim::TorqueProfile p{{0.0, 1.0, 0.5}, {1.0, 2.0, -0.5}};
  CHECK(sim::profile_torque(p, 0.0) == 0.5);
  CHECK(sim::profile_torque(p, 0.999) == 0.5);
  CHECK(sim::profile_torque(p, 1.0) == -0.5);  // half-open segments
  CHECK(sim::profile_torque(p, 2.0) == 0.0);
  CHECK(sim::profile_torque({}, 0.5) == 0.0);
}

TEST_CASE("region_friction classifies by body center") {
  sim::PlatformRegionMap map = open_film();
  map.regions.push_back({Rect{0.0, -10.0, 10.0, 10.0}, false, 0.2});

  sim::Body2D b = body("b", 1.0, {-0.5, 0.0}, {0, 0});
  auto rs = sim::region_friction(map, b);
  CHECK(rs.frictionless);
  CHECK(rs.mu == 0.0);

  b.pos = {0.5, 0.0};
  rs = sim::region_friction(map, b);
  CHECK_FALSE(rs.frictionless);
  CHECK(rs.mu == Approx(0.2));

  // A body straddling the boundary is classified by its center.
  b.pos = {-1e-9, 0.0};
  b.footprint_radius_m = 0.5;
  CHECK(sim::region_friction(map, b).frictionless);
  b.pos = {0.0, 0.0};  // first matching region wins on the shared edge
  CHECK_FALSE(sim::region_friction(map, b).frictionless);
}

TEST_CASE("step advances a free body and conserves its velocity") {
  sim::SimState s;
  s.bodies.push_back(body("b", 1.0, {0, 0}, {0.1, 0.0}));
  const sim::SimState next = sim::step(s, open_film(), 0.01);
  CHECK(next.bodies[0].pos.x == Approx(0.001).epsilon(1e-15));
  CHECK(next.bodies[0].vel.x == 0.1);
  CHECK(next.time_s == Approx(0.01));
  CHECK_THROWS_AS(sim::step(s, open_film(), 0.0), std::domain_error);
}

TEST_CASE("a body at rest on a rough floor stays exactly at rest") {
  sim::SimState s;
  s.bodies.push_back(body("b", 1.0, {0.25, -0.125}, {0, 0}));
  sim::SimState cur = s;
  for (int i = 0; i < 1000; ++i) cur = sim::step(cur, rough_floor(0.2), 1e-3);
  CHECK(cur.bodies[0].pos.x == 0.25);
  CHECK(cur.bodies[0].pos.y == -0.125);
  CHECK(cur.bodies[0].vel.x == 0.0);
  CHECK(cur.bodies[0].vel.y == 0.0);
}

TEST_CASE("Coulomb friction stops a sliding body at the closed-form distance") {
  const double v0 = 0.1;
  const double mu = 0.2;
  const double g = 9.81;
  sim::SimState s;
  s.bodies.push_back(body("b", 0.7, {0, 0}, {v0, 0.0}));

  const double dt = 1e-4;
  sim::SimState cur = s;
  int steps_to_stop = 0;
  for (int i = 0; i < 20000 && cur.bodies[0].vel.norm() > 0.0; ++i) {
    cur = sim::step(cur, rough_floor(mu), dt);
    ++steps_to_stop;
  }
  const double d_exact = v0 * v0 / (2.0 * mu * g);       // 2.548e-3 m
  const double t_exact = v0 / (mu * g);                  // 5.097e-2 s
  CHECK(cur.bodies[0].vel.norm() == 0.0);
  CHECK(std::abs(cur.bodies[0].pos.x - d_exact) <= 0.01 * d_exact);
  CHECK(std::abs(steps_to_stop * dt - t_exact) <= 0.01 * t_exact);

  // Mass independence of the kinematics.
  sim::SimState heavy = s;
  heavy.bodies[0].mass_kg = 7.0;
  sim::SimState cur2 = heavy;
  for (int i = 0; i < steps_to_stop; ++i) cur2 = sim::step(cur2, rough_floor(mu), dt);
  CHECK(cur2.bodies[0].pos.x == cur.bodies[0].pos.x);
}

TEST_CASE("step flags non-finite states with the offending body") {
  sim::SimState s;
  s.bodies.push_back(body("ok", 1.0, {0, 0}, {0, 0}));
  s.bodies.push_back(body("broken", 1.0, {0, 0}, {std::nan(""), 0.0}));
  try {
    sim::step(s, open_film(), 1e-3);
    FAIL("expected NumericError");
  } catch (const sim::NumericError& e) {
    CHECK(e.body_id() == "broken");
  }
}

TEST_CASE("momentum and angular momentum accounting") {
  sim::SimState s;
  CHECK(sim::total_momentum(s).norm() == 0.0);
  CHECK(sim::total_angular_momentum(s) == 0.0);

  s.bodies.push_back(body("a", 0.5, {1.0, 0.0}, {0.02, 0.0}));
  s.bodies.push_back(body("b", 0.5, {-1.0, 0.0}, {-0.02, 0.0}));
  CHECK(sim::total_momentum(s).norm() == 0.0);

  // Equal-inertia halves spinning in opposite senses cancel.
  sim::SimState mod;
  mod.bodies.push_back(body("u", 0.5, {0, 0}, {0, 0}));
  mod.bodies.push_back(body("l", 0.5, {0, 0}, {0, 0}));
  mod.bodies[0].omega_rad_s = 3.0;
  mod.bodies[1].omega_rad_s = -3.0;
  CHECK(sim::total_angular_momentum(mod) == 0.0);

  // Origin shift identity: L(o2) = L(o1) - (o2 - o1) x P.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  sim::SimState r;
  for (int i = 0; i < 5; ++i) {
    sim::Body2D b = body("b" + std::to_string(i), 0.3 + i * 0.2, {u(rng), u(rng)}, {u(rng), u(rng)});
    b.omega_rad_s = u(rng);
    r.bodies.push_back(std::move(b));
  }
  const Vec2 o1{u(rng), u(rng)};
  const Vec2 o2{u(rng), u(rng)};
  const double l1 = sim::total_angular_momentum(r, o1);
  const double l2 = sim::total_angular_momentum(r, o2);
  const double expected = l1 - cross(o2 - o1, sim::total_momentum(r));
  CHECK(l2 == Approx(expected).epsilon(1e-12));

  const sim::Diagnostics d = sim::diagnostics(r);
  CHECK(d.kinetic_energy > 0.0);
  CHECK(d.momentum == sim::total_momentum(r));
}

TEST_CASE("apply_magnet_release imparts equal and opposite impulses") {
  sim::SimState s;
  s.bodies.push_back(body("a", 0.5, {-0.05, 0.0}, {0, 0}));
  s.bodies.push_back(body("b", 0.5, {0.05, 0.0}, {0, 0}));
  sim::MagnetLink link;
  link.id = "L";
  link.body_a = "a";
  link.body_b = "b";
  link.state = sim::MagnetState::attract;
  link.model.kind = sim::MagnetModelKind::impulse;
  link.model.impulse_kg_m_s = 0.01;
  s.links.push_back(link);

  SUBCASE("equal masses") {
    const sim::SimState out = sim::apply_magnet_release(s, link);
    CHECK(out.body("a").vel.x == Approx(-0.02).epsilon(1e-15));
    CHECK(out.body("b").vel.x == Approx(0.02).epsilon(1e-15));
    CHECK(sim::total_momentum(out).norm() == 0.0);
    CHECK(out.links[0].state == sim::MagnetState::repel);

    // Releasing again is a no-op.
    const sim::SimState again = sim::apply_magnet_release(out, out.links[0]);
    CHECK(again.body("a").vel.x == out.body("a").vel.x);
  }

  SUBCASE("unequal masses split the impulse by mass") {
    s.bodies[1].mass_kg = 1.0;
    s.links[0] = link;
    const sim::SimState out = sim::apply_magnet_release(s, s.links[0]);
    CHECK(out.body("a").vel.x == Approx(-0.02).epsilon(1e-15));
    CHECK(out.body("b").vel.x == Approx(0.01).epsilon(1e-15));
    CHECK(sim::total_momentum(out).norm() <= 1e-12 * 0.01);
  }

  SUBCASE("off links stay off") {
    s.links[0].state = sim::MagnetState::off;
    const sim::SimState out = sim::apply_magnet_release(s, s.links[0]);
    CHECK(out == s);
  }

  SUBCASE("coincident centers are rejected") {
    s.bodies[1].pos = s.bodies[0].pos;
    CHECK_THROWS_AS(sim::apply_magnet_release(s, s.links[0]), std::domain_error);
  }
}

TEST_CASE("short-range force pair conserves momentum step by step") {
  sim::SimState s;
  s.bodies.push_back(body("a", 0.5, {-0.02, 0.01}, {0, 0}));
  s.bodies.push_back(body("b", 0.8, {0.03, -0.01}, {0, 0}));
  sim::MagnetLink link;
  link.id = "L";
  link.body_a = "a";
  link.body_b = "b";
  link.state = sim::MagnetState::repel;
  link.model.kind = sim::MagnetModelKind::short_range_force;
  link.model.force_n = 0.05;
  link.model.cutoff_m = 0.5;
  s.links.push_back(link);

  sim::SimState cur = s;
  double scale = 1e-12;
  for (int i = 0; i < 500; ++i) {
    const Vec2 p_before = sim::total_momentum(cur);
    cur = sim::step(cur, open_film(), 1e-3);
    const Vec2 p_after = sim::total_momentum(cur);
    for (const sim::Body2D& b : cur.bodies) scale += b.mass_kg * b.vel.norm();
    CHECK((p_after - p_before).norm() <= 1e-12 * scale);
  }
  // Bodies were pushed apart along the line of centers.
  CHECK((cur.body("b").pos - cur.body("a").pos).norm() >
        (s.body("b").pos - s.body("a").pos).norm());
  // Central forces: angular momentum about the origin stays put.
  CHECK(std::abs(sim::total_angular_momentum(cur)) <= 1e-9);

  // The force switches off beyond the cutoff.
  sim::SimState far = s;
  far.bodies[1].pos = {1.0, 0.0};
  const sim::SimState next = sim::step(far, open_film(), 1e-3);
  CHECK(next.body("a").vel.norm() == 0.0);
  CHECK(next.body("b").vel.norm() == 0.0);
}

TEST_CASE("module halves share translation and mirror rotations") {
  sim::Scenario sc;
  sc.name = "joint";
  sc.dt_s = 1e-3;
  sc.t_end_s = 2.0;
  sc.output_interval_s = 0.1;
  sc.map = open_film();
  sc.bodies.push_back(body("u", 0.5, {0.1, 0.2}, {0.01, -0.02}));
  sc.bodies.push_back(body("l", 0.5, {0.1, 0.2}, {0.01, -0.02}));

  sim::JointedModule m;
  m.id = "m";
  m.upper_id = "u";
  m.lower_id = "l";
  // An arbitrary, sign-changing profile.
  m.joint_torque = {{0.0, 0.3, 0.004}, {0.3, 0.9, -0.002}, {1.2, 1.5, 0.001}};
  sc.modules.push_back(m);

  const sim::Trajectory traj = sim::simulate(sc);
  for (const sim::SimState& s : traj.samples) {
    const sim::Body2D& u = s.body("u");
    const sim::Body2D& l = s.body("l");
    CHECK(u.pos == l.pos);
    CHECK(u.vel == l.vel);
    CHECK(std::abs(u.theta_rad + l.theta_rad) <= 1e-9);  // equal inertias cancel
    CHECK(std::abs(u.inertia_kg_m2 * u.omega_rad_s + l.inertia_kg_m2 * l.omega_rad_s) <= 1e-12);
  }
  // Translation never saw a force: uniform drift.
  const sim::Body2D& last = traj.samples.back().body("u");
  CHECK(last.pos.x == Approx(0.1 + 0.01 * sc.t_end_s).epsilon(1e-9));
}

TEST_CASE("pinned lower half holds under the grip torque") {
  sim::SimState s;
  s.bodies.push_back(body("u", 0.5, {0, 0}, {0, 0}));
  s.bodies.push_back(body("l", 0.5, {0, 0}, {0, 0}));
  sim::JointedModule m;
  m.id = "m";
  m.upper_id = "u";
  m.lower_id = "l";
  m.pin_torque_nm = 0.1;
  s.modules.push_back(m);

  sim::StepControls controls;
  controls.joint_torque_nm = {0.05};  // below the grip threshold

  sim::SimState cur = s;
  for (int i = 0; i < 200; ++i) cur = sim::step(cur, rough_floor(0.2), 1e-3, controls);
  CHECK(cur.body("l").theta_rad == 0.0);
  CHECK(cur.body("l").omega_rad_s == 0.0);
  CHECK(cur.body("u").theta_rad > 0.0);

  // On the film the same torque spins both halves.
  cur = s;
  for (int i = 0; i < 200; ++i) cur = sim::step(cur, open_film(), 1e-3, controls);
  CHECK(cur.body("l").theta_rad < 0.0);
}

TEST_CASE("edge_arrival_times") {
  sim::PlatformRegionMap map;
  map.bounds = {-0.3, -0.3, 0.3, 0.3};

  sim::Scenario sc;
  sc.name = "edges";
  sc.dt_s = 1e-3;
  sc.t_end_s = 30.0;
  sc.output_interval_s = 0.01;
  sc.map = map;
  sc.bodies.push_back(body("left", 0.5, {-0.05, 0.0}, {-0.02, 0.0}));
  sc.bodies.push_back(body("right", 0.5, {0.05, 0.0}, {0.02, 0.0}));
  sc.bodies.push_back(body("still", 0.5, {0.0, 0.1}, {0.0, 0.0}));

  const sim::Trajectory traj = sim::simulate(sc);
  const auto arrivals = sim::edge_arrival_times(traj, map);
  REQUIRE(arrivals.size() == 3);
  REQUIRE(arrivals[0].time_s.has_value());
  REQUIRE(arrivals[1].time_s.has_value());
  // Uniform motion oracle: (0.3 - 0.05) / 0.02 = 12.5 s.
  CHECK(*arrivals[0].time_s == Approx(12.5).epsilon(1e-6));
  CHECK(std::abs(*arrivals[0].time_s - *arrivals[1].time_s) <= sc.output_interval_s);
  CHECK_FALSE(arrivals[2].time_s.has_value());

  // A body starting outside the bounds reports time zero.
  sim::Trajectory outside;
  sim::SimState s0;
  s0.bodies.push_back(body("out", 1.0, {1.0, 0.0}, {0, 0}));
  outside.samples.push_back(s0);
  const auto a2 = sim::edge_arrival_times(outside, map);
  REQUIRE(a2.size() == 1);
  CHECK(a2[0].time_s == 0.0);
}

TEST_CASE("simulate is deterministic and leaves an empty scenario unchanged") {
  sim::Scenario sc;
  sc.name = "empty";
  sc.dt_s = 1e-3;
  sc.t_end_s = 1.0;
  sc.output_interval_s = 0.1;
  sc.map = open_film();
  sc.bodies.push_back(body("b", 1.0, {0.5, -0.5}, {0, 0}));

  const sim::Trajectory t1 = sim::simulate(sc);
  const sim::Trajectory t2 = sim::simulate(sc);
  REQUIRE(t1.samples.size() == t2.samples.size());
  for (std::size_t i = 0; i < t1.samples.size(); ++i) {
    CHECK(t1.samples[i] == t2.samples[i]);
    CHECK(t1.samples[i].bodies[0].pos == sc.bodies[0].pos);
    CHECK(t1.samples[i].bodies[0].vel == Vec2{0.0, 0.0});
  }
}

TEST_CASE("presets pass their own checks") {
  for (const std::string& name : sim::preset_names()) {
    CAPTURE(name);
    const auto preset = sim::preset_from_name(name);
    REQUIRE(preset.has_value());
    sim::PresetParams params;
    if (*preset == sim::Preset::external_couple) {
      // Keep the unit-test run short; the full-length hold is exercised by
      // the acceptance suite.
      params.t_end_s = 2.0;
    }
    const sim::PresetRun run = sim::run_preset(*preset, params);
    for (const sim::CheckLine& c : run.checks) {
      CAPTURE(c.name);
      if (*preset == sim::Preset::external_couple && c.name == "hold_steps") continue;
      CHECK(c.pass);
    }
  }
  CHECK_FALSE(sim::preset_from_name("nope").has_value());
}

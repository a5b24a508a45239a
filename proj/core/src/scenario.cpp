#include "airfilm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace airfilm::sim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

void Scenario::validate() const {
  require(dt_s > 0.0, "dt must be > 0");
  require(t_end_s >= 0.0, "t_end must be >= 0");
  require(output_interval_s > 0.0, "output interval must be > 0");
  map.validate();

  std::set<std::string> ids;
  for (const Body2D& b : bodies) {
    require(!b.id.empty(), "body id must not be empty");
    require(ids.insert(b.id).second, "duplicate body id '" + b.id + "'");
    require(b.mass_kg > 0.0, "body '" + b.id + "': mass must be > 0");
    require(b.inertia_kg_m2 > 0.0, "body '" + b.id + "': inertia must be > 0");
    require(b.footprint_radius_m > 0.0, "body '" + b.id + "': footprint radius must be > 0");
  }
  std::set<std::string> used;
  for (const JointedModule& m : modules) {
    require(ids.count(m.upper_id) == 1, "module '" + m.id + "': unknown upper body");
    require(ids.count(m.lower_id) == 1, "module '" + m.id + "': unknown lower body");
    require(m.upper_id != m.lower_id, "module '" + m.id + "': upper and lower must differ");
    require(used.insert(m.upper_id).second && used.insert(m.lower_id).second,
            "module '" + m.id + "': a body may belong to at most one module");
    require(m.pin_torque_nm >= 0.0, "module '" + m.id + "': pin torque must be >= 0");
  }
  std::set<std::string> link_ids;
  for (const MagnetLink& l : links) {
    require(link_ids.insert(l.id).second, "duplicate link id '" + l.id + "'");
    require(ids.count(l.body_a) == 1 && ids.count(l.body_b) == 1,
            "link '" + l.id + "': unknown body reference");
    require(l.body_a != l.body_b, "link '" + l.id + "': bodies must differ");
  }
  for (const Event& e : events) {
    require(e.time_s >= 0.0, "event time must be >= 0");
    require(link_ids.count(e.target) == 1, "event targets unknown link '" + e.target + "'");
  }
  for (const BodyTorque& bt : external_torques)
    require(ids.count(bt.body_id) == 1, "external torque targets unknown body '" + bt.body_id + "'");

  // Module halves share one translation from the start.
  for (const JointedModule& m : modules) {
    const Body2D* u = nullptr;
    const Body2D* l = nullptr;
    for (const Body2D& b : bodies) {
      if (b.id == m.upper_id) u = &b;
      if (b.id == m.lower_id) l = &b;
    }
    require(u->pos == l->pos && u->vel == l->vel,
            "module '" + m.id + "': halves must start with identical translation");
  }
}

SimState Scenario::initial_state() const {
  SimState s;
  s.time_s = 0.0;
  s.bodies = bodies;
  s.modules = modules;
  s.links = links;
  return s;
}

Trajectory simulate(const Scenario& scenario, const StepObserver& observer) {
  scenario.validate();

  SimState state = scenario.initial_state();
  const double dt = scenario.dt_s;
  long n_steps = std::llround(scenario.t_end_s / dt);
  if (static_cast<double>(n_steps) * dt < scenario.t_end_s - 1e-12 * scenario.t_end_s) ++n_steps;
  if (n_steps < 0) n_steps = 0;
  const long out_every = std::max<long>(1, std::llround(scenario.output_interval_s / dt));

  // Events sorted by time, stable in declaration order.
  std::vector<const Event*> pending;
  pending.reserve(scenario.events.size());
  for (const Event& e : scenario.events) pending.push_back(&e);
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Event* a, const Event* b) { return a->time_s < b->time_s; });
  std::size_t next_event = 0;

  auto fire_due_events = [&](double now) {
    while (next_event < pending.size() && pending[next_event]->time_s <= now) {
      const Event& e = *pending[next_event];
      if (e.kind == EventKind::magnet_release) {
        for (const MagnetLink& l : state.links)
          if (l.id == e.target) {
            state = apply_magnet_release(state, l);
            break;
          }
      }
      ++next_event;
    }
  };

  // Per-step controls resolved from the declarative profiles.
  StepControls controls;
  controls.joint_torque_nm.resize(scenario.modules.size(), 0.0);
  std::vector<std::pair<std::size_t, const TorqueProfile*>> couples;
  if (!scenario.external_torques.empty()) {
    controls.body_couple_nm.resize(scenario.bodies.size(), 0.0);
    for (const BodyTorque& bt : scenario.external_torques)
      couples.emplace_back(static_cast<std::size_t>(state.body_index(bt.body_id)), &bt.profile);
  }

  Trajectory traj;
  fire_due_events(0.0);
  traj.samples.push_back(state);

  long last_recorded = 0;
  for (long k = 1; k <= n_steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    for (std::size_t mi = 0; mi < scenario.modules.size(); ++mi)
      controls.joint_torque_nm[mi] = profile_torque(scenario.modules[mi].joint_torque, t_prev);
    for (auto& [bi, profile] : couples) controls.body_couple_nm[bi] = profile_torque(*profile, t_prev);

    state = step(state, scenario.map, dt, controls, scenario.params);
    state.time_s = static_cast<double>(k) * dt;  // avoid accumulation drift
    fire_due_events(state.time_s);

    if (observer) observer(state);
    if (k % out_every == 0) {
      traj.samples.push_back(state);
      last_recorded = k;
    }
  }
  if (last_recorded != n_steps && n_steps > 0) traj.samples.push_back(state);
  return traj;
}

}  // namespace airfilm::sim

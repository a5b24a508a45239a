#include "airfilm/film_dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace airfilm::sim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

bool finite(const Body2D& b) {
  return std::isfinite(b.pos.x) && std::isfinite(b.pos.y) && std::isfinite(b.theta_rad) &&
         std::isfinite(b.vel.x) && std::isfinite(b.vel.y) && std::isfinite(b.omega_rad_s);
}

// Coulomb kinetic friction on a sliding body: decelerate by mu*g*dt along
// -v, stopping exactly instead of overshooting. Bodies already at rest (or
// below the stop threshold with nothing driving them) stay exactly at rest.
Vec2 apply_translational_friction(Vec2 v, double mu, double gravity, double dt, double stop_speed,
                                  bool driven) {
  const double speed = v.norm();
  if (speed == 0.0) return v;
  if (speed <= stop_speed && !driven) return {0.0, 0.0};
  const double dec = mu * gravity * dt;
  if (speed <= dec) return {0.0, 0.0};
  return v * (1.0 - dec / speed);
}

}  // namespace

double profile_torque(const TorqueProfile& profile, double t_s) {
  double tau = 0.0;
  for (const TorqueSegment& s : profile)
    if (t_s >= s.t_begin_s && t_s < s.t_end_s) tau += s.torque_nm;
  return tau;
}

void PlatformRegionMap::validate() const {
  require(!bounds.degenerate(), "platform bounds are degenerate");
  require(default_mu >= 0.0, "default friction coefficient must be >= 0");
  for (const FrictionRegion& r : regions)
    require(r.mu >= 0.0, "region friction coefficient must be >= 0");
}

const Body2D& SimState::body(const std::string& id) const {
  const int i = body_index(id);
  require(i >= 0, "unknown body id '" + id + "'");
  return bodies[static_cast<std::size_t>(i)];
}

Body2D& SimState::body(const std::string& id) {
  const int i = body_index(id);
  require(i >= 0, "unknown body id '" + id + "'");
  return bodies[static_cast<std::size_t>(i)];
}

int SimState::body_index(const std::string& id) const {
  for (std::size_t i = 0; i < bodies.size(); ++i)
    if (bodies[i].id == id) return static_cast<int>(i);
  return -1;
}

RegionStatus region_friction(const PlatformRegionMap& map, const Body2D& body) {
  bool pressurized = map.default_pressurized;
  double mu = map.default_mu;
  for (const FrictionRegion& r : map.regions) {
    if (r.rect.contains(body.pos)) {
      pressurized = r.pressurized;
      mu = r.mu;
      break;
    }
  }
  if (pressurized) return {true, 0.0};
  return {false, mu};
}

SimState step(const SimState& state, const PlatformRegionMap& map, double dt_s,
              const StepControls& controls, const SimParams& params) {
  require(dt_s > 0.0, "dt must be > 0");
  if (!controls.body_couple_nm.empty())
    require(controls.body_couple_nm.size() == state.bodies.size(),
            "body couple vector does not match body count");
  if (!controls.joint_torque_nm.empty())
    require(controls.joint_torque_nm.size() == state.modules.size(),
            "joint torque vector does not match module count");

  SimState out = state;
  const std::size_t nb = out.bodies.size();
  std::vector<Vec2> force(nb, Vec2{});

  // Magnet pair forces (short-range model, active while repelling within
  // cutoff). Equal and opposite by construction.
  for (const MagnetLink& link : out.links) {
    if (link.state != MagnetState::repel || link.model.kind != MagnetModelKind::short_range_force)
      continue;
    const int ia = out.body_index(link.body_a);
    const int ib = out.body_index(link.body_b);
    require(ia >= 0 && ib >= 0, "magnet link '" + link.id + "' references unknown bodies");
    const Vec2 d = out.bodies[static_cast<std::size_t>(ib)].pos -
                   out.bodies[static_cast<std::size_t>(ia)].pos;
    const double dist = d.norm();
    if (dist > link.model.cutoff_m) continue;
    require(dist > 0.0, "magnet link '" + link.id + "': coincident centers, direction undefined");
    const Vec2 n = d / dist;
    force[static_cast<std::size_t>(ia)] -= n * link.model.force_n;
    force[static_cast<std::size_t>(ib)] += n * link.model.force_n;
  }

  std::vector<char> in_module(nb, 0);
  for (const JointedModule& m : out.modules) {
    const int iu = out.body_index(m.upper_id);
    const int il = out.body_index(m.lower_id);
    require(iu >= 0 && il >= 0, "module '" + m.id + "' references unknown bodies");
    require(iu != il, "module '" + m.id + "' upper and lower must differ");
    in_module[static_cast<std::size_t>(iu)] = 1;
    in_module[static_cast<std::size_t>(il)] = 1;
  }

  auto couple_for = [&](std::size_t i) {
    return controls.body_couple_nm.empty() ? 0.0 : controls.body_couple_nm[i];
  };

  // Free bodies.
  for (std::size_t i = 0; i < nb; ++i) {
    if (in_module[i]) continue;
    Body2D& b = out.bodies[i];
    const RegionStatus rs = region_friction(map, b);
    const bool driven = force[i].x != 0.0 || force[i].y != 0.0;
    b.vel += force[i] * (dt_s / b.mass_kg);
    if (!rs.frictionless)
      b.vel = apply_translational_friction(b.vel, rs.mu, params.gravity_m_s2, dt_s,
                                           params.stop_speed_m_s, driven);
    b.pos += b.vel * dt_s;
    b.omega_rad_s += couple_for(i) / b.inertia_kg_m2 * dt_s;
    b.theta_rad += b.omega_rad_s * dt_s;
  }

  // Jointed modules: one shared translation, two rotations.
  for (std::size_t mi = 0; mi < out.modules.size(); ++mi) {
    const JointedModule& m = out.modules[mi];
    Body2D& upper = out.body(m.upper_id);
    Body2D& lower = out.body(m.lower_id);
    const std::size_t iu = static_cast<std::size_t>(out.body_index(m.upper_id));
    const std::size_t il = static_cast<std::size_t>(out.body_index(m.lower_id));

    const RegionStatus rs = region_friction(map, upper);
    const Vec2 f = force[iu] + force[il];
    const double mass = upper.mass_kg + lower.mass_kg;
    const bool driven = f.x != 0.0 || f.y != 0.0;
    Vec2 v = upper.vel + f * (dt_s / mass);
    if (!rs.frictionless)
      v = apply_translational_friction(v, rs.mu, params.gravity_m_s2, dt_s,
                                       params.stop_speed_m_s, driven);
    const Vec2 p = upper.pos + v * dt_s;
    upper.vel = v;
    lower.vel = v;
    upper.pos = p;
    lower.pos = p;

    const double tau = controls.joint_torque_nm.empty() ? 0.0 : controls.joint_torque_nm[mi];
    upper.omega_rad_s += (tau + couple_for(iu)) / upper.inertia_kg_m2 * dt_s;
    upper.theta_rad += upper.omega_rad_s * dt_s;

    const double reaction = -tau + couple_for(il);
    if (!rs.frictionless && m.pin_torque_nm > 0.0) {
      // Coulomb grip between the lower half and the plate.
      if (std::abs(lower.omega_rad_s) <= params.stop_omega_rad_s &&
          std::abs(reaction) <= m.pin_torque_nm) {
        lower.omega_rad_s = 0.0;  // static grip holds
      } else {
        const double sliding = lower.omega_rad_s >= 0.0 ? 1.0 : -1.0;
        lower.omega_rad_s += (reaction - sliding * m.pin_torque_nm) / lower.inertia_kg_m2 * dt_s;
      }
    } else {
      lower.omega_rad_s += reaction / lower.inertia_kg_m2 * dt_s;
    }
    lower.theta_rad += lower.omega_rad_s * dt_s;
  }

  out.time_s = state.time_s + dt_s;
  for (const Body2D& b : out.bodies)
    if (!finite(b)) throw NumericError(b.id, out.time_s);
  return out;
}

Vec2 total_momentum(const SimState& state) {
  Vec2 p;
  for (const Body2D& b : state.bodies) p += b.vel * b.mass_kg;
  return p;
}

double total_angular_momentum(const SimState& state, Vec2 origin) {
  double l = 0.0;
  for (const Body2D& b : state.bodies)
    l += cross(b.pos - origin, b.vel * b.mass_kg) + b.inertia_kg_m2 * b.omega_rad_s;
  return l;
}

double kinetic_energy(const SimState& state) {
  double e = 0.0;
  for (const Body2D& b : state.bodies)
    e += 0.5 * (b.mass_kg * b.vel.norm2() + b.inertia_kg_m2 * b.omega_rad_s * b.omega_rad_s);
  return e;
}

Diagnostics diagnostics(const SimState& state, Vec2 origin) {
  return {total_momentum(state), total_angular_momentum(state, origin), kinetic_energy(state)};
}

SimState apply_magnet_release(const SimState& state, const MagnetLink& link) {
  SimState out = state;
  MagnetLink* target = nullptr;
  for (MagnetLink& l : out.links)
    if (l.id == link.id) target = &l;
  require(target != nullptr, "unknown magnet link '" + link.id + "'");
  if (target->state == MagnetState::off) return out;
  if (target->state == MagnetState::repel) return out;  // already released

  target->state = MagnetState::repel;
  Body2D& a = out.body(target->body_a);
  Body2D& b = out.body(target->body_b);
  const Vec2 d = b.pos - a.pos;
  const double dist = d.norm();
  require(dist > 0.0, "magnet link '" + link.id + "': coincident centers, direction undefined");

  if (target->model.kind == MagnetModelKind::impulse) {
    const Vec2 n = d / dist;
    a.vel -= n * (target->model.impulse_kg_m_s / a.mass_kg);
    b.vel += n * (target->model.impulse_kg_m_s / b.mass_kg);
  }
  // Force model: the repel state arms the pair force applied by step().
  return out;
}

std::vector<EdgeArrival> edge_arrival_times(const Trajectory& traj, const PlatformRegionMap& map) {
  std::vector<EdgeArrival> out;
  if (traj.samples.empty()) return out;
  const Rect& bounds = map.bounds;

  for (std::size_t bi = 0; bi < traj.samples.front().bodies.size(); ++bi) {
    EdgeArrival arrival;
    arrival.body_id = traj.samples.front().bodies[bi].id;
    if (!bounds.contains(traj.samples.front().bodies[bi].pos)) {
      arrival.time_s = 0.0;
      out.push_back(std::move(arrival));
      continue;
    }
    for (std::size_t k = 1; k < traj.samples.size(); ++k) {
      const Body2D& prev = traj.samples[k - 1].bodies[bi];
      const Body2D& curr = traj.samples[k].bodies[bi];
      if (bounds.contains(curr.pos)) continue;

      // Fraction of the sample interval at which the first bound is crossed.
      double alpha = 1.0;
      auto crossing = [&](double p0, double p1, double lo, double hi) {
        if (p1 < lo && p0 >= lo) alpha = std::min(alpha, (lo - p0) / (p1 - p0));
        if (p1 > hi && p0 <= hi) alpha = std::min(alpha, (hi - p0) / (p1 - p0));
      };
      crossing(prev.pos.x, curr.pos.x, bounds.x_min, bounds.x_max);
      crossing(prev.pos.y, curr.pos.y, bounds.y_min, bounds.y_max);
      const double t0 = traj.samples[k - 1].time_s;
      const double t1 = traj.samples[k].time_s;
      arrival.time_s = t0 + alpha * (t1 - t0);
      break;
    }
    out.push_back(std::move(arrival));
  }
  return out;
}

}  // namespace airfilm::sim

#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "airfilm/geometry.hpp"

// Deterministic planar rigid-body simulator for pucks floating on the gas
// film. Pressurized platform regions are frictionless; unpressurized regions
// apply Coulomb kinetic friction. Robots with an internal rotary joint are
// modeled as two co-located bodies sharing their translation; magnet links
// couple separate bodies.
//
// Integration is semi-implicit Euler at fixed dt: internal force pairs are
// equal and opposite by construction, so linear momentum is conserved to
// rounding error.
namespace airfilm::sim {

struct Body2D {
  std::string id;
  double mass_kg = 1.0;
  double inertia_kg_m2 = 1e-3;  // about the body's own center
  Vec2 pos;
  double theta_rad = 0.0;
  Vec2 vel;
  double omega_rad_s = 0.0;
  double footprint_radius_m = 0.05;

  bool operator==(const Body2D&) const = default;
};

// Piecewise-constant torque segment, active on [t_begin, t_end).
struct TorqueSegment {
  double t_begin_s = 0.0;
  double t_end_s = 0.0;
  double torque_nm = 0.0;
  bool operator==(const TorqueSegment&) const = default;
};
using TorqueProfile = std::vector<TorqueSegment>;

double profile_torque(const TorqueProfile& profile, double t_s);

// Two stacked halves with a common planar translation and independent
// rotations. The joint applies +torque to the upper half and -torque to the
// lower half. When the module sits on an unpressurized region, a Coulomb
// grip torque up to pin_torque_nm holds the lower half against rotation.
struct JointedModule {
  std::string id;
  std::string upper_id;
  std::string lower_id;
  TorqueProfile joint_torque;
  double pin_torque_nm = 0.0;

  bool operator==(const JointedModule&) const = default;
};

struct FrictionRegion {
  Rect rect;
  bool pressurized = true;
  double mu = 0.0;  // kinetic friction coefficient, used when unpressurized
  bool operator==(const FrictionRegion&) const = default;
};

// Partition of the platform plane. Lookup is by point: first matching region
// wins, the default attributes cover the rest of the bounds.
struct PlatformRegionMap {
  Rect bounds{-1.0, -1.0, 1.0, 1.0};
  bool default_pressurized = true;
  double default_mu = 0.2;
  std::vector<FrictionRegion> regions;

  bool operator==(const PlatformRegionMap&) const = default;
  void validate() const;
};

enum class MagnetState { attract, repel, off };
enum class MagnetModelKind { impulse, short_range_force };

struct MagnetModel {
  MagnetModelKind kind = MagnetModelKind::impulse;
  double impulse_kg_m_s = 0.0;  // impulse model: applied once at release
  double force_n = 0.0;         // force model: constant while within cutoff
  double cutoff_m = 0.0;
  bool operator==(const MagnetModel&) const = default;
};

// Permanent-magnet coupling between two bodies. In the attract state the
// bodies are assumed held in contact (attraction balanced by contact force);
// no net effect is applied. Switching to repel pushes them apart.
struct MagnetLink {
  std::string id;
  std::string body_a;
  std::string body_b;
  MagnetState state = MagnetState::attract;
  MagnetModel model;

  bool operator==(const MagnetLink&) const = default;
};

struct SimState {
  double time_s = 0.0;
  std::vector<Body2D> bodies;
  std::vector<JointedModule> modules;
  std::vector<MagnetLink> links;

  bool operator==(const SimState&) const = default;
  const Body2D& body(const std::string& id) const;
  Body2D& body(const std::string& id);
  int body_index(const std::string& id) const;  // -1 when absent
};

class NumericError : public std::runtime_error {
 public:
  NumericError(std::string body_id, double time_s)
      : std::runtime_error("non-finite state for body '" + body_id + "' at t=" +
                           std::to_string(time_s) + " s"),
        body_id_(std::move(body_id)),
        time_s_(time_s) {}
  const std::string& body_id() const { return body_id_; }
  double time_s() const { return time_s_; }

 private:
  std::string body_id_;
  double time_s_;
};

struct RegionStatus {
  bool frictionless = true;
  double mu = 0.0;
};

/// Region attributes at the body's center point.
RegionStatus region_friction(const PlatformRegionMap& map, const Body2D& body);

struct SimParams {
  double gravity_m_s2 = 9.81;
  double stop_speed_m_s = 1e-6;     // static stop threshold, translation
  double stop_omega_rad_s = 1e-6;   // static grip threshold, lower-half spin
  bool operator==(const SimParams&) const = default;
};

// Time-dependent inputs evaluated for one step: external couples per body
// and joint torques per module, indexed parallel to SimState::bodies and
// SimState::modules. Empty vectors mean all zero.
struct StepControls {
  std::vector<double> body_couple_nm;
  std::vector<double> joint_torque_nm;
};

/// One semi-implicit Euler step of length dt. Throws NumericError when a
/// body state becomes non-finite.
SimState step(const SimState& state, const PlatformRegionMap& map, double dt_s,
              const StepControls& controls = {}, const SimParams& params = {});

Vec2 total_momentum(const SimState& state);
double total_angular_momentum(const SimState& state, Vec2 origin = {0.0, 0.0});
double kinetic_energy(const SimState& state);

struct Diagnostics {
  Vec2 momentum;
  double angular_momentum = 0.0;
  double kinetic_energy = 0.0;
};
Diagnostics diagnostics(const SimState& state, Vec2 origin = {0.0, 0.0});

/// Switches an attract link to repel, applying the impulse pair (impulse
/// model) or arming the short-range force (force model). A link in the off
/// state is left unchanged. Throws std::domain_error for coincident centers.
SimState apply_magnet_release(const SimState& state, const MagnetLink& link);

struct Trajectory {
  std::vector<SimState> samples;
};

struct EdgeArrival {
  std::string body_id;
  std::optional<double> time_s;  // empty when the body never leaves bounds
};

/// First time each body's center leaves the platform bounds, linearly
/// interpolated between the bracketing trajectory samples. A body starting
/// outside reports time 0.
std::vector<EdgeArrival> edge_arrival_times(const Trajectory& traj,
                                            const PlatformRegionMap& map);

}  // namespace airfilm::sim

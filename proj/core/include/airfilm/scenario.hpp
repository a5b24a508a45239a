#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "airfilm/film_dynamics.hpp"

namespace airfilm::sim {

enum class EventKind { magnet_release };

struct Event {
  double time_s = 0.0;
  EventKind kind = EventKind::magnet_release;
  std::string target;  // link id

  bool operator==(const Event&) const = default;
};

struct BodyTorque {
  std::string body_id;
  TorqueProfile profile;

  bool operator==(const BodyTorque&) const = default;
};

// Declarative experiment description. All units SI. output_interval_s is
// rounded to a whole number of steps; t_end_s to the nearest step.
struct Scenario {
  std::string name = "scenario";
  double dt_s = 1e-3;
  double t_end_s = 10.0;
  double output_interval_s = 0.01;
  SimParams params;
  PlatformRegionMap map;
  std::vector<Body2D> bodies;
  std::vector<JointedModule> modules;
  std::vector<MagnetLink> links;
  std::vector<Event> events;
  std::vector<BodyTorque> external_torques;

  bool operator==(const Scenario&) const = default;
  void validate() const;  // throws std::domain_error
  SimState initial_state() const;
};

using StepObserver = std::function<void(const SimState&)>;

/// Runs the scenario from t=0 to t_end at fixed dt. Events fire at the first
/// step boundary at or after their scheduled time; torque profiles are
/// evaluated at the start of each step. Identical inputs produce identical
/// trajectories. The observer, when set, sees the state after every step.
Trajectory simulate(const Scenario& scenario, const StepObserver& observer = {});

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(const std::string& where, const std::string& what)
      : std::runtime_error("scenario: " + where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Parses the scenario JSON document. Throws ScenarioParseError naming the
/// offending field.
Scenario parse_scenario(const std::string& json_text);

/// Serializes a scenario back to JSON. parse(serialize(s)) == s.
std::string scenario_to_json(const Scenario& scenario);

}  // namespace airfilm::sim

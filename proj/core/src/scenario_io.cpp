#include <json.hpp>

#include "airfilm/scenario.hpp"

namespace airfilm::sim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioParseError(where, what);
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double num(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

double num_or(const json& obj, const char* key, const std::string& path, double fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return num(obj, key, path);
}

std::string str(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

Rect parse_rect(const json& j, const std::string& path) {
  return {num(j, "x_min", path), num(j, "y_min", path), num(j, "x_max", path),
          num(j, "y_max", path)};
}

json rect_to_json(const Rect& r) {
  return {{"x_min", r.x_min}, {"y_min", r.y_min}, {"x_max", r.x_max}, {"y_max", r.y_max}};
}

TorqueProfile parse_profile(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of torque segments");
  TorqueProfile profile;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    profile.push_back({num(j[i], "t_begin_s", p), num(j[i], "t_end_s", p), num(j[i], "torque_nm", p)});
  }
  return profile;
}

json profile_to_json(const TorqueProfile& profile) {
  json arr = json::array();
  for (const TorqueSegment& s : profile)
    arr.push_back({{"t_begin_s", s.t_begin_s}, {"t_end_s", s.t_end_s}, {"torque_nm", s.torque_nm}});
  return arr;
}

MagnetState parse_state(const std::string& s, const std::string& path) {
  if (s == "attract") return MagnetState::attract;
  if (s == "repel") return MagnetState::repel;
  if (s == "off") return MagnetState::off;
  fail(path, "unknown magnet state '" + s + "' (attract|repel|off)");
}

const char* state_name(MagnetState s) {
  switch (s) {
    case MagnetState::attract: return "attract";
    case MagnetState::repel: return "repel";
    case MagnetState::off: return "off";
  }
  return "off";
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("document", e.what());
  }
  if (!j.is_object()) fail("document", "expected a JSON object");

  Scenario sc;
  if (j.contains("name")) sc.name = str(j, "name", "document");
  sc.dt_s = num(j, "dt_s", "document");
  sc.t_end_s = num(j, "t_end_s", "document");
  sc.output_interval_s = num_or(j, "output_interval_s", "document", sc.dt_s);

  if (j.contains("params")) {
    const json& p = j["params"];
    if (!p.is_object()) fail("params", "expected an object");
    sc.params.gravity_m_s2 = num_or(p, "gravity_m_s2", "params", sc.params.gravity_m_s2);
    sc.params.stop_speed_m_s = num_or(p, "stop_speed_m_s", "params", sc.params.stop_speed_m_s);
    sc.params.stop_omega_rad_s =
        num_or(p, "stop_omega_rad_s", "params", sc.params.stop_omega_rad_s);
  }

  const json& map = member(j, "map", "document");
  sc.map.bounds = parse_rect(member(map, "bounds", "map"), "map.bounds");
  if (map.contains("default")) {
    if (!map["default"].is_object()) fail("map.default", "expected an object");
    sc.map.default_pressurized = boolean(map["default"], "pressurized", "map.default");
    sc.map.default_mu = num_or(map["default"], "mu", "map.default", sc.map.default_mu);
  }
  if (map.contains("regions")) {
    const json& regions = map["regions"];
    if (!regions.is_array()) fail("map.regions", "expected an array");
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const std::string p = "map.regions[" + std::to_string(i) + "]";
      FrictionRegion r;
      r.rect = parse_rect(member(regions[i], "rect", p), p + ".rect");
      r.pressurized = boolean(regions[i], "pressurized", p);
      r.mu = num_or(regions[i], "mu", p, 0.0);
      sc.map.regions.push_back(r);
    }
  }

  const json& bodies = member(j, "bodies", "document");
  if (!bodies.is_array()) fail("bodies", "expected an array");
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    const std::string p = "bodies[" + std::to_string(i) + "]";
    Body2D b;
    b.id = str(bodies[i], "id", p);
    b.mass_kg = num(bodies[i], "mass_kg", p);
    b.inertia_kg_m2 = num(bodies[i], "inertia_kg_m2", p);
    b.pos = {num(bodies[i], "x_m", p), num(bodies[i], "y_m", p)};
    b.theta_rad = num_or(bodies[i], "theta_rad", p, 0.0);
    b.vel = {num_or(bodies[i], "vx_m_s", p, 0.0), num_or(bodies[i], "vy_m_s", p, 0.0)};
    b.omega_rad_s = num_or(bodies[i], "omega_rad_s", p, 0.0);
    b.footprint_radius_m = num_or(bodies[i], "footprint_radius_m", p, 0.05);
    sc.bodies.push_back(std::move(b));
  }

  if (j.contains("modules")) {
    const json& modules = j["modules"];
    if (!modules.is_array()) fail("modules", "expected an array");
    for (std::size_t i = 0; i < modules.size(); ++i) {
      const std::string p = "modules[" + std::to_string(i) + "]";
      JointedModule m;
      m.id = str(modules[i], "id", p);
      m.upper_id = str(modules[i], "upper", p);
      m.lower_id = str(modules[i], "lower", p);
      m.pin_torque_nm = num_or(modules[i], "pin_torque_nm", p, 0.0);
      if (modules[i].contains("joint_torque"))
        m.joint_torque = parse_profile(modules[i]["joint_torque"], p + ".joint_torque");
      sc.modules.push_back(std::move(m));
    }
  }

  if (j.contains("links")) {
    const json& links = j["links"];
    if (!links.is_array()) fail("links", "expected an array");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string p = "links[" + std::to_string(i) + "]";
      MagnetLink l;
      l.id = str(links[i], "id", p);
      l.body_a = str(links[i], "body_a", p);
      l.body_b = str(links[i], "body_b", p);
      l.state = parse_state(str(links[i], "state", p), p + ".state");
      const json& model = member(links[i], "model", p);
      const std::string type = str(model, "type", p + ".model");
      if (type == "impulse") {
        l.model.kind = MagnetModelKind::impulse;
        l.model.impulse_kg_m_s = num(model, "impulse_kg_m_s", p + ".model");
      } else if (type == "short_range_force") {
        l.model.kind = MagnetModelKind::short_range_force;
        l.model.force_n = num(model, "force_n", p + ".model");
        l.model.cutoff_m = num(model, "cutoff_m", p + ".model");
      } else {
        fail(p + ".model.type", "unknown magnet model '" + type + "'");
      }
      sc.links.push_back(std::move(l));
    }
  }

  if (j.contains("events")) {
    const json& events = j["events"];
    if (!events.is_array()) fail("events", "expected an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
      const std::string p = "events[" + std::to_string(i) + "]";
      Event e;
      e.time_s = num(events[i], "time_s", p);
      const std::string kind = str(events[i], "kind", p);
      if (kind != "magnet_release") fail(p + ".kind", "unknown event kind '" + kind + "'");
      e.kind = EventKind::magnet_release;
      e.target = str(events[i], "link", p);
      sc.events.push_back(std::move(e));
    }
  }

  if (j.contains("external_torques")) {
    const json& ext = j["external_torques"];
    if (!ext.is_array()) fail("external_torques", "expected an array");
    for (std::size_t i = 0; i < ext.size(); ++i) {
      const std::string p = "external_torques[" + std::to_string(i) + "]";
      BodyTorque bt;
      bt.body_id = str(ext[i], "body", p);
      bt.profile = parse_profile(member(ext[i], "segments", p), p + ".segments");
      sc.external_torques.push_back(std::move(bt));
    }
  }

  try {
    sc.validate();
  } catch (const std::domain_error& e) {
    fail("document", e.what());
  }
  return sc;
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["name"] = sc.name;
  j["dt_s"] = sc.dt_s;
  j["t_end_s"] = sc.t_end_s;
  j["output_interval_s"] = sc.output_interval_s;
  j["params"] = {{"gravity_m_s2", sc.params.gravity_m_s2},
                 {"stop_speed_m_s", sc.params.stop_speed_m_s},
                 {"stop_omega_rad_s", sc.params.stop_omega_rad_s}};
  j["map"]["bounds"] = rect_to_json(sc.map.bounds);
  j["map"]["default"] = {{"pressurized", sc.map.default_pressurized}, {"mu", sc.map.default_mu}};
  j["map"]["regions"] = json::array();
  for (const FrictionRegion& r : sc.map.regions)
    j["map"]["regions"].push_back(
        {{"rect", rect_to_json(r.rect)}, {"pressurized", r.pressurized}, {"mu", r.mu}});

  j["bodies"] = json::array();
  for (const Body2D& b : sc.bodies)
    j["bodies"].push_back({{"id", b.id},
                           {"mass_kg", b.mass_kg},
                           {"inertia_kg_m2", b.inertia_kg_m2},
                           {"x_m", b.pos.x},
                           {"y_m", b.pos.y},
                           {"theta_rad", b.theta_rad},
                           {"vx_m_s", b.vel.x},
                           {"vy_m_s", b.vel.y},
                           {"omega_rad_s", b.omega_rad_s},
                           {"footprint_radius_m", b.footprint_radius_m}});

  j["modules"] = json::array();
  for (const JointedModule& m : sc.modules)
    j["modules"].push_back({{"id", m.id},
                            {"upper", m.upper_id},
                            {"lower", m.lower_id},
                            {"pin_torque_nm", m.pin_torque_nm},
                            {"joint_torque", profile_to_json(m.joint_torque)}});

  j["links"] = json::array();
  for (const MagnetLink& l : sc.links) {
    json model;
    if (l.model.kind == MagnetModelKind::impulse)
      model = {{"type", "impulse"}, {"impulse_kg_m_s", l.model.impulse_kg_m_s}};
    else
      model = {{"type", "short_range_force"},
               {"force_n", l.model.force_n},
               {"cutoff_m", l.model.cutoff_m}};
    j["links"].push_back({{"id", l.id},
                          {"body_a", l.body_a},
                          {"body_b", l.body_b},
                          {"state", state_name(l.state)},
                          {"model", model}});
  }

  j["events"] = json::array();
  for (const Event& e : sc.events)
    j["events"].push_back({{"time_s", e.time_s}, {"kind", "magnet_release"}, {"link", e.target}});

  j["external_torques"] = json::array();
  for (const BodyTorque& bt : sc.external_torques)
    j["external_torques"].push_back({{"body", bt.body_id}, {"segments", profile_to_json(bt.profile)}});

  return j.dump(2) + "\n";
}

}  // namespace airfilm::sim

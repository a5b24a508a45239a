#include <doctest.h>

#include <sstream>

#include "airfilm/csv.hpp"
#include "airfilm/design_io.hpp"
#include "airfilm/platform_design.hpp"
#include "airfilm/presets.hpp"
#include "airfilm/scenario.hpp"

using namespace airfilm;

namespace {

const char* kScenarioText = R"json({
  "name": "two_pucks",
  "dt_s": 0.001,
  "t_end_s": 2.0,
  "output_interval_s": 0.02,
  "params": {"gravity_m_s2": 9.81, "stop_speed_m_s": 1e-6},
  "map": {
    "bounds": {"x_min": -0.3, "y_min": -0.3, "x_max": 0.3, "y_max": 0.3},
    "default": {"pressurized": true, "mu": 0.2},
    "regions": [
      {"rect": {"x_min": 0.1, "y_min": -0.3, "x_max": 0.3, "y_max": 0.3},
       "pressurized": false, "mu": 0.25}
    ]
  },
  "bodies": [
    {"id": "a", "mass_kg": 0.5, "inertia_kg_m2": 0.001, "x_m": -0.05, "y_m": 0.0,
     "vx_m_s": 0.0, "vy_m_s": 0.0, "footprint_radius_m": 0.05},
    {"id": "b", "mass_kg": 0.5, "inertia_kg_m2": 0.001, "x_m": 0.05, "y_m": 0.0}
  ],
  "modules": [],
  "links": [
    {"id": "L", "body_a": "a", "body_b": "b", "state": "attract",
     "model": {"type": "impulse", "impulse_kg_m_s": 0.01}}
  ],
  "events": [{"time_s": 0.5, "kind": "magnet_release", "link": "L"}],
  "external_torques": [{"body": "a", "segments": [{"t_begin_s": 0.0, "t_end_s": 0.25, "torque_nm": 0.001}]}]
})json";

}  // namespace

TEST_CASE("scenario JSON round trip is the identity") {
  const sim::Scenario sc = sim::parse_scenario(kScenarioText);
  CHECK(sc.name == "two_pucks");
  CHECK(sc.bodies.size() == 2);
  CHECK(sc.links.size() == 1);
  CHECK(sc.events.size() == 1);
  CHECK(sc.map.regions.size() == 1);
  CHECK(sc.bodies[1].footprint_radius_m == 0.05);  // default applied

  const std::string text = sim::scenario_to_json(sc);
  const sim::Scenario again = sim::parse_scenario(text);
  CHECK(again == sc);
  CHECK(sim::scenario_to_json(again) == text);
}

TEST_CASE("preset scenarios survive the round trip") {
  for (const std::string& name : sim::preset_names()) {
    CAPTURE(name);
    sim::PresetParams params;
    params.t_end_s = 0.5;  // keep the serialization test cheap
    const sim::PresetRun run = sim::run_preset(*sim::preset_from_name(name), params);
    const sim::Scenario again = sim::parse_scenario(sim::scenario_to_json(run.scenario));
    CHECK(again == run.scenario);
  }
}

TEST_CASE("scenario parse errors name the offending field") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      sim::parse_scenario(text);
      FAIL_CHECK("expected ScenarioParseError for ", needle);
    } catch (const sim::ScenarioParseError& e) {
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("not json", "document");
  expect_error(R"({"t_end_s": 1, "map": {}, "bodies": []})", "dt_s");
  expect_error(R"({"dt_s": 0.001, "t_end_s": 1, "map": {}, "bodies": []})", "map.bounds");
  expect_error(
      R"({"dt_s": 0.001, "t_end_s": 1,
          "map": {"bounds": {"x_min": -1, "y_min": -1, "x_max": 1, "y_max": 1}},
          "bodies": [{"id": "a", "mass_kg": "heavy", "inertia_kg_m2": 1, "x_m": 0, "y_m": 0}]})",
      "bodies[0].mass_kg");
  expect_error(
      R"({"dt_s": 0.001, "t_end_s": 1,
          "map": {"bounds": {"x_min": -1, "y_min": -1, "x_max": 1, "y_max": 1}},
          "bodies": [{"id": "a", "mass_kg": 1, "inertia_kg_m2": 1, "x_m": 0, "y_m": 0}],
          "links": [{"id": "L", "body_a": "a", "body_b": "ghost", "state": "attract",
                     "model": {"type": "impulse", "impulse_kg_m_s": 1}}]})",
      "unknown body");
  // Semantic validation failures surface as parse errors too.
  expect_error(
      R"({"dt_s": -0.001, "t_end_s": 1,
          "map": {"bounds": {"x_min": -1, "y_min": -1, "x_max": 1, "y_max": 1}},
          "bodies": []})",
      "dt");
}

TEST_CASE("trajectory and diagnostics CSV headers and shape") {
  sim::PresetParams params;
  params.t_end_s = 2.0;
  const sim::PresetRun run = sim::run_preset(sim::Preset::magnet_separation, params);

  std::ostringstream tcsv;
  io::write_trajectory_csv(tcsv, run.trajectory);
  std::istringstream lines(tcsv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,body_id,x,y,theta,vx,vy,omega");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == run.trajectory.samples.size() * 2);  // two bodies per sample

  std::ostringstream dcsv;
  io::write_diagnostics_csv(dcsv, run.trajectory);
  std::istringstream dlines(dcsv.str());
  std::getline(dlines, header);
  CHECK(header == "t,px,py,L,ke");

  // Byte-identical across repeated serialization.
  std::ostringstream tcsv2;
  io::write_trajectory_csv(tcsv2, run.trajectory);
  CHECK(tcsv.str() == tcsv2.str());
}

TEST_CASE("flow and field CSV") {
  std::ostringstream os;
  io::write_flow_curve_csv(os, flow::flow_curve(0.015, 0.03, 0.015));
  CHECK(os.str() == "x_m,v_ratio\n0,1\n0.015,0.5\n0.03,0.2\n");

  flow::PorousPlate plate;
  plate.plan_width_m = 0.03;
  plate.plan_depth_m = 0.03;
  plate.hole_spacing_m = 0.03;
  plate.thickness_m = 0.03;
  std::ostringstream fs;
  io::write_field_csv(fs, flow::sample_surface_field(plate, 0.015));
  std::istringstream lines(fs.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "x_m,y_m,v_ratio");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("format_double round trips shortest decimal forms") {
  CHECK(io::format_double(0.0) == "0");
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(-1.25) == "-1.25");
  CHECK(io::format_double(0.1) == "0.1");
  for (double v : {1e-9, 123456.789, 2.548420e-3, 9.81}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
}

TEST_CASE("design JSON carries the documented schema") {
  design::RobotSpec ubot;
  const design::PlatformDesign d = design::design_platform(ubot, design::DesignMode::targeted);
  const std::string text = design::design_to_json(d);
  for (const char* key :
       {"\"mode\"", "\"plate\"", "\"glass\"", "\"supply_units\"", "\"hole_spacing_m\"",
        "\"estimated_capacity_n\"", "\"film_pressure_pa\"", "\"covering\"", "\"metal_plate\""}) {
    CAPTURE(key);
    CHECK(text.find(key) != std::string::npos);
  }
  const std::string table = design::design_table(d);
  CHECK(table.find("80 mm") != std::string::npos);
  CHECK(table.find("capacity") != std::string::npos);
}

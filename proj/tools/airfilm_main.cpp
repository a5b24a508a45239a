// Command-line front end: platform design, flow-curve export, scenario
// simulation, and the verification suite.
//
// Exit codes: 0 success, 1 check/design/simulation failure, 2 input error.

#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "airfilm/csv.hpp"
#include "airfilm/design_io.hpp"
#include "airfilm/platform_design.hpp"
#include "airfilm/porous_flow.hpp"
#include "airfilm/presets.hpp"
#include "airfilm/scenario.hpp"
#include "verify_checks.hpp"

namespace {

using namespace airfilm;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) return false;
  os << content;
  return static_cast<bool>(os);
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out.empty() ? std::string("scenario") : out;
}

std::string output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("AIRFILM_OUT_DIR"); env != nullptr && *env != '\0')
    return env;
  return ".";
}

// ----------------------------------------------------------------- design

struct DesignArgs {
  double robot_size = 0.092;
  double robot_mass = 1.0;
  int modules = 1;
  double workspace = 1.0;
  double workspace_depth = -1.0;
  std::string preset = "targeted";
  design::DesignOptions opts;
  std::string json_path;
  std::string format = "table";
};

int run_design(const DesignArgs& args) {
  try {
    design::RobotSpec robot;
    robot.footprint_side_m = args.robot_size;
    robot.module_mass_kg = args.robot_mass;
    robot.module_count = args.modules;
    robot.workspace_width_m = args.workspace;
    robot.workspace_depth_m = args.workspace_depth > 0.0 ? args.workspace_depth : args.workspace;

    design::DesignMode mode;
    if (args.preset == "generic")
      mode = design::DesignMode::generic;
    else if (args.preset == "targeted")
      mode = design::DesignMode::targeted;
    else
      throw std::domain_error("unknown design preset '" + args.preset + "' (generic|targeted)");

    const design::PlatformDesign d = design::design_platform(robot, mode, args.opts);

    if (args.format == "json")
      std::cout << design::design_to_json(d);
    else
      std::cout << design::design_table(d);
    if (!args.json_path.empty() && !write_file(args.json_path, design::design_to_json(d))) {
      std::cerr << "error: cannot write " << args.json_path << "\n";
      return kExitUsage;
    }
    return kExitOk;
  } catch (const design::DesignInfeasibleError& e) {
    std::cerr << "design infeasible: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
}

// ------------------------------------------------------------------- flow

struct FlowArgs {
  double thickness = 0.015;
  double max_x = 0.06;
  double step = 0.001;
  std::string holes;  // e.g. "30mm-grid" switches to field output
  double extent = 0.3;
  std::string out_path;
};

std::optional<double> parse_grid_spec(const std::string& spec) {
  const auto pos = spec.find("mm-grid");
  if (pos == std::string::npos || pos + 7 != spec.size()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double mm = std::stod(spec.substr(0, pos), &used);
    if (used != pos || mm <= 0.0) return std::nullopt;
    return mm / 1000.0;
  } catch (...) {
    return std::nullopt;
  }
}

int run_flow(const FlowArgs& args) {
  try {
    std::ostringstream body;
    if (args.holes.empty()) {
      const auto curve = flow::flow_curve(args.thickness, args.max_x, args.step);
      io::write_flow_curve_csv(body, curve);
    } else {
      const auto spacing = parse_grid_spec(args.holes);
      if (!spacing) throw std::domain_error("bad --holes spec '" + args.holes + "', want e.g. 30mm-grid");
      flow::PorousPlate plate;
      plate.thickness_m = args.thickness;
      plate.plan_width_m = args.extent;
      plate.plan_depth_m = args.extent;
      plate.hole_spacing_m = *spacing;
      plate.hole_diameter_m = std::min(0.002, 0.4 * *spacing);
      const double pitch = args.extent / 100.0;
      io::write_field_csv(body, flow::sample_surface_field(plate, pitch));
    }
    if (args.out_path.empty()) {
      std::cout << body.str();
    } else if (!write_file(args.out_path, body.str())) {
      std::cerr << "error: cannot write " << args.out_path << "\n";
      return kExitUsage;
    }
    return kExitOk;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
}

// -------------------------------------------------------------------- sim

struct SimArgs {
  std::string preset;
  std::string scenario_path;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::string out_dir;
  std::string emit_scenario_path;
};

void print_conservation_summary(const sim::Trajectory& traj) {
  const sim::Diagnostics d0 = sim::diagnostics(traj.samples.front());
  const sim::Diagnostics d1 = sim::diagnostics(traj.samples.back());
  std::cout << "conservation summary (start -> end)\n";
  std::cout << "  |P|  " << io::format_double(d0.momentum.norm()) << " -> "
            << io::format_double(d1.momentum.norm()) << " kg m/s\n";
  std::cout << "  L    " << io::format_double(d0.angular_momentum) << " -> "
            << io::format_double(d1.angular_momentum) << " kg m^2/s\n";
  std::cout << "  KE   " << io::format_double(d0.kinetic_energy) << " -> "
            << io::format_double(d1.kinetic_energy) << " J\n";
}

int write_run_outputs(const std::string& dir, const std::string& name,
                      const sim::Trajectory& traj) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string base = dir + "/" + sanitize(name);
  std::ostringstream tcsv;
  io::write_trajectory_csv(tcsv, traj);
  std::ostringstream dcsv;
  io::write_diagnostics_csv(dcsv, traj);
  if (!write_file(base + "_trajectory.csv", tcsv.str()) ||
      !write_file(base + "_diagnostics.csv", dcsv.str())) {
    std::cerr << "error: cannot write outputs under " << dir << "\n";
    return kExitUsage;
  }
  std::cout << "wrote " << base << "_trajectory.csv and " << base << "_diagnostics.csv\n";
  return kExitOk;
}

int run_sim(const SimArgs& args) {
  try {
    const std::string dir = output_dir(args.out_dir);

    if (!args.preset.empty()) {
      const auto preset = sim::preset_from_name(args.preset);
      if (!preset) {
        std::cerr << "unknown preset '" << args.preset << "'; available:";
        for (const std::string& n : sim::preset_names()) std::cerr << " " << n;
        std::cerr << "\n";
        return kExitUsage;
      }
      sim::PresetParams params;
      params.dt_s = args.dt;
      params.t_end_s = args.t_end;
      const sim::PresetRun run = sim::run_preset(*preset, params);
      if (!args.emit_scenario_path.empty() &&
          !write_file(args.emit_scenario_path, sim::scenario_to_json(run.scenario))) {
        std::cerr << "error: cannot write " << args.emit_scenario_path << "\n";
        return kExitUsage;
      }
      const int rc = write_run_outputs(dir, run.scenario.name, run.trajectory);
      if (rc != kExitOk) return rc;
      for (const sim::CheckLine& c : run.checks)
        std::cout << (c.pass ? "  pass " : "  FAIL ") << c.name << ": expected "
                  << (c.kind == sim::CheckKind::at_least ? ">= " : "")
                  << io::format_double(c.expected) << ", measured "
                  << io::format_double(c.measured) << "\n";
      print_conservation_summary(run.trajectory);
      return kExitOk;
    }

    if (args.scenario_path.empty()) {
      std::cerr << "sim: either --preset or --scenario is required\n";
      return kExitUsage;
    }
    std::ifstream is(args.scenario_path, std::ios::binary);
    if (!is) {
      std::cerr << "error: cannot read " << args.scenario_path << "\n";
      return kExitUsage;
    }
    std::stringstream buffer;
    buffer << is.rdbuf();
    sim::Scenario scenario = sim::parse_scenario(buffer.str());
    if (args.dt) scenario.dt_s = *args.dt;
    if (args.t_end) scenario.t_end_s = *args.t_end;

    const sim::Trajectory traj = sim::simulate(scenario);
    const int rc = write_run_outputs(dir, scenario.name, traj);
    if (rc != kExitOk) return rc;
    print_conservation_summary(traj);
    return kExitOk;
  } catch (const sim::ScenarioParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const sim::NumericError& e) {
    std::cerr << "simulation diverged: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  }
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::string only;
  std::string json_path;
};

int run_verify(const VerifyArgs& args) {
  const verify::Report report = verify::run_checks(args.only);
  std::cout << verify::report_table(report);
  if (!args.json_path.empty() && !write_file(args.json_path, verify::report_json(report))) {
    std::cerr << "error: cannot write " << args.json_path << "\n";
    return kExitUsage;
  }
  return report.all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"porous-plate air-bearing microgravity platform toolkit"};
  app.require_subcommand(1);

  DesignArgs design_args;
  CLI::App* design_cmd = app.add_subcommand("design", "size a platform for a robot");
  design_cmd->add_option("--robot-size", design_args.robot_size, "module bounding square, m");
  design_cmd->add_option("--robot-mass", design_args.robot_mass, "mass per module, kg");
  design_cmd->add_option("--modules", design_args.modules, "number of modules");
  design_cmd->add_option("--workspace", design_args.workspace, "workspace width, m");
  design_cmd->add_option("--workspace-depth", design_args.workspace_depth,
                         "workspace depth, m (defaults to width)");
  design_cmd->add_option("--preset", design_args.preset, "generic | targeted");
  design_cmd->add_option("--spacing", design_args.opts.spacing_request_m,
                         "requested hole spacing, m (capped at the computed optimum)");
  design_cmd->add_option("--thickness", design_args.opts.thickness_floor_m,
                         "minimum plate thickness, m");
  design_cmd->add_option("--hole-diameter", design_args.opts.hole_diameter_m, "inlet hole diameter, m");
  design_cmd->add_option("--pressure", design_args.opts.supply_pressure_pa, "supply pressure, Pa");
  design_cmd->add_option("--film-pressure", design_args.opts.film_pressure_pa,
                         "film capacity pressure, Pa");
  design_cmd->add_option("--json", design_args.json_path, "write the design JSON here");
  design_cmd->add_option("--format", design_args.format, "stdout format: table | json");

  FlowArgs flow_args;
  CLI::App* flow_cmd = app.add_subcommand("flow", "export the surface outflow profile");
  flow_cmd->add_option("--thickness", flow_args.thickness, "plate thickness, m");
  flow_cmd->add_option("--max-x", flow_args.max_x, "curve extent, m");
  flow_cmd->add_option("--step", flow_args.step, "curve step, m");
  flow_cmd->add_option("--holes", flow_args.holes, "hole grid spec (e.g. 30mm-grid) for a 2D field");
  flow_cmd->add_option("--extent", flow_args.extent, "field plate side, m");
  flow_cmd->add_option("--out", flow_args.out_path, "output CSV path (default stdout)");

  SimArgs sim_args;
  double sim_dt = 0.0;
  double sim_t_end = 0.0;
  CLI::App* sim_cmd = app.add_subcommand("sim", "simulate a preset or scenario file");
  sim_cmd->add_option("--preset", sim_args.preset, "preset experiment name");
  sim_cmd->add_option("--scenario", sim_args.scenario_path, "scenario JSON path");
  CLI::Option* dt_opt = sim_cmd->add_option("--dt", sim_dt, "time step, s");
  CLI::Option* tend_opt = sim_cmd->add_option("--t-end", sim_t_end, "end time, s");
  sim_cmd->add_option("--out-dir", sim_args.out_dir,
                      "output directory (default . or $AIRFILM_OUT_DIR)");
  sim_cmd->add_option("--emit-scenario", sim_args.emit_scenario_path,
                      "write the preset's scenario JSON here");

  VerifyArgs verify_args;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the model verification checks");
  verify_cmd->add_option("--only", verify_args.only, "run only checks whose name contains this");
  verify_cmd->add_option("--json", verify_args.json_path, "write the report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (design_cmd->parsed()) return run_design(design_args);
  if (flow_cmd->parsed()) return run_flow(flow_args);
  if (sim_cmd->parsed()) {
    if (dt_opt->count() > 0) sim_args.dt = sim_dt;
    if (tend_opt->count() > 0) sim_args.t_end = sim_t_end;
    return run_sim(sim_args);
  }
  if (verify_cmd->parsed()) return run_verify(verify_args);
  return kExitUsage;
}

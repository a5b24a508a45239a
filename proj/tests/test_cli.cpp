// End-to-end checks of the installed command-line surface. The binary path
// arrives as the first program argument (wired up by CTest).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
std::filesystem::path g_dir;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::filesystem::path out = g_dir / ("out" + std::to_string(counter) + ".txt");
  const std::filesystem::path err = g_dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd =
      env_prefix + "\"" + g_cli + "\" " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("design subcommand") {
  const RunResult targeted = run("design --robot-size 0.092 --workspace 1.0");
  CHECK(targeted.exit_code == 0);
  CHECK(contains(targeted.out, "80 mm"));
  CHECK(contains(targeted.out, "thickness 30 mm"));
  CHECK(contains(targeted.out, "30 mm pitch"));

  const RunResult generic = run("design --preset generic");
  CHECK(generic.exit_code == 0);
  CHECK(contains(generic.out, "2.00 m x 2.00 m"));
  CHECK(contains(generic.out, "10 mm pitch"));

  const std::string json_path = (g_dir / "design.json").string();
  const RunResult json = run("design --robot-size 0.092 --format json --json " + json_path);
  CHECK(json.exit_code == 0);
  CHECK(contains(json.out, "\"hole_spacing_m\": 0.03"));
  CHECK(contains(slurp(json_path), "\"size_m\": 0.08"));

  const RunResult bad = run("design --robot-size -1");
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "footprint"));

  const RunResult heavy = run("design --robot-size 0.092 --robot-mass 15");
  CHECK(heavy.exit_code == 1);
  CHECK(contains(heavy.err, "load capacity"));

  const RunResult unknown_flag = run("design --frobnicate 1");
  CHECK(unknown_flag.exit_code == 2);
}

TEST_CASE("flow subcommand") {
  const RunResult curve = run("flow --thickness 0.015 --max-x 0.06 --step 0.001");
  CHECK(curve.exit_code == 0);
  std::istringstream lines(curve.out);
  std::string line;
  std::size_t rows = 0;
  bool found_half = false;
  std::getline(lines, line);
  CHECK(line == "x_m,v_ratio");
  while (std::getline(lines, line)) {
    ++rows;
    if (line == "0.015,0.5") found_half = true;
  }
  CHECK(rows == 61);
  CHECK(found_half);

  const RunResult bad = run("flow --thickness 0");
  CHECK(bad.exit_code == 2);

  const RunResult field = run("flow --thickness 0.030 --holes 30mm-grid --extent 0.3");
  CHECK(field.exit_code == 0);
  CHECK(contains(field.out, "x_m,y_m,v_ratio"));

  const RunResult bad_spec = run("flow --thickness 0.03 --holes 30zz-grid");
  CHECK(bad_spec.exit_code == 2);
}

TEST_CASE("sim subcommand with presets") {
  const std::string dir = (g_dir / "runs").string();
  const RunResult r =
      run("sim --preset film_boundary_glide --t-end 0.4 --out-dir " + dir);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "conservation summary"));
  const std::string traj = slurp(dir + "/film_boundary_glide_trajectory.csv");
  CHECK(contains(traj, "t,body_id,x,y,theta,vx,vy,omega"));
  CHECK(contains(slurp(dir + "/film_boundary_glide_diagnostics.csv"), "t,px,py,L,ke"));

  // Byte-identical rerun.
  const RunResult again =
      run("sim --preset film_boundary_glide --t-end 0.4 --out-dir " + dir + "_b");
  CHECK(again.exit_code == 0);
  CHECK(slurp(dir + "_b/film_boundary_glide_trajectory.csv") == traj);

  const RunResult unknown = run("sim --preset warp_drive");
  CHECK(unknown.exit_code == 2);
  CHECK(contains(unknown.err, "available"));

  // Output-directory override through the environment.
  const std::string env_dir = (g_dir / "envout").string();
  const RunResult env_run = run("sim --preset film_boundary_glide --t-end 0.2",
                                "AIRFILM_OUT_DIR=" + env_dir + " ");
  CHECK(env_run.exit_code == 0);
  CHECK(std::filesystem::exists(env_dir + "/film_boundary_glide_trajectory.csv"));
}

TEST_CASE("sim subcommand with scenario files") {
  const std::string scenario_path = (g_dir / "scenario.json").string();
  {
    std::ofstream os(scenario_path);
    os << R"({
      "name": "drift",
      "dt_s": 0.001, "t_end_s": 0.5,
      "map": {"bounds": {"x_min": -1, "y_min": -1, "x_max": 1, "y_max": 1}},
      "bodies": [{"id": "p", "mass_kg": 1.0, "inertia_kg_m2": 0.001,
                  "x_m": 0, "y_m": 0, "vx_m_s": 0.1, "vy_m_s": 0}]
    })";
  }
  const std::string dir = (g_dir / "scen_runs").string();
  const RunResult ok = run("sim --scenario " + scenario_path + " --out-dir " + dir);
  CHECK(ok.exit_code == 0);
  CHECK(contains(slurp(dir + "/drift_trajectory.csv"), "0.5,p,0.05"));

  const RunResult missing = run("sim --scenario " + (g_dir / "nope.json").string());
  CHECK(missing.exit_code == 2);

  const std::string bad_path = (g_dir / "bad.json").string();
  {
    std::ofstream os(bad_path);
    os << R"({"dt_s": 0.001, "t_end_s": 1, "map": {}, "bodies": []})";
  }
  const RunResult bad = run("sim --scenario " + bad_path);
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.err, "map.bounds"));

  const RunResult neither = run("sim");
  CHECK(neither.exit_code == 2);

  // Numeric blow-up exits 1 and names the body.
  const std::string blowup_path = (g_dir / "blowup.json").string();
  {
    std::ofstream os(blowup_path);
    os << R"({
      "name": "blowup",
      "dt_s": 0.001, "t_end_s": 1.0,
      "map": {"bounds": {"x_min": -1, "y_min": -1, "x_max": 1, "y_max": 1}},
      "bodies": [{"id": "hot", "mass_kg": 1.0, "inertia_kg_m2": 1e-300,
                  "x_m": 0, "y_m": 0}],
      "external_torques": [{"body": "hot",
        "segments": [{"t_begin_s": 0, "t_end_s": 1, "torque_nm": 1e300}]}]
    })";
  }
  const RunResult blowup = run("sim --scenario " + blowup_path);
  CHECK(blowup.exit_code == 1);
  CHECK(contains(blowup.err, "hot"));
}

TEST_CASE("sim emits preset scenarios that parse back") {
  const std::string path = (g_dir / "emitted.json").string();
  const std::string dir = (g_dir / "emit_runs").string();
  const RunResult r = run("sim --preset magnet_separation --t-end 0.5 --out-dir " + dir +
                          " --emit-scenario " + path);
  CHECK(r.exit_code == 0);
  const RunResult rerun = run("sim --scenario " + path + " --out-dir " + dir + "_b");
  CHECK(rerun.exit_code == 0);
  CHECK(slurp(dir + "_b/magnet_separation_trajectory.csv") ==
        slurp(dir + "/magnet_separation_trajectory.csv"));
}

TEST_CASE("verify subcommand") {
  const RunResult flow_only = run("verify --only flow.");
  CHECK(flow_only.exit_code == 0);
  CHECK(contains(flow_only.out, "flow.half_ratio_at_thickness"));
  CHECK_FALSE(contains(flow_only.out, "design.thickness"));

  const std::string report_path = (g_dir / "report.json").string();
  const RunResult full = run("verify --json " + report_path);
  CHECK(full.exit_code == 0);
  CHECK(contains(full.out, "all checks passed"));

  // The JSON report mirrors the table's pass/fail set.
  const nlohmann::json report = nlohmann::json::parse(slurp(report_path));
  CHECK(report.at("all_pass").get<bool>());
  const auto& checks = report.at("checks");
  CHECK(checks.size() >= 30);
  for (const auto& c : checks) {
    CAPTURE(c.at("name").get<std::string>());
    CHECK(c.at("pass").get<bool>());
    CHECK(contains(full.out, c.at("name").get<std::string>()));
  }

  const RunResult conservation = run("verify --only conservation");
  CHECK(conservation.exit_code == 0);
  CHECK(contains(conservation.out, "rotation.conservation_angular_momentum"));
  CHECK(contains(conservation.out, "separation.conservation_momentum"));
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-airfilm-cli> [doctest args]\n", argv[0]);
    return 2;
  }
  g_cli = argv[1];
  g_dir = std::filesystem::temp_directory_path() /
          ("airfilm_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(g_dir);

  doctest::Context context;
  context.applyCommandLine(argc - 1, argv + 1);
  const int rc = context.run();
  std::error_code ec;
  std::filesystem::remove_all(g_dir, ec);
  return rc;
}

// Command-line front end: runs declarative simulation scenarios and the
// built-in verification suites.
//
// Exit codes: 0 all checks pass, 1 at least one check failed,
//             2 configuration error (the message names the field),
//             3 numerical blow-up during integration.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "epmech/integrators.hpp"
#include "epmech/scenario.hpp"
#include "epmech/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitBlowup = 3;

void print_check(const epmech::CheckResult& c) {
  std::printf("[%s] %-36s value=%-13.6g tol=%g\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
              c.value, c.tolerance);
}

int run_command(const std::string& config_path, const std::string& output_dir, double dt_override,
                double t_end_override) {
  epmech::BuiltScenario scenario;
  try {
    scenario = epmech::build_scenario(epmech::parse_scenario_file(config_path));
    if (dt_override > 0.0) scenario.stepper.dt = dt_override;
    if (t_end_override > 0.0) scenario.stepper.t_end = t_end_override;
    epmech::validate_stepper_config(scenario.stepper);
  } catch (const epmech::ScenarioError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfigError;
  }

  try {
    const epmech::ScenarioResult res = epmech::run_scenario(scenario, output_dir);
    std::printf("system: %s   steps: %g   samples: %zu\n", res.scenario.system.id.c_str(),
                res.scenario.stepper.t_end / res.scenario.stepper.dt, res.trajectory.samples.size());
    for (const auto& c : res.report.checks) print_check(c);
    std::printf("trajectory: %s\nreport:     %s\n", res.csv_path.c_str(), res.report_path.c_str());
    return res.report.all_pass() ? kExitPass : kExitCheckFailed;
  } catch (const epmech::BlowupError& e) {
    std::fprintf(stderr, "simulation diverged: %s\n", e.what());
    return kExitBlowup;
  }
}

int verify_command(const std::string& suite) {
  std::vector<epmech::CheckResult> checks;
  try {
    checks = epmech::verify_suite(suite);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  }
  int failed = 0;
  for (const auto& c : checks) {
    print_check(c);
    if (!c.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed == 0 ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler-Poincare mechanics: simulation runner and verification oracles"};
  app.require_subcommand(1);

  std::string config_path, output_dir = "out";
  double dt_override = 0.0, t_end_override = 0.0;
  CLI::App* run = app.add_subcommand("run", "integrate a scenario file");
  run->add_option("--config", config_path, "scenario file (key = value lines)")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--output-dir", output_dir, "directory for the CSV trajectory and JSON report");
  run->add_option("--dt", dt_override, "override the scenario time step");
  run->add_option("--t-end", t_end_override, "override the scenario end time");

  std::string suite = "all";
  CLI::App* verify = app.add_subcommand("verify", "run a built-in verification suite");
  verify->add_option("suite", suite, "one of: algebra, rigid-body, heavy-top, pendulum, "
                                     "euler-lagrange, all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }

  if (run->parsed()) return run_command(config_path, output_dir, dt_override, t_end_override);
  return verify_command(suite);
}

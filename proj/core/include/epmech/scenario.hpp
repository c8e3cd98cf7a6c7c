#pragma once

#include <map>
#include <string>

#include "epmech/report.hpp"

/// Declarative simulation runs: a flat key = value scenario format, the
/// systems it can instantiate, CSV trajectory output and a JSON conservation
/// report.  Every configuration error names the offending field so callers
/// can map it to a diagnostic exit code.
namespace epmech {

/// Configuration-file error; the message always names the field or line.
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parsed but not yet validated scenario: raw key/value pairs in file order.
struct ScenarioConfig {
  std::map<std::string, std::string> values;
};

ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig parse_scenario_file(const std::string& path);

/// Scenario resolved against a concrete system.
struct BuiltScenario {
  std::string name;
  SystemSpec system;
  EPState init;
  StepperConfig stepper;
  std::map<std::string, double> tolerance_overrides;
};

/// Validates every field (unknown keys, missing keys, malformed numbers and
/// out-of-range values all raise ScenarioError naming the field) and builds
/// the system plus its initial state.
BuiltScenario build_scenario(const ScenarioConfig& cfg);

/// RFC-4180 CSV rendering of a trajectory (CRLF rows, %.17g numbers): time,
/// algebra velocity, momentum, the configuration in ambient coordinates
/// (row-major for rotation matrices) and the recorded invariants.
std::string trajectory_to_csv(const Trajectory& traj);

struct ScenarioResult {
  BuiltScenario scenario;
  Trajectory trajectory;
  InvariantReport report;
  std::string csv_path;
  std::string report_path;
};

/// Runs a built scenario and writes <name>.csv and <name>_report.json into
/// output_dir (created if absent).  Numerical divergence propagates as
/// BlowupError.
ScenarioResult run_scenario(const BuiltScenario& scenario, const std::string& output_dir);

}  // namespace epmech

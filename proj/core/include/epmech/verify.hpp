#pragma once

#include <string>
#include <vector>

#include "epmech/report.hpp"

/// Self-contained verification suites: each builds its own systems and
/// trajectories, runs a battery of independent cross-checks and returns one
/// CheckResult per property.  Shared by the command-line `verify` command and
/// the test binaries.
namespace epmech {

std::vector<CheckResult> verify_algebra();
std::vector<CheckResult> verify_rigid_body();
std::vector<CheckResult> verify_heavy_top();
std::vector<CheckResult> verify_pendulum();
std::vector<CheckResult> verify_euler_lagrange();

/// Names accepted by verify_suite, "all" included.
std::vector<std::string> verify_suite_names();

/// Runs one suite by name ("algebra", "rigid-body", "heavy-top", "pendulum",
/// "euler-lagrange" or "all").  Throws std::invalid_argument for unknown
/// names.
std::vector<CheckResult> verify_suite(const std::string& name);

}  // namespace epmech

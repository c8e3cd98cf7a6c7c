#pragma once

#include <map>
#include <string>
#include <vector>

#include "epmech/integrators.hpp"

namespace epmech {

struct InvariantDrift {
  std::string name;
  double initial = 0.0;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Conservation summary of one trajectory: per-invariant drifts plus
/// pass/fail checks against tolerances.
struct InvariantReport {
  int schema = 1;
  std::string system_id;
  std::vector<InvariantDrift> invariants;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

/// Builds the report from a recorded trajectory.  Relative drift divides by
/// max(|initial|, 1e-3 * largest initial invariant magnitude) so components
/// that start near zero are measured against the system's invariant scale.
InvariantReport build_report(const SystemSpec& sys, const Trajectory& traj,
                             const std::map<std::string, double>& tolerance_overrides = {});

/// Deterministic JSON rendering (fixed key order, 17 significant digits).
std::string report_to_json(const InvariantReport& report);

}  // namespace epmech

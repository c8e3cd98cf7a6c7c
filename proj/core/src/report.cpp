#include "epmech/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace epmech {

bool InvariantReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

InvariantReport build_report(const SystemSpec& sys, const Trajectory& traj,
                             const std::map<std::string, double>& tolerance_overrides) {
  if (traj.samples.empty()) {
    throw std::invalid_argument("build_report: trajectory has no samples");
  }
  InvariantReport rep;
  rep.system_id = traj.system_id;

  const Eigen::VectorXd& first = traj.invariant_rows.front();
  const double scale = first.size() > 0 ? first.cwiseAbs().maxCoeff() : 0.0;

  for (std::size_t i = 0; i < sys.invariants.size(); ++i) {
    const auto& spec = sys.invariants[i];
    InvariantDrift d;
    d.name = spec.name;
    d.initial = first[static_cast<int>(i)];
    for (const auto& row : traj.invariant_rows) {
      d.max_abs_drift = std::max(d.max_abs_drift, std::abs(row[static_cast<int>(i)] - d.initial));
    }
    const double denom =
        std::max({std::abs(d.initial), spec.scale_floor, 1e-3 * scale, 1e-300});
    d.max_rel_drift = d.max_abs_drift / denom;
    rep.invariants.push_back(d);

    CheckResult c;
    c.name = spec.name + "_drift";
    const auto it = tolerance_overrides.find(spec.name);
    c.tolerance = (it != tolerance_overrides.end()) ? it->second : spec.default_tol;
    c.value = d.max_rel_drift;
    c.pass = c.value <= c.tolerance;
    rep.checks.push_back(c);
  }
  return rep;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string report_to_json(const InvariantReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = report.schema;
  j["system"] = report.system_id;
  j["invariants"] = nlohmann::ordered_json::array();
  for (const auto& d : report.invariants) {
    nlohmann::ordered_json e;
    e["name"] = d.name;
    // numbers as strings keep the rendering bit-identical across platforms
    e["initial"] = fmt17(d.initial);
    e["max_abs_drift"] = fmt17(d.max_abs_drift);
    e["max_rel_drift"] = fmt17(d.max_rel_drift);
    j["invariants"].push_back(e);
  }
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["value"] = fmt17(c.value);
    e["tolerance"] = fmt17(c.tolerance);
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  return j.dump(2) + "\n";
}

}  // namespace epmech

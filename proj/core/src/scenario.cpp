#include "epmech/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "epmech/integrators.hpp"

namespace epmech {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ScenarioError("field '" + field + "': not a number: '" + text + "'");
  }
  return value;
}

/// Tracks which fields were consumed so leftovers can be reported by name.
class FieldReader {
public:
  explicit FieldReader(const std::map<std::string, std::string>& values) : values_(values) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string take_string(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ScenarioError("missing required field '" + key + "'");
    used_.insert(key);
    return it->second;
  }

  std::string take_string(const std::string& key, const std::string& fallback) {
    return has(key) ? take_string(key) : fallback;
  }

  double take_number(const std::string& key) { return parse_number(key, take_string(key)); }

  double take_number(const std::string& key, double fallback) {
    return has(key) ? take_number(key) : fallback;
  }

  int take_int(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const double v = take_number(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw ScenarioError("field '" + key + "': expected an integer");
    }
    return i;
  }

  std::vector<std::string> leftovers() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) {
      if (used_.count(k) == 0) out.push_back(k);
    }
    return out;
  }

  const std::string& raw(const std::string& key) {
    used_.insert(key);
    return values_.at(key);
  }

private:
  const std::map<std::string, std::string>& values_;
  std::set<std::string> used_;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ScenarioError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ScenarioError("line " + std::to_string(line_no) + ": empty field name");
    }
    if (!cfg.values.emplace(key, value).second) {
      throw ScenarioError("duplicate field '" + key + "'");
    }
  }
  return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

namespace {

void check_name(const std::string& name) {
  if (name.empty()) throw ScenarioError("field 'name': must not be empty");
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      throw ScenarioError("field 'name': only letters, digits, '-' and '_' are allowed");
    }
  }
}

InertiaOperator read_inertia(FieldReader& r) {
  const double i1 = r.take_number("I1");
  const double i2 = r.take_number("I2");
  const double i3 = r.take_number("I3");
  for (const auto& [key, v] : {std::pair{"I1", i1}, {"I2", i2}, {"I3", i3}}) {
    if (v <= 0.0) throw ScenarioError(std::string("field '") + key + "': must be positive");
  }
  return InertiaOperator::diagonal(i1, i2, i3);
}

AlgebraVector read_omega(FieldReader& r) {
  return algebra3(
      Vec3(r.take_number("omega1"), r.take_number("omega2"), r.take_number("omega3")));
}

}  // namespace

BuiltScenario build_scenario(const ScenarioConfig& cfg) {
  FieldReader r(cfg.values);
  BuiltScenario out;

  const std::string system = r.take_string("system");
  out.name = r.take_string("name", system);
  check_name(out.name);

  out.stepper.dt = r.take_number("dt", 1e-3);
  out.stepper.t_end = r.take_number("t_end", 1.0);
  out.stepper.record_every = r.take_int("record_every", 1);
  out.stepper.reorthonormalize_every = r.take_int("reorthonormalize_every", 0);
  const std::string scheme = r.take_string("scheme", "rk4");
  if (scheme == "rk4") {
    out.stepper.scheme = Scheme::rk4;
  } else if (scheme == "midpoint") {
    out.stepper.scheme = Scheme::midpoint;
  } else {
    throw ScenarioError("field 'scheme': expected 'rk4' or 'midpoint', got '" + scheme + "'");
  }
  try {
    validate_stepper_config(out.stepper);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }

  if (system == "free-rigid-body") {
    out.system = make_free_rigid_body(read_inertia(r));
    const AlgebraVector omega = read_omega(r);
    const Vec3 rot(r.take_number("rot_x", 0.0), r.take_number("rot_y", 0.0),
                   r.take_number("rot_z", 0.0));
    out.init = make_state(out.system, 0.0, exp_so3(rot), omega);
  } else if (system == "heavy-top") {
    const InertiaOperator inertia = read_inertia(r);
    const double mass = r.take_number("mass");
    const double gravity = r.take_number("gravity");
    if (mass <= 0.0) throw ScenarioError("field 'mass': must be positive");
    const Vec3 com(r.take_number("com_x"), r.take_number("com_y"), r.take_number("com_z"));
    out.system = make_heavy_top(inertia, mass, gravity, com);
    const AlgebraVector omega = read_omega(r);
    const Vec3 rot(r.take_number("rot_x", 0.0), r.take_number("rot_y", 0.0),
                   r.take_number("rot_z", 0.0));
    out.init = make_state(out.system, 0.0, exp_so3(rot), omega);
  } else if (system == "spherical-pendulum") {
    const double mass = r.take_number("mass", 1.0);
    const double radius = r.take_number("radius", 1.0);
    if (mass <= 0.0) throw ScenarioError("field 'mass': must be positive");
    if (radius <= 0.0) throw ScenarioError("field 'radius': must be positive");
    const Vec3 g(r.take_number("g_x", 0.0), r.take_number("g_y", 0.0),
                 r.take_number("g_z", -9.81));
    out.system = make_spherical_pendulum(mass, radius, g);
    const Vec3 x(r.take_number("x1"), r.take_number("x2"), r.take_number("x3"));
    const Vec3 v(r.take_number("v1"), r.take_number("v2"), r.take_number("v3"));
    if (std::abs(x.norm() - radius) > 1e-9 * std::max(radius, 1.0)) {
      throw ScenarioError("field 'x1..x3': initial position must lie on the sphere");
    }
    if (std::abs(x.dot(v)) > 1e-9 * std::max(1.0, radius * v.norm())) {
      throw ScenarioError("field 'v1..v3': initial velocity must be tangent to the sphere");
    }
    // Minimal-norm lift of the tangent velocity.
    const AlgebraVector omega = algebra3(x.cross(v) / (radius * radius));
    out.init = make_state(out.system, 0.0, SpherePoint{x}, omega);
  } else if (system == "harmonic-oscillator") {
    const double mass = r.take_number("mass", 1.0);
    const double stiffness = r.take_number("stiffness");
    if (mass <= 0.0) throw ScenarioError("field 'mass': must be positive");
    if (stiffness <= 0.0) throw ScenarioError("field 'stiffness': must be positive");
    out.system = make_harmonic_oscillator(mass, stiffness);
    Eigen::VectorXd x(1), v(1);
    x[0] = r.take_number("x0");
    v[0] = r.take_number("v0");
    out.init = make_state(out.system, 0.0, x, AlgebraVector{v});
  } else {
    throw ScenarioError(
        "field 'system': unknown system '" + system +
        "' (expected free-rigid-body, heavy-top, spherical-pendulum or harmonic-oscillator)");
  }

  for (const std::string& key : r.leftovers()) {
    if (key.rfind("tol_", 0) == 0) {
      const std::string invariant = key.substr(4);
      const bool known = std::any_of(
          out.system.invariants.begin(), out.system.invariants.end(),
          [&](const InvariantSpec& s) { return s.name == invariant; });
      if (!known) {
        throw ScenarioError("field '" + key + "': system has no invariant '" + invariant + "'");
      }
      out.tolerance_overrides[invariant] = parse_number(key, r.raw(key));
    } else {
      throw ScenarioError("unknown field '" + key + "'");
    }
  }
  return out;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  if (traj.samples.empty()) throw std::invalid_argument("trajectory_to_csv: no samples");

  std::ostringstream out;
  const auto& first = traj.samples.front();
  const int vdim = first.V.dim();

  out << "t";
  if (std::holds_alternative<Eigen::VectorXd>(first.gamma)) {
    const int n = static_cast<int>(std::get<Eigen::VectorXd>(first.gamma).size());
    for (int i = 1; i <= n; ++i) out << ",x" << i;
  } else if (std::holds_alternative<SpherePoint>(first.gamma)) {
    for (int i = 1; i <= 3; ++i) out << ",x" << i;
  }
  for (int i = 1; i <= vdim; ++i) out << ",V" << i;
  for (int i = 1; i <= vdim; ++i) out << ",mu" << i;
  if (std::holds_alternative<Rotation>(first.gamma)) {
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) out << ",g" << i << j;
  }
  for (const auto& name : traj.invariant_names) out << "," << name;
  out << "\r\n";

  for (std::size_t s = 0; s < traj.samples.size(); ++s) {
    const auto& smp = traj.samples[s];
    out << fmt17(smp.t);
    if (std::holds_alternative<Eigen::VectorXd>(smp.gamma)) {
      const auto& x = std::get<Eigen::VectorXd>(smp.gamma);
      for (int i = 0; i < x.size(); ++i) out << "," << fmt17(x[i]);
    } else if (std::holds_alternative<SpherePoint>(smp.gamma)) {
      const Vec3& x = std::get<SpherePoint>(smp.gamma).x;
      for (int i = 0; i < 3; ++i) out << "," << fmt17(x[i]);
    }
    for (int i = 0; i < vdim; ++i) out << "," << fmt17(smp.V.coeffs[i]);
    for (int i = 0; i < vdim; ++i) out << "," << fmt17(smp.mu.coeffs[i]);
    if (std::holds_alternative<Rotation>(smp.gamma)) {
      const Mat3& g = std::get<Rotation>(smp.gamma).m;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out << "," << fmt17(g(i, j));
    }
    if (s < traj.invariant_rows.size()) {
      const auto& row = traj.invariant_rows[s];
      for (int i = 0; i < row.size(); ++i) out << "," << fmt17(row[i]);
    }
    out << "\r\n";
  }
  return out.str();
}

ScenarioResult run_scenario(const BuiltScenario& scenario, const std::string& output_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(output_dir);

  ScenarioResult res;
  res.scenario = scenario;
  res.trajectory = simulate(scenario.system, scenario.init, scenario.stepper);
  res.report = build_report(scenario.system, res.trajectory, scenario.tolerance_overrides);

  res.csv_path = (fs::path(output_dir) / (scenario.name + ".csv")).string();
  res.report_path = (fs::path(output_dir) / (scenario.name + "_report.json")).string();
  {
    std::ofstream csv(res.csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + res.csv_path);
    csv << trajectory_to_csv(res.trajectory);
  }
  {
    std::ofstream rep(res.report_path, std::ios::binary);
    if (!rep) throw std::runtime_error("cannot write " + res.report_path);
    rep << report_to_json(res.report);
  }
  return res;
}

}  // namespace epmech

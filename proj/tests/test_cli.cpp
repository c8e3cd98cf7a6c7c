#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

// Runs the installed-style binary and captures combined stdout/stderr.
RunResult run_cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "epmech_cli_output.txt";
  const std::string cmd = std::string(EPMECH_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return {WEXITSTATUS(raw), text};
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "epmech_cli_cfg";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << body;
  return p;
}

const char* kGood = R"(
system = free-rigid-body
I1 = 1
I2 = 2
I3 = 3
omega1 = 1
omega2 = 0.1
omega3 = 0.1
dt = 1e-3
t_end = 0.5
record_every = 50
name = cli_smoke
)";

}  // namespace

TEST_CASE("run: passing scenario exits 0 and writes artifacts") {
  const fs::path cfg = write_config("good.cfg", kGood);
  const fs::path outdir = fs::temp_directory_path() / "epmech_cli_out";
  fs::remove_all(outdir);
  const RunResult r =
      run_cli("run --config " + cfg.string() + " --output-dir " + outdir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("[PASS]") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
  CHECK(fs::exists(outdir / "cli_smoke.csv"));
  CHECK(fs::exists(outdir / "cli_smoke_report.json"));
  fs::remove_all(outdir);
}

TEST_CASE("run: failed conservation check exits 1") {
  const fs::path cfg = write_config("tight.cfg", std::string(kGood) + "tol_casimir = 1e-300\n");
  const fs::path outdir = fs::temp_directory_path() / "epmech_cli_out1";
  const RunResult r =
      run_cli("run --config " + cfg.string() + " --output-dir " + outdir.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("[FAIL]") != std::string::npos);
  fs::remove_all(outdir);
}

TEST_CASE("run: configuration errors exit 2 and name the field") {
  const fs::path cfg = write_config("bad.cfg", std::string(kGood) + "banana = 1\n");
  const RunResult r = run_cli("run --config " + cfg.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("banana") != std::string::npos);

  const RunResult missing = run_cli("run --config /nonexistent.cfg");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("run: numerical divergence exits 3") {
  // step far outside the rk4 stability region: each step multiplies the
  // amplitude ~400x
  const char* unstable = R"(
system = harmonic-oscillator
stiffness = 100
x0 = 1
v0 = 0
dt = 1
t_end = 20
)";
  const fs::path cfg = write_config("unstable.cfg", unstable);
  const fs::path outdir = fs::temp_directory_path() / "epmech_cli_out3";
  const RunResult r =
      run_cli("run --config " + cfg.string() + " --output-dir " + outdir.string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("blow-up") != std::string::npos);
  fs::remove_all(outdir);
}

TEST_CASE("run: command-line overrides reach the stepper") {
  const fs::path cfg = write_config("good.cfg", kGood);
  const fs::path outdir = fs::temp_directory_path() / "epmech_cli_out4";
  fs::remove_all(outdir);
  const RunResult r = run_cli("run --config " + cfg.string() + " --output-dir " +
                              outdir.string() + " --t-end 0.2 --dt 2e-3");
  CHECK(r.exit_code == 0);
  // 100 steps at record_every 50 -> 3 samples -> header + 3 rows
  std::ifstream csv(outdir / "cli_smoke.csv");
  std::string text((std::istreambuf_iterator<char>(csv)), std::istreambuf_iterator<char>());
  std::size_t rows = 0, pos = 0;
  while ((pos = text.find("\r\n", pos)) != std::string::npos) {
    ++rows;
    pos += 2;
  }
  CHECK(rows == 4);
  fs::remove_all(outdir);
}

TEST_CASE("verify: suites run clean and unknown names are diagnosed") {
  const RunResult all = run_cli("verify algebra");
  CHECK(all.exit_code == 0);
  CHECK(all.output.find("[PASS]") != std::string::npos);
  CHECK(all.output.find("0 failed") != std::string::npos);

  const RunResult bad = run_cli("verify nonsense");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("nonsense") != std::string::npos);
}

TEST_CASE("no subcommand is a usage error") {
  const RunResult r = run_cli("");
  CHECK(r.exit_code == 2);
}

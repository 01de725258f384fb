#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

fs::path make_temp_dir() {
  static std::mt19937_64 rng(std::random_device{}());
  const fs::path dir =
      fs::temp_directory_path() / ("biphoton_cli_" + std::to_string(rng()));
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string &args, const fs::path &workdir) {
  const fs::path log = workdir / "cli_output.log";
  const std::string cmd =
      std::string(BIPHOTON_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream buf;
  buf << in.rdbuf();
  int code = -1;
  if (WIFEXITED(status))
    code = WEXITSTATUS(status);
  return {code, buf.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path &p, const std::string &content) {
  std::ofstream out(p);
  out << content;
}

std::size_t count_occurrences(const std::string &hay, const std::string &needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

} // namespace

TEST_CASE("rate: dip config prints matching engines and exits 0") {
  const fs::path dir = make_temp_dir();
  const RunResult r = run_cli("--out " + dir.string() + " rate", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("analytic=0.000000000") != std::string::npos);
  double analytic = 1.0, numeric = 1.0, delta = 1.0;
  REQUIRE(std::sscanf(r.output.c_str(), "analytic=%lf numeric=%lf delta=%lf", &analytic, &numeric,
                      &delta) == 3);
  CHECK(std::abs(numeric) <= 1e-9);
  CHECK(std::abs(delta) <= 1e-9);
  CHECK(fs::exists(dir / "resolved-config.txt"));
  fs::remove_all(dir);
}

TEST_CASE("rate: closed form tracks quadrature away from the dip") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "run.cfg", "tau_fs = 100\npump_phase_rad = 0.6\n");
  const RunResult r =
      run_cli("--config " + (dir / "run.cfg").string() + " --out " + dir.string() + " rate", dir);
  CHECK(r.exit_code == 0);
  double analytic = 0.0, numeric = 0.0, delta = 1.0;
  REQUIRE(std::sscanf(r.output.c_str(), "analytic=%lf numeric=%lf delta=%lf", &analytic, &numeric,
                      &delta) == 3);
  CHECK(analytic > 0.0);
  CHECK(std::abs(delta) <= 1e-4 * std::max(analytic, 0.1));
  fs::remove_all(dir);
}

TEST_CASE("malformed config key exits 2 and names the key") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "bad.cfg", "tau_fzz = 1\n");
  const RunResult r =
      run_cli("--config " + (dir / "bad.cfg").string() + " --out " + dir.string() + " rate", dir);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("tau_fzz") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("starved quadrature exits 3 with the achieved estimate") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "coarse.cfg",
             "tau_fs = 130\nquad_panels_per_axis = 4\nquad_nodes_per_panel = 2\n"
             "quad_box_padding = 4\n");
  const RunResult r = run_cli(
      "--config " + (dir / "coarse.cfg").string() + " --out " + dir.string() + " rate", dir);
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("achieved estimate") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("scan: writes CSV + SVG, reruns byte-identically, round-trips its dump") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "scan.cfg", "pump_phase_rad = 0\nscan_steps = 41\n");
  const std::string svg_path = (dir / "curve.svg").string();
  const RunResult r1 = run_cli("--config " + (dir / "scan.cfg").string() + " --out " +
                                   dir.string() + " scan --svg " + svg_path,
                               dir);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("visibility=1.000000000") != std::string::npos);
  REQUIRE(fs::exists(dir / "scan.csv"));
  const std::string csv1 = slurp(dir / "scan.csv");

  // SVG structure: one polyline, two axis lines
  REQUIRE(fs::exists(svg_path));
  const std::string svg = slurp(svg_path);
  CHECK(count_occurrences(svg, "<svg") == 1);
  CHECK(count_occurrences(svg, "<polyline") == 1);
  CHECK(count_occurrences(svg, "class=\"axis\"") == 2);
  CHECK(count_occurrences(svg, "</svg>") == 1);

  // identical rerun
  const fs::path dir2 = make_temp_dir();
  const RunResult r2 = run_cli(
      "--config " + (dir / "scan.cfg").string() + " --out " + dir2.string() + " scan", dir2);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(dir2 / "scan.csv") == csv1);

  // rerun from the resolved dump reproduces the same outputs
  const fs::path dir3 = make_temp_dir();
  const RunResult r3 = run_cli("--config " + (dir / "resolved-config.txt").string() + " --out " +
                                   dir3.string() + " scan",
                               dir3);
  CHECK(r3.exit_code == 0);
  CHECK(slurp(dir3 / "scan.csv") == csv1);
  CHECK(slurp(dir3 / "resolved-config.txt") == slurp(dir / "resolved-config.txt"));

  // the opposite phase setting turns the dip into the doubled-rate peak
  write_file(dir / "peak.cfg", "pump_phase_rad = 3.141592653589793\nscan_steps = 41\n");
  const RunResult r4 = run_cli(
      "--config " + (dir / "peak.cfg").string() + " --out " + dir3.string() + " scan", dir3);
  CHECK(r4.exit_code == 0);
  CHECK(r4.output.find("visibility=1.000000000") != std::string::npos);
  CHECK(r4.output.find("extremum_rate=2.000000000") != std::string::npos);
  CHECK(slurp(dir3 / "scan.csv") != csv1);

  fs::remove_all(dir);
  fs::remove_all(dir2);
  fs::remove_all(dir3);
}

TEST_CASE("mc: seeded runs are byte-identical; zero pulses exit 2") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "mc.cfg", "scan_steps = 5\nmc_pulses = 50000\n");
  const std::string base = "--config " + (dir / "mc.cfg").string() + " --out " + dir.string() +
                           " mc --seed 7 --svg " + (dir / "counts.svg").string();
  const RunResult r1 = run_cli(base, dir);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("visibility=") != std::string::npos);
  const std::string counts1 = slurp(dir / "counts.csv");
  CHECK(counts1.find("tau_fs,singles3,singles4,coincidences,pulses") == 0);
  CHECK(count_occurrences(slurp(dir / "counts.svg"), "<polyline") == 1);

  const RunResult r2 = run_cli(base, dir);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(dir / "counts.csv") == counts1);

  write_file(dir / "mc0.cfg", "mc_pulses = 0\n");
  const RunResult r3 =
      run_cli("--config " + (dir / "mc0.cfg").string() + " --out " + dir.string() + " mc", dir);
  CHECK(r3.exit_code == 2);
  fs::remove_all(dir);
}

TEST_CASE("pathways: four rows, channel grouping, dip cancellation") {
  const fs::path dir = make_temp_dir();
  const RunResult r = run_cli(
      "--out " + dir.string() + " pathways --t 10 --tprime 700", dir);
  CHECK(r.exit_code == 0);
  CHECK(count_occurrences(r.output, "Psi1 HV r-r H@D3,V@D4") == 1);
  CHECK(count_occurrences(r.output, "Psi2 HV t-t V@D3,H@D4") == 1);
  CHECK(count_occurrences(r.output, "Psi3 VH r-r V@D3,H@D4") == 1);
  CHECK(count_occurrences(r.output, "Psi4 VH t-t H@D3,V@D4") == 1);

  // dip config: the paired alternatives cancel exactly
  double mod = 1.0, phv = 1.0;
  const std::size_t pos = r.output.find("|Psi1+Psi4|=");
  REQUIRE(pos != std::string::npos);
  REQUIRE(std::sscanf(r.output.c_str() + pos, "|Psi1+Psi4|=%lf P_HV=%lf", &mod, &phv) == 2);
  CHECK(mod == 0.0);
  CHECK(phv == 0.0);
  fs::remove_all(dir);
}

TEST_CASE("bad usage exits 2") {
  const fs::path dir = make_temp_dir();
  CHECK(run_cli("frobnicate", dir).exit_code == 2);
  CHECK(run_cli("", dir).exit_code == 2);
  CHECK(run_cli("pathways", dir).exit_code == 2); // missing required --t/--tprime
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory exits 4") {
  const fs::path dir = make_temp_dir();
  write_file(dir / "blocker", "a regular file, not a directory\n");
  const RunResult r = run_cli("--out " + (dir / "blocker" / "sub").string() + " rate", dir);
  CHECK(r.exit_code == 4);
  fs::remove_all(dir);
}

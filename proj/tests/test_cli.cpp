#include "lubrisim/commands.hpp"
#include "lubrisim/scenario.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace lubrisim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("lubrisim_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("LUBRISIM_LOG=quiet ") + LUBRISIM_EXE + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("number formatting") {
  CHECK(format_csv_number(0.1) == "0.10000000000000001");
  CHECK(format_csv_number(-2.5) == "-2.5");
  CHECK(format_csv_number(1e-20) == "9.9999999999999995e-21");
  CHECK(snapshot_file_name(100.0) == "t100.csv");
  CHECK(snapshot_file_name(0.0) == "t0.csv");
  CHECK(snapshot_file_name(2.5) == "t2.5.csv");
}

TEST_CASE("csv output ignores the C locale") {
  const char* previous = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = previous ? previous : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") || std::setlocale(LC_NUMERIC, "fr_FR.UTF-8")) {
    CHECK(format_csv_number(0.5) == "0.5");
    std::setlocale(LC_NUMERIC, saved.c_str());
  }
  const Grid g(5, 1.0, Boundary::periodic);
  std::ostringstream os;
  write_profile_csv(os, g, State::uniform(g, 1.0, 0.5));
  CHECK(os.str().rfind("x,eta,gamma\n0,1,0.5\n0.20000000000000001,1,0.5\n", 0) == 0);
}

TEST_CASE("simulate writes one file per snapshot") {
  for (const auto& info : preset_names()) {
    CAPTURE(info.name);
    TempDir dir(std::string("sim_") + std::string(info.name));
    const auto sc = preset(info.name);
    REQUIRE(cmd_simulate(sc, dir.path) == kExitOk);
    for (double t : sc.snapshots) {
      const auto file = dir.path / snapshot_file_name(t);
      REQUIRE(fs::exists(file));
      CHECK(count_lines(file) == sc.nodes + 1);
    }
    const auto report = slurp(dir.path / "run_report.txt");
    CHECK(report.find("film_mass_drift") != std::string::npos);
    CHECK(report.find("surfactant_mass_drift") != std::string::npos);
    CHECK(report.find("wall_time_s") != std::string::npos);
  }
}

TEST_CASE("simulation output is deterministic") {
  TempDir a("det_a"), b("det_b");
  const auto sc = preset("fig3");
  REQUIRE(cmd_simulate(sc, a.path) == kExitOk);
  REQUIRE(cmd_simulate(sc, b.path) == kExitOk);
  for (double t : sc.snapshots) CHECK(slurp(a.path / snapshot_file_name(t)) == slurp(b.path / snapshot_file_name(t)));
}

TEST_CASE("solver failure exit status") {
  TempDir dir("rupture");
  Scenario sc = preset("fig3");
  sc.boundary = Boundary::periodic;
  sc.params.hamaker = 5.0;
  sc.initial.amplitude = 0.5;
  sc.step.dt = 0.05;
  sc.t_end = 1000.0;
  sc.snapshots = {};
  CHECK(cmd_simulate(sc, dir.path) == kExitSolverFailure);
}

TEST_CASE("dispersion command") {
  TempDir dir("disp");
  CHECK(cmd_dispersion(1e-4, 2.0, 101, dir.path / "d.csv") == kExitOk);
  CHECK(count_lines(dir.path / "d.csv") == 102);
  CHECK(cmd_dispersion(1e-4, 2.0, 2, dir.path / "two.csv") == kExitOk);
  CHECK(count_lines(dir.path / "two.csv") == 3);
  CHECK(cmd_dispersion(1e-4, 0.0, 10, dir.path / "bad.csv") == kExitConfigError);
  CHECK(cmd_dispersion(-1.0, 1.0, 10, dir.path / "bad.csv") == kExitConfigError);
}

TEST_CASE("model comparison") {
  const auto sc = preset("fig2");
  const std::vector<double> peclet{3.0, 30.0, 300.0};

  SUBCASE("identical variants do not differ") {
    const auto rep = compare_variants(sc, ModelVariant::full_cm, ModelVariant::full_cm, peclet, 10.0);
    REQUIRE(rep.entries.size() == 3);
    for (const auto& e : rep.entries) {
      CHECK(e.linf_eta == 0.0);
      CHECK(e.linf_gamma == 0.0);
      CHECK(e.l2_gamma == 0.0);
    }
  }

  SUBCASE("zero comparison time compares the shared initial state") {
    const auto rep = compare_variants(sc, ModelVariant::full_cm, ModelVariant::de_wit, peclet, 0.0);
    for (const auto& e : rep.entries) {
      CHECK(e.linf_eta == 0.0);
      CHECK(e.linf_gamma == 0.0);
    }
  }

  SUBCASE("entries keep the requested order and norms are consistent") {
    const auto rep = compare_variants(sc, ModelVariant::full_cm, ModelVariant::de_wit, peclet, 10.0);
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& e = rep.entries[k];
      CHECK(e.peclet == peclet[k]);
      CHECK(e.linf_gamma > 0.0);
      CHECK(e.linf_gamma == lubrisim::testing::max_abs(e.d_gamma));
      CHECK(e.l2_gamma <= e.linf_gamma * std::sqrt(sc.length) * (1.0 + 1e-12));
    }
  }

  SUBCASE("files") {
    TempDir dir("compare");
    REQUIRE(cmd_compare(sc, ModelVariant::full_cm, ModelVariant::de_wit, peclet, 10.0, dir.path) == kExitOk);
    for (const char* f : {"diff_P3.csv", "diff_P30.csv", "diff_P300.csv"}) CHECK(count_lines(dir.path / f) == 98);
    CHECK(count_lines(dir.path / "summary.csv") == 4);
    const std::vector<double> bad{-3.0};
    CHECK(cmd_compare(sc, ModelVariant::full_cm, ModelVariant::de_wit, bad, 10.0, dir.path) == kExitConfigError);
  }
}

TEST_CASE("command-line front end") {
  TempDir dir("cli");
  const std::string out = dir.path.string();
  CHECK(run_cli("preset-list") == 0);
  CHECK(run_cli("simulate --preset fig3 --t-end 15 --out " + out + "/sim") == 0);
  CHECK(fs::exists(dir.path / "sim" / "t15.csv"));
  CHECK_FALSE(fs::exists(dir.path / "sim" / "t30.csv"));
  CHECK(run_cli("simulate --preset fig2 --variant dewit --delta-s 0.01 --dt 10 --nodes 49 --t-end 10 --out " + out +
                "/small") == 0);
  CHECK(count_lines(dir.path / "small" / "t10.csv") == 50);
  CHECK(run_cli("dispersion --delta-s 1e-4 --k-max 2 --points 11 --out " + out + "/disp.csv") == 0);
  CHECK(count_lines(dir.path / "disp.csv") == 12);
  CHECK(run_cli("compare --preset fig2 --peclet 3,30 --t-end 5 --out " + out + "/cmp") == 0);
  CHECK(fs::exists(dir.path / "cmp" / "diff_P30.csv"));

  CHECK(run_cli("simulate --preset nope --out " + out) == 2);
  CHECK(run_cli("simulate --preset fig2 --variant navier --out " + out) == 2);
  CHECK(run_cli("simulate --preset fig2 --nodes 3 --out " + out) == 2);
  CHECK(run_cli("simulate --preset fig2 --delta-s -1 --out " + out) == 2);
  CHECK(run_cli("dispersion --k-max 0 --out " + out + "/x.csv") == 2);
  CHECK(run_cli("frobnicate") == 2);

  {
    std::ofstream cfg(dir.path / "bad.json");
    cfg << "{\"grid\": {\"nodes\": 97,}}";
  }
  CHECK(run_cli("simulate --config " + out + "/bad.json --out " + out) == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

std::string cli_path() { return FWMC_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string cmd = "\"" + cli_path() + "\" " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  return WIFEXITED(st) ? WEXITSTATUS(st) : -2;
}

fs::path scratch_dir() {
  const fs::path d = fs::current_path() / "cli_scratch";
  fs::create_directories(d);
  return d;
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = scratch_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kPurityConfig = R"({
  "scenario": "cli-test-purity",
  "guide_a": {"kind": "fiber"},
  "coupling": {"kind": "constant", "kappa_per_m": 250.0},
  "process": {"branch": "odd", "lambda_p1_um": 0.532, "lambda_p2_um": 1.55},
  "jsa": {
    "sigma_p1_nm": 1.0,
    "lambda_s_center_um": 0.789, "s_halfspan_nm": 3.0,
    "lambda_i_center_um": 0.795, "i_halfspan_nm": 3.0,
    "grid_n": 64, "length_m": 0.01,
    "apodization": {"profile": "none"}
  }
})";

const char* kContourConfig = R"({
  "scenario": "cli-test-contours",
  "guide_a": {"kind": "fiber"},
  "process": {"branch": "odd", "lambda_p1_um": 0.532, "lambda_p2_um": 1.55},
  "contours": {
    "lambda_p1_lo_um": 0.52, "lambda_p1_hi_um": 0.56,
    "n_samples": 4, "kappa_list_per_m": [250.0]
  }
})";

const char* kPropagateConfig = R"({
  "scenario": "cli-test-propagate",
  "simulation": {
    "grid_size": 256, "time_window_ps": 8.0,
    "length_m": 0.002, "dz_m": 1e-5,
    "gamma_per_w_m": 0.01, "delta_k_per_m": 100.0,
    "lambda_p1_um": 0.532, "lambda_p2_um": 1.55,
    "lambda_s_um": 0.792, "lambda_i_um": 0.792,
    "kappa_p2_per_m": 500.0,
    "p1_w": 10.0, "p2_w": 5.0,
    "signal_seed_w": 1e-6, "record_stride": 50,
    "launches": ["odd"]
  }
})";

}  // namespace

TEST_CASE("bad invocations exit with distinct codes") {
  CHECK(run_cli("purity --config " + (scratch_dir() / "no_such.json").string()) == 2);

  const auto unknown = write_config("unknown_key.json", R"({
    "guide_a": {"kind": "fiber"}, "mystery_key": 1,
    "process": {"lambda_p1_um": 0.532, "lambda_p2_um": 1.55},
    "jsa": {"sigma_p1_nm": 1.0, "lambda_s_center_um": 0.789, "s_halfspan_nm": 3.0,
            "lambda_i_center_um": 0.795, "i_halfspan_nm": 3.0, "grid_n": 64, "length_m": 0.01}
  })");
  CHECK(run_cli("purity --config " + unknown.string()) == 2);

  const auto broken = write_config("broken.json", "{ not json");
  CHECK(run_cli("purity --config " + broken.string()) == 2);

  // well-formed config whose geometry has no guided mode: domain failure
  const auto unguided = write_config("unguided.json", R"({
    "guide_a": {"kind": "rectangular", "width_um": 0.05, "height_um": 0.05,
                 "polarization": "TM", "lambda_lo_um": 1.21, "lambda_hi_um": 1.95},
    "process": {"lambda_p1_um": 1.265, "lambda_p2_um": 1.59},
    "jsa": {"sigma_p1_nm": 2.0, "lambda_s_center_um": 1.342, "s_halfspan_nm": 6.0,
            "lambda_i_center_um": 1.482, "i_halfspan_nm": 8.0, "grid_n": 64, "length_m": 0.015}
  })");
  CHECK(run_cli("purity --config " + unguided.string()) == 3);
}

TEST_CASE("purity runs are byte-for-byte reproducible") {
  const auto cfg = write_config("purity.json", kPurityConfig);
  const fs::path o1 = scratch_dir() / "purity1", o2 = scratch_dir() / "purity2";
  REQUIRE(run_cli("purity --config " + cfg.string() + " --out " + o1.string()) == 0);
  REQUIRE(run_cli("purity --config " + cfg.string() + " --out " + o2.string()) == 0);
  const std::string s1 = slurp(o1 / "schmidt.json");
  CHECK(s1 == slurp(o2 / "schmidt.json"));
  CHECK(slurp(o1 / "manifest.json") == slurp(o2 / "manifest.json"));
  // sanity on the reported purity
  CHECK(s1.find("\"purity\"") != std::string::npos);
}

TEST_CASE("contour scenario emits one file per branch and a manifest") {
  const auto cfg = write_config("contours.json", kContourConfig);
  const fs::path out = scratch_dir() / "contours";
  REQUIRE(run_cli("contours --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(fs::exists(out / "contour_none.csv"));
  CHECK(fs::exists(out / "contour_even_kappa250.csv"));
  CHECK(fs::exists(out / "contour_odd_kappa250.csv"));
  const std::string m = slurp(out / "manifest.json");
  CHECK(m.find("cli-test-contours") != std::string::npos);
  CHECK(m.find("config_fnv1a64") != std::string::npos);
  const std::string csv = slurp(out / "contour_none.csv");
  CHECK(csv.rfind("branch,lambda_p1_um", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 5);  // header + 4 pump columns
}

TEST_CASE("propagation scenario reruns identically") {
  const auto cfg = write_config("propagate.json", kPropagateConfig);
  const fs::path o1 = scratch_dir() / "prop1", o2 = scratch_dir() / "prop2";
  REQUIRE(run_cli("propagate --config " + cfg.string() + " --out " + o1.string()) == 0);
  REQUIRE(run_cli("propagate --config " + cfg.string() + " --out " + o2.string()) == 0);
  const std::string r1 = slurp(o1 / "propagate_odd.csv");
  CHECK(r1 == slurp(o2 / "propagate_odd.csv"));
  CHECK(r1.rfind("z_m,", 0) == 0);
  CHECK(slurp(o1 / "manifest.json").find("manley_rowe_residual") != std::string::npos);
}

// Batch front end: every pipeline stage as a subcommand over JSON configs,
// emitting CSV/JSON artifacts plus a manifest that pins the run down exactly.
#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fwmc/coupledmode.hpp"
#include "fwmc/designsearch.hpp"
#include "fwmc/fiber.hpp"
#include "fwmc/jsa.hpp"
#include "fwmc/phasematch.hpp"
#include "fwmc/propagation.hpp"
#include "fwmc/rectwg.hpp"
#include "fwmc/units.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ---- strict JSON access -------------------------------------------------

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw config_error(where + ": expected a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw config_error(where + ": unknown key '" + it.key() + "'");
    }
  }
}

double need_num(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw config_error(where + ": missing key '" + key + "'");
  if (!obj[key].is_number()) throw config_error(where + "." + key + ": expected a number");
  return obj[key].get<double>();
}

double opt_num(const json& obj, const std::string& where, const std::string& key, double dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number()) throw config_error(where + "." + key + ": expected a number");
  return obj[key].get<double>();
}

long need_int(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw config_error(where + ": missing key '" + key + "'");
  if (!obj[key].is_number_integer()) throw config_error(where + "." + key + ": expected an integer");
  return obj[key].get<long>();
}

long opt_int(const json& obj, const std::string& where, const std::string& key, long dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_number_integer()) throw config_error(where + "." + key + ": expected an integer");
  return obj[key].get<long>();
}

std::string need_str(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw config_error(where + ": missing key '" + key + "'");
  if (!obj[key].is_string()) throw config_error(where + "." + key + ": expected a string");
  return obj[key].get<std::string>();
}

std::string opt_str(const json& obj, const std::string& where, const std::string& key,
                    const std::string& dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_string()) throw config_error(where + "." + key + ": expected a string");
  return obj[key].get<std::string>();
}

bool opt_bool(const json& obj, const std::string& where, const std::string& key, bool dflt) {
  if (!obj.contains(key)) return dflt;
  if (!obj[key].is_boolean()) throw config_error(where + "." + key + ": expected a boolean");
  return obj[key].get<bool>();
}

const json& need_obj(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) throw config_error(where + ": missing block '" + key + "'");
  if (!obj[key].is_object()) throw config_error(where + "." + key + ": expected an object");
  return obj[key];
}

// ---- config -> domain objects ------------------------------------------

struct Run {
  json cfg;
  fs::path cfg_dir;
  fs::path out;
  std::string scenario;
  std::uint64_t cfg_hash = 0;
  int threads = 1;
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

fwmc::DispersionPtr parse_dispersion(const json& d, const std::string& where,
                                     const fs::path& cfg_dir) {
  reject_unknown(d, where,
                 {"kind", "core_radius_um", "core_index_step", "width_um", "height_um",
                  "polarization", "lambda_lo_um", "lambda_hi_um", "path"});
  const std::string kind = need_str(d, where, "kind");
  if (kind == "fiber") {
    fwmc::FiberParams p;
    p.core_radius_um = opt_num(d, where, "core_radius_um", p.core_radius_um);
    p.core_index_step = opt_num(d, where, "core_index_step", p.core_index_step);
    return std::make_shared<fwmc::FiberProvider>(p);
  }
  if (kind == "rectangular") {
    const std::string pol = need_str(d, where, "polarization");
    if (pol != "TE" && pol != "TM") throw config_error(where + ".polarization: TE or TM");
    return std::make_shared<fwmc::RectProvider>(
        need_num(d, where, "width_um"), need_num(d, where, "height_um"),
        pol == "TE" ? fwmc::Polarization::TE : fwmc::Polarization::TM,
        opt_num(d, where, "lambda_lo_um", 1.20), opt_num(d, where, "lambda_hi_um", 1.95));
  }
  if (kind == "tabulated") {
    return fwmc::load_tabulated_csv((cfg_dir / need_str(d, where, "path")).string());
  }
  throw config_error(where + ".kind: fiber, rectangular, or tabulated");
}

fwmc::CouplingModel parse_coupling(const json& c, const std::string& where,
                                   const fs::path& cfg_dir) {
  reject_unknown(c, where,
                 {"kind", "kappa_per_m", "kappa0_per_m", "lambda0_um", "rate_per_um",
                  "core_radius_um", "core_index_step", "separation_um", "path"});
  const std::string kind = need_str(c, where, "kind");
  if (kind == "constant") {
    return fwmc::CouplingModel::constant(need_num(c, where, "kappa_per_m"));
  }
  if (kind == "exponential") {
    return fwmc::CouplingModel::exponential(need_num(c, where, "kappa0_per_m"),
                                            need_num(c, where, "lambda0_um"),
                                            need_num(c, where, "rate_per_um"));
  }
  if (kind == "fiber") {
    fwmc::FiberParams p;
    p.core_radius_um = opt_num(c, where, "core_radius_um", p.core_radius_um);
    p.core_index_step = opt_num(c, where, "core_index_step", p.core_index_step);
    return fwmc::CouplingModel::fiber(p, p, need_num(c, where, "separation_um"));
  }
  if (kind == "tabulated") {
    return fwmc::load_coupling_csv((cfg_dir / need_str(c, where, "path")).string());
  }
  throw config_error(where + ".kind: constant, exponential, fiber, or tabulated");
}

fwmc::ProcessConfig parse_process(const Run& run) {
  const json& p = need_obj(run.cfg, "config", "process");
  reject_unknown(p, "process",
                 {"branch", "full_supermode", "lambda_p1_um", "lambda_p2_um", "gamma_per_w_m",
                  "power_w"});
  fwmc::ProcessConfig pc;
  pc.guide_a = parse_dispersion(need_obj(run.cfg, "config", "guide_a"), "guide_a", run.cfg_dir);
  if (run.cfg.contains("guide_b")) {
    pc.guide_b = parse_dispersion(run.cfg["guide_b"], "guide_b", run.cfg_dir);
  }
  if (run.cfg.contains("coupling")) {
    pc.coupling = parse_coupling(run.cfg["coupling"], "coupling", run.cfg_dir);
  }
  pc.branch = fwmc::branch_from_name(opt_str(p, "process", "branch", "none"));
  pc.full_supermode = opt_bool(p, "process", "full_supermode", false);
  pc.lambda_p1_um = need_num(p, "process", "lambda_p1_um");
  pc.lambda_p2_um = need_num(p, "process", "lambda_p2_um");
  pc.gamma_per_w_m = opt_num(p, "process", "gamma_per_w_m", 0.0);
  pc.power_w = opt_num(p, "process", "power_w", 0.0);
  return pc;
}

fwmc::SimulationConfig parse_simulation(const Run& run) {
  const json& s = need_obj(run.cfg, "config", "simulation");
  reject_unknown(s, "simulation",
                 {"time_window_ps", "grid_size", "length_m", "dz_m", "gamma_per_w_m",
                  "delta_k_per_m", "lambda_p1_um", "lambda_p2_um", "lambda_s_um", "lambda_i_um",
                  "kappa_p2_per_m", "p1_w", "p2_w", "pulse_duration_ps", "launches",
                  "signal_seed_w", "vacuum_noise", "rng_seed", "record_stride"});
  fwmc::SimulationConfig c;
  c.time_window_ps = opt_num(s, "simulation", "time_window_ps", c.time_window_ps);
  c.grid_size = static_cast<int>(opt_int(s, "simulation", "grid_size", c.grid_size));
  c.length_m = need_num(s, "simulation", "length_m");
  c.dz_m = need_num(s, "simulation", "dz_m");
  c.gamma_per_w_m = need_num(s, "simulation", "gamma_per_w_m");
  c.delta_k_per_m = opt_num(s, "simulation", "delta_k_per_m", 0.0);
  c.lambda_um[int(fwmc::Field::P1)] = need_num(s, "simulation", "lambda_p1_um");
  c.lambda_um[int(fwmc::Field::P2)] = need_num(s, "simulation", "lambda_p2_um");
  c.lambda_um[int(fwmc::Field::S)] = need_num(s, "simulation", "lambda_s_um");
  c.lambda_um[int(fwmc::Field::I)] = need_num(s, "simulation", "lambda_i_um");
  c.kappa_per_m[int(fwmc::Field::P2)] = opt_num(s, "simulation", "kappa_p2_per_m", 0.0);
  c.p1_w = need_num(s, "simulation", "p1_w");
  c.p2_w = need_num(s, "simulation", "p2_w");
  c.pulse_duration_ps = opt_num(s, "simulation", "pulse_duration_ps", 0.0);
  c.signal_seed_w = opt_num(s, "simulation", "signal_seed_w", c.signal_seed_w);
  c.vacuum_noise = opt_bool(s, "simulation", "vacuum_noise", false);
  c.rng_seed = static_cast<std::uint64_t>(opt_int(s, "simulation", "rng_seed", 0));
  c.record_stride = static_cast<int>(opt_int(s, "simulation", "record_stride", c.record_stride));
  return c;
}

std::vector<fwmc::LaunchCondition> parse_launches(const Run& run) {
  const json& s = need_obj(run.cfg, "config", "simulation");
  std::vector<fwmc::LaunchCondition> out;
  if (!s.contains("launches")) return {fwmc::LaunchCondition::odd};
  if (!s["launches"].is_array()) throw config_error("simulation.launches: expected an array");
  for (const auto& l : s["launches"]) {
    if (!l.is_string()) throw config_error("simulation.launches: expected strings");
    out.push_back(fwmc::launch_from_name(l.get<std::string>()));
  }
  if (out.empty()) throw config_error("simulation.launches: needs at least one entry");
  return out;
}

struct JsaSetup {
  fwmc::PumpSpec pump;
  fwmc::JsaAxes axes;
  double length_m = 0.0;
  std::unique_ptr<fwmc::ApodizationProfile> profile;
  bool two_term = false;
};

JsaSetup parse_jsa(const Run& run) {
  const json& jj = need_obj(run.cfg, "config", "jsa");
  reject_unknown(jj, "jsa",
                 {"sigma_p1_nm", "sigma_p2_nm", "lambda_s_center_um", "lambda_i_center_um",
                  "s_halfspan_nm", "i_halfspan_nm", "grid_n", "length_m", "apodization",
                  "two_term"});
  const json& p = need_obj(run.cfg, "config", "process");
  JsaSetup out;
  out.pump.lambda_p1_um = need_num(p, "process", "lambda_p1_um");
  out.pump.lambda_p2_um = need_num(p, "process", "lambda_p2_um");
  out.pump.sigma_p1_nm = need_num(jj, "jsa", "sigma_p1_nm");
  out.pump.sigma_p2_nm = opt_num(jj, "jsa", "sigma_p2_nm", 0.0);
  out.axes = fwmc::JsaAxes::centered(
      need_num(jj, "jsa", "lambda_s_center_um"), need_num(jj, "jsa", "s_halfspan_nm"),
      need_num(jj, "jsa", "lambda_i_center_um"), need_num(jj, "jsa", "i_halfspan_nm"),
      static_cast<int>(need_int(jj, "jsa", "grid_n")));
  out.length_m = need_num(jj, "jsa", "length_m");
  out.two_term = opt_bool(jj, "jsa", "two_term", false);
  if (jj.contains("apodization")) {
    const json& a = jj["apodization"];
    reject_unknown(a, "jsa.apodization", {"profile", "samples", "sigma_fraction"});
    const std::string prof = need_str(a, "jsa.apodization", "profile");
    const int ns = static_cast<int>(opt_int(a, "jsa.apodization", "samples", 1024));
    if (prof == "none") {
      // closed-form uniform kernel
    } else if (prof == "uniform") {
      out.profile = std::make_unique<fwmc::ApodizationProfile>(
          fwmc::ApodizationProfile::uniform(ns, out.length_m));
    } else if (prof == "raised_cosine") {
      out.profile = std::make_unique<fwmc::ApodizationProfile>(
          fwmc::ApodizationProfile::raised_cosine(ns, out.length_m));
    } else if (prof == "gaussian") {
      out.profile = std::make_unique<fwmc::ApodizationProfile>(fwmc::ApodizationProfile::gaussian(
          ns, out.length_m, opt_num(a, "jsa.apodization", "sigma_fraction", 0.125)));
    } else {
      throw config_error("jsa.apodization.profile: none, uniform, raised_cosine, or gaussian");
    }
  }
  return out;
}

// ---- artifact writers ---------------------------------------------------

std::ofstream open_out(Run& run, const std::string& name) {
  fs::create_directories(run.out);
  std::ofstream f(run.out / name, std::ios::binary);
  if (!f) throw config_error("cannot open output file: " + (run.out / name).string());
  run.outputs.push_back(name);
  return f;
}

void write_manifest(Run& run, const json& extra) {
  json m;
  m["scenario"] = run.scenario;
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, run.cfg_hash);
  m["config_fnv1a64"] = hash;
  m["seed"] = run.seed;
  m["artifact_version"] = "1.0.0";
  m["outputs"] = run.outputs;
  if (!extra.is_null()) m["summary"] = extra;
  std::ofstream f(run.out / "manifest.json", std::ios::binary);
  f << m.dump(2) << "\n";
}

void write_contours(Run& run, const std::string& name, const fwmc::ContourSet& set) {
  auto f = open_out(run, name);
  f << "branch,lambda_p1_um,lambda_s_um,lambda_i_um,mismatch_per_m\n";
  const std::string b = fwmc::branch_name(set.branch);
  for (const auto& pl : set.polylines) {
    for (const auto& v : pl) {
      f << b << ',' << g17(v.lambda_p1_um) << ',' << g17(v.lambda_s_um) << ','
        << g17(v.lambda_i_um) << ',' << g17(v.mismatch_per_m) << '\n';
    }
  }
}

// ---- subcommands --------------------------------------------------------

int cmd_contours(Run& run) {
  auto pc = parse_process(run);
  const json& c = need_obj(run.cfg, "config", "contours");
  reject_unknown(c, "contours",
                 {"lambda_p1_lo_um", "lambda_p1_hi_um", "n_samples", "kappa_list_per_m",
                  "collapse"});
  const double lo = need_num(c, "contours", "lambda_p1_lo_um");
  const double hi = need_num(c, "contours", "lambda_p1_hi_um");
  const int n = static_cast<int>(need_int(c, "contours", "n_samples"));
  std::vector<double> kappas;
  if (c.contains("kappa_list_per_m")) {
    if (!c["kappa_list_per_m"].is_array()) {
      throw config_error("contours.kappa_list_per_m: expected an array");
    }
    for (const auto& k : c["kappa_list_per_m"]) {
      if (!k.is_number()) throw config_error("contours.kappa_list_per_m: expected numbers");
      kappas.push_back(k.get<double>());
    }
  }

  json summary;
  {
    fwmc::ProcessConfig p0 = pc;
    p0.branch = fwmc::Branch::none;
    auto set = fwmc::solve_contours(p0, lo, hi, n);
    write_contours(run, "contour_none.csv", set);
    summary["none"]["polylines"] = set.polylines.size();
  }
  for (double k : kappas) {
    char suffix[48];
    std::snprintf(suffix, sizeof suffix, "%g", k);
    for (fwmc::Branch br : {fwmc::Branch::even, fwmc::Branch::odd}) {
      fwmc::ProcessConfig p = pc;
      p.branch = br;
      p.coupling = fwmc::CouplingModel::constant(k);
      auto set = fwmc::solve_contours(p, lo, hi, n);
      const std::string name =
          "contour_" + fwmc::branch_name(br) + "_kappa" + suffix + ".csv";
      write_contours(run, name, set);
      std::size_t nv = 0;
      for (const auto& pl : set.polylines) nv += pl.size();
      summary[fwmc::branch_name(br)]["kappa" + std::string(suffix)] = {
          {"polylines", set.polylines.size()}, {"vertices", nv}};
    }
  }
  if (c.contains("collapse")) {
    const json& col = c["collapse"];
    reject_unknown(col, "contours.collapse", {"branch", "kappa_lo_per_m", "kappa_hi_per_m"});
    fwmc::ProcessConfig p = pc;
    p.branch = fwmc::branch_from_name(opt_str(col, "contours.collapse", "branch", "odd"));
    auto res = fwmc::collapse_kappa(p, need_num(col, "contours.collapse", "kappa_lo_per_m"),
                                    need_num(col, "contours.collapse", "kappa_hi_per_m"));
    summary["collapse"] = {{"kappa_star_per_m", res.kappa_star_per_m},
                           {"degenerate_lambda_um", res.degenerate_lambda_um}};
  }
  write_manifest(run, summary);
  return 0;
}

void write_record(Run& run, const std::string& name, const fwmc::PropagationRecord& rec) {
  auto f = open_out(run, name);
  f << "z_m,P_p1A,P_p2A,P_sA,P_iA,P_p1B,P_p2B,P_sB,P_iB\n";
  for (std::size_t i = 0; i < rec.z_m.size(); ++i) {
    f << g17(rec.z_m[i]);
    for (int q = 0; q < 4; ++q) f << ',' << g17(rec.power_a_w[i][q]);
    for (int q = 0; q < 4; ++q) f << ',' << g17(rec.power_b_w[i][q]);
    f << '\n';
  }
}

int cmd_propagate(Run& run) {
  auto sim = parse_simulation(run);
  if (run.seed_set) sim.rng_seed = run.seed;
  run.seed = sim.rng_seed;
  json summary;
  for (auto launch : parse_launches(run)) {
    sim.launch = launch;
    auto rec = fwmc::propagate(sim);
    write_record(run, "propagate_" + fwmc::launch_name(launch) + ".csv", rec);
    summary[fwmc::launch_name(launch)] = {
        {"manley_rowe_residual", rec.manley_rowe_residual()},
        {"nonlinear_phase_warning", rec.nonlinear_phase_warning}};
  }
  write_manifest(run, summary);
  return 0;
}

int cmd_gain_scan(Run& run) {
  auto sim = parse_simulation(run);
  if (run.seed_set) sim.rng_seed = run.seed;
  run.seed = sim.rng_seed;
  const json& g = need_obj(run.cfg, "config", "gain_scan");
  reject_unknown(g, "gain_scan", {"launch", "kappa_lo_per_m", "kappa_hi_per_m", "n_points"});
  sim.launch = fwmc::launch_from_name(opt_str(g, "gain_scan", "launch", "odd"));
  auto points = fwmc::gain_scan(sim, need_num(g, "gain_scan", "kappa_lo_per_m"),
                                need_num(g, "gain_scan", "kappa_hi_per_m"),
                                static_cast<int>(need_int(g, "gain_scan", "n_points")),
                                run.threads);
  auto f = open_out(run, "gain_scan_" + fwmc::launch_name(sim.launch) + ".csv");
  f << "kappa_per_m,gain_db\n";
  const fwmc::GainPoint* peak = &points.front();
  for (const auto& p : points) {
    f << g17(p.kappa_per_m) << ',' << g17(p.gain_db) << '\n';
    if (p.gain_db > peak->gain_db) peak = &p;
  }
  json summary = {{"peak_kappa_per_m", peak->kappa_per_m}, {"peak_gain_db", peak->gain_db}};
  write_manifest(run, summary);
  return 0;
}

int cmd_jsa(Run& run) {
  auto pc = parse_process(run);
  auto setup = parse_jsa(run);
  auto js = fwmc::build_jsa(pc, setup.pump, setup.axes, setup.length_m, setup.profile.get(),
                            setup.two_term);
  const int n_s = static_cast<int>(js.lambda_s_um.size());
  const int n_i = static_cast<int>(js.lambda_i_um.size());
  double peak = 0.0;
  for (int i = 0; i < n_s; ++i) {
    for (int j = 0; j < n_i; ++j) peak = std::fmax(peak, std::norm(js.f(i, j)));
  }
  const double scale = peak > 0.0 ? 1.0 / peak : 1.0;
  auto f = open_out(run, "jsi.csv");
  f << "# lambda_s_um";
  for (double l : js.lambda_s_um) f << ',' << g17(l);
  f << "\n# lambda_i_um";
  for (double l : js.lambda_i_um) f << ',' << g17(l);
  f << '\n';
  for (int i = 0; i < n_s; ++i) {
    for (int j = 0; j < n_i; ++j) {
      if (j) f << ',';
      f << g17(std::norm(js.f(i, j)) * scale);
    }
    f << '\n';
  }
  write_manifest(run, json());
  return 0;
}

int cmd_purity(Run& run) {
  auto pc = parse_process(run);
  auto setup = parse_jsa(run);
  auto js = fwmc::build_jsa(pc, setup.pump, setup.axes, setup.length_m, setup.profile.get(),
                            setup.two_term);
  auto res = fwmc::schmidt(js);
  json out;
  out["singular_values"] = res.singular_values;
  out["schmidt_number"] = res.schmidt_number;
  out["purity"] = res.purity;
  auto f = open_out(run, "schmidt.json");
  f << out.dump(2) << '\n';
  write_manifest(run, json{{"purity", res.purity}, {"schmidt_number", res.schmidt_number}});
  return 0;
}

int cmd_sweep(Run& run) {
  const json& s = need_obj(run.cfg, "config", "search");
  reject_unknown(s, "search",
                 {"lambda_p1_um", "lambda_p2_um", "lambda_s_um", "tolerance_per_m",
                  "require_gvm", "length_m", "polarization", "branch", "kappa0_per_m",
                  "lambda0_um", "rate_per_um", "s0_um", "ell_s_um", "bounds_um", "samples",
                  "refine_best"});
  fwmc::DesignTarget t;
  t.lambda_p1_um = need_num(s, "search", "lambda_p1_um");
  t.lambda_p2_um = need_num(s, "search", "lambda_p2_um");
  t.lambda_s_um = need_num(s, "search", "lambda_s_um");
  t.tolerance_per_m = opt_num(s, "search", "tolerance_per_m", t.tolerance_per_m);
  t.require_gvm = opt_bool(s, "search", "require_gvm", t.require_gvm);
  t.length_m = opt_num(s, "search", "length_m", t.length_m);
  const std::string pol = opt_str(s, "search", "polarization", "TM");
  if (pol != "TE" && pol != "TM") throw config_error("search.polarization: TE or TM");
  t.polarization = pol == "TE" ? fwmc::Polarization::TE : fwmc::Polarization::TM;
  t.branch = fwmc::branch_from_name(opt_str(s, "search", "branch", "odd"));
  t.kappa0_per_m = need_num(s, "search", "kappa0_per_m");
  t.lambda0_um = need_num(s, "search", "lambda0_um");
  t.rate_per_um = opt_num(s, "search", "rate_per_um", 0.0);
  t.s0_um = opt_num(s, "search", "s0_um", t.s0_um);
  t.ell_s_um = opt_num(s, "search", "ell_s_um", t.ell_s_um);

  const json& b = need_obj(s, "search", "bounds_um");
  reject_unknown(b, "search.bounds_um", {"w_a", "h_a", "w_b", "h_b", "s_ab"});
  const char* axes[5] = {"w_a", "h_a", "w_b", "h_b", "s_ab"};
  for (int a = 0; a < 5; ++a) {
    if (!b.contains(axes[a]) || !b[axes[a]].is_array() || b[axes[a]].size() != 2) {
      throw config_error(std::string("search.bounds_um.") + axes[a] + ": expected [lo, hi]");
    }
    t.bounds[a].lo = b[axes[a]][0].get<double>();
    t.bounds[a].hi = b[axes[a]][1].get<double>();
  }
  std::array<int, 5> samples{};
  if (!s.contains("samples") || !s["samples"].is_array() || s["samples"].size() != 5) {
    throw config_error("search.samples: expected an array of 5 integers");
  }
  for (int a = 0; a < 5; ++a) samples[a] = s["samples"][a].get<int>();

  auto ranked = fwmc::grid_sweep(t, samples);
  auto cand_json = [](const fwmc::Candidate& c) {
    json j;
    j["geometry"] = {{"w_a_um", c.geometry.w_a_um}, {"h_a_um", c.geometry.h_a_um},
                     {"w_b_um", c.geometry.w_b_um}, {"h_b_um", c.geometry.h_b_um},
                     {"s_ab_um", c.geometry.s_ab_um}};
    j["objective"] = c.objective;
    j["mismatch_per_m"] = c.mismatch_per_m;
    j["gvm_margin"] = c.gvm_margin;
    j["diagnostic"] = c.diagnostic;
    return j;
  };
  {
    auto f = open_out(run, "sweep.jsonl");
    for (const auto& c : ranked) f << cand_json(c).dump() << '\n';
  }
  json summary;
  summary["candidates"] = ranked.size();
  if (opt_bool(s, "search", "refine_best", true) && !ranked.empty() &&
      std::isfinite(ranked.front().objective)) {
    auto best = fwmc::refine(ranked.front(), t);
    summary["refined_best"] = cand_json(best);
  }
  write_manifest(run, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled-waveguide FWM pair-source toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  int threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  app.add_option("--config", config_path, "JSON scenario config")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads for independent runs");
  auto* seed_opt = app.add_option("--seed", seed, "noise seed override");
  const char* names[6] = {"contours", "gain-scan", "propagate", "jsa", "purity", "sweep"};
  const char* descs[6] = {"phase-matching contour families and collapse point",
                          "idler gain versus pump-2 coupling constant",
                          "split-step propagation records per launch condition",
                          "joint spectral intensity grid",
                          "Schmidt decomposition and heralded purity",
                          "geometry grid sweep with simplex refinement"};
  for (int i = 0; i < 6; ++i) app.add_subcommand(names[i], descs[i])->fallthrough();
  CLI11_PARSE(app, argc, argv);
  seed_set = seed_opt->count() > 0;

  try {
    Run run;
    std::ifstream f(config_path, std::ios::binary);
    if (!f) throw config_error("cannot read config file: " + config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string raw = ss.str();
    run.cfg_hash = fnv1a64(raw);
    try {
      run.cfg = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw config_error(std::string("config parse error: ") + e.what());
    }
    reject_unknown(run.cfg, "config",
                   {"scenario", "guide_a", "guide_b", "coupling", "process", "contours",
                    "simulation", "gain_scan", "jsa", "search"});
    run.scenario = opt_str(run.cfg, "config", "scenario", fs::path(config_path).stem().string());
    run.cfg_dir = fs::path(config_path).parent_path();
    run.out = out_dir;
    run.threads = threads > 0 ? threads : 1;
    run.seed = seed;
    run.seed_set = seed_set;

    const std::string sub = app.get_subcommands().front()->get_name();
    if (sub == "contours") return cmd_contours(run);
    if (sub == "gain-scan") return cmd_gain_scan(run);
    if (sub == "propagate") return cmd_propagate(run);
    if (sub == "jsa") return cmd_jsa(run);
    if (sub == "purity") return cmd_purity(run);
    return cmd_sweep(run);
  } catch (const config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const fwmc::numerical_error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 3;
  }
}

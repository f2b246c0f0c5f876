#include "fwmc/phasematch.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "fwmc/units.hpp"

namespace fwmc {

namespace {
constexpr double mismatch_tol = 1e-3;  // 1/m, contour solver tolerance
}

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::none: return "none";
    case Branch::even: return "even";
    case Branch::odd: return "odd";
  }
  return "?";
}

Branch branch_from_name(const std::string& name) {
  if (name == "none") return Branch::none;
  if (name == "even") return Branch::even;
  if (name == "odd") return Branch::odd;
  throw std::invalid_argument("unknown branch name: " + name);
}

void ProcessConfig::validate() const {
  if (!guide_a) throw std::invalid_argument("process: guide_a dispersion missing");
  if (full_supermode && !guide_b) {
    throw std::invalid_argument("process: full supermode treatment needs guide_b dispersion");
  }
  if (!(lambda_p1_um < lambda_p2_um)) {
    throw std::invalid_argument("process: requires lambda_p1 < lambda_p2");
  }
  if (gamma_per_w_m < 0.0 || power_w < 0.0) {
    throw std::invalid_argument("process: gamma and power must be >= 0");
  }
}

double ProcessConfig::degenerate_wavelength(double lp1) const {
  return 2.0 * lp1 * lambda_p2_um / (lp1 + lambda_p2_um);
}

double ProcessConfig::field_beta(double lambda_um, bool is_pump2) const {
  const double omega = omega_from_um(lambda_um);
  if (full_supermode) {
    if (branch == Branch::none) return guide_a->beta(omega);
    const auto e = supermodes(guide_a->beta(omega), guide_b->beta(omega),
                              coupling_eval(coupling, omega));
    return branch == Branch::even ? e.beta_plus : e.beta_minus;
  }
  double b = guide_a->beta(omega);
  if (is_pump2 && branch != Branch::none) {
    const double k = coupling_eval(coupling, omega);
    b += (branch == Branch::even) ? k : -k;
  }
  return b;
}

double idler_wavelength(double lp1_um, double lp2_um, double ls_um) {
  const double inv = 1.0 / lp1_um + 1.0 / lp2_um - 1.0 / ls_um;
  if (!(inv > 0.0)) {
    throw std::domain_error("idler_wavelength: nonpositive idler frequency");
  }
  return 1.0 / inv;
}

double phase_mismatch(const ProcessConfig& config, double ls_um) {
  config.validate();
  const double li = idler_wavelength(config.lambda_p1_um, config.lambda_p2_um, ls_um);
  const double dk = config.field_beta(config.lambda_p1_um, false) +
                    config.field_beta(config.lambda_p2_um, true) -
                    config.field_beta(ls_um, false) - config.field_beta(li, false);
  return dk - config.gamma_per_w_m * config.power_w;
}

namespace {

// Roots of the mismatch for a fixed pump sample. The scan covers
// ls in (lp1, ldeg] plus a small margin below lp1 so the branch solutions
// that hug the pump wavelength from the short side (ls slightly below lp1,
// idler slightly beyond lp2) are captured as well.
std::vector<ContourVertex> column_roots(const ProcessConfig& config, double lp1,
                                        int n_scan = 2001) {
  ProcessConfig c = config;
  c.lambda_p1_um = lp1;
  const double ldeg = c.degenerate_wavelength(lp1);
  const double h = (ldeg - lp1) / (n_scan - 1);
  const int n_below = 40;
  std::vector<ContourVertex> out;
  auto push = [&](double ls, double m) {
    out.push_back({lp1, ls, idler_wavelength(lp1, c.lambda_p2_um, ls), m});
  };
  auto mis = [&](double ls) { return phase_mismatch(c, ls); };
  double prev_ls = lp1 - n_below * h;
  double prev_m = mis(prev_ls);
  if (prev_m == 0.0) push(prev_ls, prev_m);
  for (int i = 1 - n_below; i < n_scan; ++i) {
    const double ls = (i == 0) ? lp1 : lp1 + h * i;
    const double m = mis(ls);
    if (m == 0.0) {
      push(ls, m);
    } else if ((m > 0.0) != (prev_m > 0.0) && prev_m != 0.0) {
      double a = prev_ls, b = ls, fa = prev_m, fm = m, mid = 0.5 * (a + b);
      for (int it = 0; it < 120; ++it) {
        mid = 0.5 * (a + b);
        fm = mis(mid);
        if (std::fabs(fm) < mismatch_tol) break;
        if ((fm > 0.0) == (fa > 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      push(mid, fm);
    }
    prev_ls = ls;
    prev_m = m;
  }
  std::sort(out.begin(), out.end(),
            [](const ContourVertex& u, const ContourVertex& v) {
              return u.lambda_s_um < v.lambda_s_um;
            });
  return out;
}

}  // namespace

ContourSet solve_contours(const ProcessConfig& config, double lp1_lo_um, double lp1_hi_um,
                          int n_samples) {
  config.validate();
  if (!(lp1_lo_um < lp1_hi_um) || n_samples < 2) {
    throw std::invalid_argument("solve_contours: bad pump range or sample count");
  }
  ContourSet set;
  set.branch = config.branch;
  // Contours drift by roughly one pump step per column, so the continuation
  // tolerance must cover a few column spacings.
  const double pump_step = (lp1_hi_um - lp1_lo_um) / (n_samples - 1);
  // Open polylines from the previous pump column, by index into set.polylines.
  std::vector<std::pair<std::size_t, double>> open;  // (polyline, last lambda_s)
  for (int ip = 0; ip < n_samples; ++ip) {
    const double lp1 = lp1_lo_um + pump_step * ip;
    auto roots = column_roots(config, lp1);
    const double match_tol =
        std::fmax(0.05 * (config.degenerate_wavelength(lp1) - lp1), 3.0 * pump_step);
    std::vector<std::pair<std::size_t, double>> next_open;
    std::vector<bool> taken(open.size(), false);
    for (const auto& v : roots) {
      // Continue the nearest still-open polyline within tolerance, else start anew.
      std::size_t best = open.size();
      double best_d = match_tol;
      for (std::size_t j = 0; j < open.size(); ++j) {
        if (taken[j]) continue;
        const double d = std::fabs(open[j].second - v.lambda_s_um);
        if (d <= best_d) {
          best_d = d;
          best = j;
        }
      }
      std::size_t line;
      if (best < open.size()) {
        taken[best] = true;
        line = open[best].first;
      } else {
        line = set.polylines.size();
        set.polylines.emplace_back();
      }
      set.polylines[line].push_back(v);
      next_open.emplace_back(line, v.lambda_s_um);
    }
    open.swap(next_open);
  }
  return set;
}

namespace {

std::optional<double> branch_root(const ProcessConfig& config, double kappa) {
  ProcessConfig c = config;
  c.coupling = CouplingModel::constant(kappa);
  auto roots = column_roots(c, c.lambda_p1_um);
  if (roots.empty()) return std::nullopt;
  return roots.back().lambda_s_um;  // root nearest degeneracy
}

}  // namespace

CollapseResult collapse_kappa(const ProcessConfig& config, double kappa_lo_per_m,
                              double kappa_hi_per_m) {
  config.validate();
  if (config.branch == Branch::none) {
    throw std::invalid_argument("collapse_kappa: needs a coupled branch (even or odd)");
  }
  if (!(kappa_lo_per_m < kappa_hi_per_m)) {
    throw std::invalid_argument("collapse_kappa: bad kappa range");
  }
  auto lo_root = branch_root(config, kappa_lo_per_m);
  if (!lo_root) {
    throw std::invalid_argument("collapse_kappa: no contour at range start");
  }
  if (branch_root(config, kappa_hi_per_m)) {
    throw std::invalid_argument("collapse_kappa: contour still present at range end");
  }
  double lo = kappa_lo_per_m, hi = kappa_hi_per_m;
  double last_root = *lo_root;
  while (hi - lo > 1e-6 * hi + 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (auto r = branch_root(config, mid)) {
      lo = mid;
      last_root = *r;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), last_root};
}

namespace {

// c dbeta/domega by Richardson-extrapolated central difference on the
// branch-resolved field dispersion.
double field_group_index(const ProcessConfig& config, double lambda_um, bool is_pump2) {
  const double omega = omega_from_um(lambda_um);
  const double h = 1e-4 * omega;
  auto bf = [&](double w) { return config.field_beta(um_from_omega(w), is_pump2); };
  auto central = [&](double step) { return (bf(omega + step) - bf(omega - step)) / (2.0 * step); };
  const double d_h = central(h), d_h2 = central(0.5 * h);
  return c_light * (4.0 * d_h2 - d_h) / 3.0;
}

}  // namespace

GvmReport gvm_report(const ProcessConfig& config, double ls_um) {
  config.validate();
  const double li = idler_wavelength(config.lambda_p1_um, config.lambda_p2_um, ls_um);
  GvmReport r;
  r.ng_p1 = field_group_index(config, config.lambda_p1_um, false);
  r.ng_p2 = field_group_index(config, config.lambda_p2_um, true);
  r.ng_s = field_group_index(config, ls_um, false);
  r.ng_i = field_group_index(config, li, false);
  r.margin = std::fmin(r.ng_s - r.ng_p1, r.ng_p1 - r.ng_i);
  r.ordered = r.margin >= 0.0;
  return r;
}

}  // namespace fwmc

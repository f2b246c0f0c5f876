#pragma once

#include <string>
#include <vector>

#include "fwmc/coupledmode.hpp"
#include "fwmc/dispersion.hpp"

namespace fwmc {

/// Which supermode shift enters the mismatch: none (isolated guide),
/// even (+kappa_p2), or odd (-kappa_p2).
enum class Branch { none, even, odd };

std::string branch_name(Branch b);
Branch branch_from_name(const std::string& name);

/// Dual-pump FWM process over one pair of guides. With full_supermode set,
/// all four fields propagate on the selected supermode branch of the
/// (guide_a, guide_b, coupling) system and no separate kappa shift is added;
/// otherwise fields use guide_a dispersion and the branch adds +/- kappa at
/// the long pump only.
struct ProcessConfig {
  DispersionPtr guide_a;
  DispersionPtr guide_b;  // unused unless full_supermode
  CouplingModel coupling = CouplingModel::constant(0.0);
  Branch branch = Branch::none;
  bool full_supermode = false;
  double lambda_p1_um = 0.532;
  double lambda_p2_um = 1.550;
  double gamma_per_w_m = 0.0;
  double power_w = 0.0;

  void validate() const;
  /// Degenerate signal/idler wavelength 2 lp1 lp2/(lp1+lp2) for a given lp1.
  double degenerate_wavelength(double lambda_p1_um) const;
  /// beta(omega) of the field at lambda (um) under this config's branch rules.
  double field_beta(double lambda_um, bool is_pump2) const;
};

/// Energy conservation: 1/li = 1/lp1 + 1/lp2 - 1/ls.
double idler_wavelength(double lp1_um, double lp2_um, double ls_um);

/// Branch-shifted phase mismatch (1/m) at signal wavelength ls.
double phase_mismatch(const ProcessConfig& config, double ls_um);

struct ContourVertex {
  double lambda_p1_um = 0;
  double lambda_s_um = 0;
  double lambda_i_um = 0;
  double mismatch_per_m = 0;
};

struct ContourSet {
  Branch branch = Branch::none;
  std::vector<std::vector<ContourVertex>> polylines;
};

/// Zero-mismatch contours over lp1 in [lp1_lo, lp1_hi] (n_samples pump
/// points); per pump point the signal interval (lp1, degenerate] is scanned
/// with 2001 brackets and roots are bisected to |mismatch| < 1e-3 /m.
ContourSet solve_contours(const ProcessConfig& config, double lp1_lo_um, double lp1_hi_um,
                          int n_samples);

struct CollapseResult {
  double kappa_star_per_m = 0;
  double degenerate_lambda_um = 0;
};

/// Bisect constant coupling strength over [kappa_lo, kappa_hi] for the
/// largest kappa at which the config's branch still has a zero-mismatch root
/// at fixed lambda_p1. Requires a root at kappa_lo and none at kappa_hi.
CollapseResult collapse_kappa(const ProcessConfig& config, double kappa_lo_per_m,
                              double kappa_hi_per_m);

struct GvmReport {
  double ng_p1 = 0, ng_p2 = 0, ng_s = 0, ng_i = 0;
  bool ordered = false;  // ng_s >= ng_p1 >= ng_i (v_gs <= v_gp1 <= v_gi)
  double margin = 0;     // min(ng_s - ng_p1, ng_p1 - ng_i)
};

GvmReport gvm_report(const ProcessConfig& config, double ls_um);

}  // namespace fwmc

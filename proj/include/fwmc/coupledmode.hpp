#pragma once

#include <limits>
#include <string>
#include <vector>

#include "fwmc/dispersion.hpp"
#include "fwmc/fiber.hpp"

namespace fwmc {

/// One per-frequency supermode record: mean and half-difference of the
/// isolated propagation constants, coupling, splitting, and both branches.
struct SupermodeEntry {
  double beta_bar = 0;    // (beta_a + beta_b)/2, 1/m
  double delta_beta = 0;  // (beta_a - beta_b)/2, 1/m
  double kappa = 0;       // 1/m
  double psi = 0;         // sqrt(delta_beta^2 + kappa^2)
  double beta_plus = 0;   // beta_bar + psi
  double beta_minus = 0;  // beta_bar - psi
};

SupermodeEntry supermodes(double beta_a, double beta_b, double kappa);

/// Normalized field coefficients (c_A, c_B) of the even (+) and odd (-)
/// supermodes. The even/odd ratio follows (delta_beta +/- psi)/(-kappa); the
/// kappa = 0 limit localizes each mode in one guide (assignment by the sign
/// of delta_beta), and the fully degenerate input returns the symmetric
/// 1/sqrt(2) pair with `degenerate` set.
struct SupermodeFields {
  double even_a = 0, even_b = 0;
  double odd_a = 0, odd_b = 0;
  bool degenerate = false;
};

SupermodeFields supermode_fields(double delta_beta, double kappa);

/// Full power-transfer period pi/psi (m); psi = 0 reports an infinite beat
/// length rather than an error.
double beat_length(double psi);

/// Frequency-dependent coupling constant kappa(omega) >= 0.
struct CouplingModel {
  enum class Kind { fiber, exponential, tabulated };
  Kind kind = Kind::exponential;

  // exponential-parametric: kappa0 * exp(rate * (lambda - lambda0))
  double kappa0_per_m = 0.0;
  double lambda0_um = 1.55;
  double rate_per_um = 0.0;

  // analytic-fiber
  FiberParams fiber_a, fiber_b;
  double separation_um = 0.0;

  // tabulated: spline of kappa against omega
  CubicSpline table;
  OmegaInterval table_domain{0, 0};

  static CouplingModel constant(double kappa_per_m);
  static CouplingModel exponential(double kappa0_per_m, double lambda0_um, double rate_per_um);
  static CouplingModel fiber(FiberParams a, FiberParams b, double separation_um);
  static CouplingModel tabulated(const std::vector<std::pair<double, double>>& rows);
};

double coupling_eval(const CouplingModel& model, double omega);

/// Parse a `wavelength_um,kappa_per_m` CSV ('#' comments) into a tabulated model.
CouplingModel load_coupling_csv(const std::string& path);

enum class SupermodeBranch { upper, lower };

/// Dispersion of one supermode branch of a pair of coupled guides.
class SupermodeProvider final : public DispersionProvider {
 public:
  SupermodeProvider(DispersionPtr guide_a, DispersionPtr guide_b, CouplingModel coupling,
                    SupermodeBranch branch);
  double beta(double omega) const override;
  OmegaInterval domain() const override { return dom_; }

 private:
  DispersionPtr a_, b_;
  CouplingModel coupling_;
  SupermodeBranch branch_;
  OmegaInterval dom_;
};

}  // namespace fwmc

#pragma once

#include "fwmc/dispersion.hpp"
#include "fwmc/sellmeier.hpp"

namespace fwmc {

/// Step-index fiber with a fused-silica-type cladding and a core raised by a
/// fractional index step: n_core = n_clad * (1 + core_index_step).
struct FiberParams {
  double core_radius_um = 4.1;
  double core_index_step = 0.0036;  // SMF28-like default
  const MaterialModel* cladding = &fused_silica();

  void validate() const;
  double n_cladding(double lambda_um) const;
  double n_core(double lambda_um) const;
  double v_parameter(double omega) const;
  bool single_mode(double omega) const;  // V below the LP11 cutoff 2.405
};

/// Normalized transverse core parameter u of the LP01 mode, from the scalar
/// step-index dispersion relation u J1(u)/J0(u) = w K1(w)/K0(w).
double lp01_u(const FiberParams& params, double omega);

/// LP01 propagation constant (1/m). Throws std::domain_error when the
/// frequency is outside the cladding material window or unguided.
double fiber_beta(const FiberParams& params, double omega);

/// DispersionProvider wrapping fiber_beta for a fixed geometry.
class FiberProvider final : public DispersionProvider {
 public:
  explicit FiberProvider(FiberParams params);
  double beta(double omega) const override;
  OmegaInterval domain() const override { return dom_; }
  const FiberParams& params() const { return params_; }

 private:
  FiberParams params_;
  OmegaInterval dom_;
};

/// Coupling constant between two identical parallel step-index cores with
/// center-to-center separation d (twin-core evanescent overlap formula).
double fiber_coupling(const FiberParams& pa, const FiberParams& pb,
                      double separation_um, double omega);

/// Separation at which fiber_coupling hits kappa_target, by bisection on the
/// monotone kappa(separation) curve over [sep_lo, sep_hi] um.
double separation_for_coupling(const FiberParams& params, double kappa_target,
                               double omega, double sep_lo_um, double sep_hi_um);

}  // namespace fwmc

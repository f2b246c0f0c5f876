#pragma once

#include <array>
#include <string>
#include <vector>

#include "fwmc/phasematch.hpp"
#include "fwmc/rectwg.hpp"

namespace fwmc {

/// Target process for the geometry search: pump/signal wavelengths, the
/// phase-mismatch tolerance, and a parametric coupling law
///   kappa(lambda, S) = kappa0 exp(rate (lambda - lambda0)) exp(-(S - s0)/ell_s)
/// tying the coupling strength to the guide separation.
struct DesignTarget {
  double lambda_p1_um = 1.265;
  double lambda_p2_um = 1.590;
  double lambda_s_um = 1.342;
  double tolerance_per_m = 100.0;
  bool require_gvm = true;
  double length_m = 0.015;
  Polarization polarization = Polarization::TM;
  Branch branch = Branch::odd;  // lower supermode branch

  double kappa0_per_m = 0.0;
  double lambda0_um = 1.590;
  double rate_per_um = 0.0;
  double s0_um = 0.60;      // separation at which kappa0 applies
  double ell_s_um = 0.05;   // evanescent decay length of the coupling

  struct Interval {
    double lo = 0.0, hi = 0.0;
  };
  std::array<Interval, 5> bounds{};  // w_A, h_A, w_B, h_B, S_AB (um)

  void validate() const;
};

struct Candidate {
  DeviceGeometry geometry;
  double objective = 0.0;
  double mismatch_per_m = 0.0;
  double gvm_margin = 0.0;  // min ordering gap in group index; < 0 violates
  std::string diagnostic;   // set when the mode solve failed
};

/// Score >= 0; zero iff the mismatch is within tolerance and (when required)
/// the group-index ordering n_gs >= n_gp1 >= n_gi holds. The mismatch excess
/// is normalized by 2 pi / L and GVM violations get hinge weight 10.
double objective(const DeviceGeometry& geometry, const DesignTarget& target);

Candidate evaluate_candidate(const DeviceGeometry& geometry, const DesignTarget& target);

/// Deterministic full-factorial sweep over the bounds; ranking by objective
/// with lexicographic geometry tie-break.
std::vector<Candidate> grid_sweep(const DesignTarget& target, const std::array<int, 5>& samples,
                                  long budget = 20000);

/// Derivative-free simplex descent from a candidate; never returns a worse
/// objective. Stops at simplex diameter < 1e-4 um or 200 iterations.
Candidate refine(const Candidate& start, const DesignTarget& target);

}  // namespace fwmc

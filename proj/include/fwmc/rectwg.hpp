#pragma once

#include "fwmc/dispersion.hpp"
#include "fwmc/sellmeier.hpp"

namespace fwmc {

enum class Polarization { TE, TM };

/// Pair of rectangular cores on a substrate; dimensions in micrometres,
/// S_AB measured center-to-center.
struct DeviceGeometry {
  double w_a_um = 0.32, h_a_um = 0.22;
  double w_b_um = 0.40, h_b_um = 0.42;
  double s_ab_um = 0.60;
  double pedestal_um = 0.02;

  void validate() const;
};

/// Fundamental mode of an asymmetric three-layer slab: film index n_film and
/// thickness d, substrate n_sub, cover n_cover. Returns the effective index;
/// throws std::domain_error when no guided solution exists.
double slab_neff(double n_cover, double n_film, double n_sub, double thickness_um,
                 double lambda_um, Polarization pol);

/// Effective index of one rectangular silicon core (air cover/sides, silica
/// substrate) by the effective-index method: a vertical slab solve followed
/// by a horizontal one with swapped polarization character.
double rect_neff(double width_um, double height_um, double lambda_um, Polarization pol);

/// rect_neff converted to a propagation constant (1/m).
double rect_beta(double width_um, double height_um, double omega, Polarization pol);

/// DispersionProvider for one rectangular core over a wavelength window.
class RectProvider final : public DispersionProvider {
 public:
  RectProvider(double width_um, double height_um, Polarization pol,
               double lambda_lo_um = 1.20, double lambda_hi_um = 1.95);
  double beta(double omega) const override;
  OmegaInterval domain() const override { return dom_; }

 private:
  double w_, h_;
  Polarization pol_;
  OmegaInterval dom_;
};

}  // namespace fwmc

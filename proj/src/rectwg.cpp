#include "fwmc/rectwg.hpp"

#include <cmath>
#include <stdexcept>

#include "fwmc/rootfind.hpp"
#include "fwmc/units.hpp"

namespace fwmc {

void DeviceGeometry::validate() const {
  if (!(w_a_um > 0 && h_a_um > 0 && w_b_um > 0 && h_b_um > 0 && pedestal_um >= 0)) {
    throw std::invalid_argument("geometry: all dimensions must be positive");
  }
  if (!(s_ab_um > 0.5 * (w_a_um + w_b_um))) {
    throw std::invalid_argument("geometry: cores overlap (S_AB <= (w_A + w_B)/2)");
  }
}

double slab_neff(double n_cover, double n_film, double n_sub, double thickness_um,
                 double lambda_um, Polarization pol) {
  const double k0 = two_pi / lambda_um;  // 1/um
  const double lo = std::fmax(n_sub, n_cover);
  if (!(n_film > lo)) {
    throw std::domain_error("slab_neff: film index does not exceed surroundings");
  }
  // Fundamental-mode eigenvalue: kappa d = atan(q_s g_s/kappa) + atan(q_c g_c/kappa)
  // with q = 1 (TE) or n_film^2/n_layer^2 (TM).
  auto eqn = [&](double n) {
    const double kap = k0 * std::sqrt(n_film * n_film - n * n);
    const double gs = k0 * std::sqrt(n * n - n_sub * n_sub);
    const double gc = k0 * std::sqrt(n * n - n_cover * n_cover);
    double qs = 1.0, qc = 1.0;
    if (pol == Polarization::TM) {
      qs = n_film * n_film / (n_sub * n_sub);
      qc = n_film * n_film / (n_cover * n_cover);
    }
    return kap * thickness_um - std::atan(qs * gs / kap) - std::atan(qc * gc / kap);
  };
  const double a = lo * (1.0 + 1e-12) + 1e-12;
  const double b = n_film * (1.0 - 1e-12);
  const double fa = eqn(a), fb = eqn(b);
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::domain_error("slab_neff: no guided fundamental slab mode");
  }
  return brent_root(eqn, a, b, fa, fb, 1e-14);
}

double rect_neff(double width_um, double height_um, double lambda_um, Polarization pol) {
  const double nf = material_index(silicon(), lambda_um);
  const double nsub = material_index(fused_silica(), lambda_um);
  const double nair = 1.0;
  // Quasi-TE: vertical TE slab through the height, then a horizontal slab of
  // the intermediate index solved as TM (field normal to the side walls).
  // Quasi-TM composes the opposite pair.
  if (pol == Polarization::TE) {
    const double n1 = slab_neff(nair, nf, nsub, height_um, lambda_um, Polarization::TE);
    return slab_neff(nair, n1, nair, width_um, lambda_um, Polarization::TM);
  }
  const double n1 = slab_neff(nair, nf, nsub, height_um, lambda_um, Polarization::TM);
  return slab_neff(nair, n1, nair, width_um, lambda_um, Polarization::TE);
}

double rect_beta(double width_um, double height_um, double omega, Polarization pol) {
  const double lam = um_from_omega(omega);
  return rect_neff(width_um, height_um, lam, pol) * omega / c_light;
}

RectProvider::RectProvider(double width_um, double height_um, Polarization pol,
                           double lambda_lo_um, double lambda_hi_um)
    : w_(width_um), h_(height_um), pol_(pol) {
  if (!(w_ > 0 && h_ > 0)) throw std::invalid_argument("RectProvider: dimensions must be > 0");
  if (!(lambda_lo_um < lambda_hi_um)) {
    throw std::invalid_argument("RectProvider: empty wavelength window");
  }
  // Fail fast if the window edges are unguided rather than at first query.
  rect_neff(w_, h_, lambda_lo_um, pol_);
  rect_neff(w_, h_, lambda_hi_um, pol_);
  dom_ = {omega_from_um(lambda_hi_um), omega_from_um(lambda_lo_um)};
}

double RectProvider::beta(double omega) const {
  require_in_domain(omega);
  return rect_beta(w_, h_, omega, pol_);
}

}  // namespace fwmc

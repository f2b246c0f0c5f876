#include "fwmc/fiber.hpp"

#include <cmath>
#include <stdexcept>

#include "fwmc/rootfind.hpp"
#include "fwmc/units.hpp"

namespace fwmc {

namespace {
constexpr double j01 = 2.404825557695773;  // first zero of J0
}

void FiberParams::validate() const {
  if (!(core_radius_um > 0.0)) throw std::invalid_argument("fiber: core_radius must be > 0");
  if (!(core_index_step >= 0.0)) throw std::invalid_argument("fiber: core_index_step must be >= 0");
  if (cladding == nullptr) throw std::invalid_argument("fiber: cladding material missing");
}

double FiberParams::n_cladding(double lambda_um) const {
  return material_index(*cladding, lambda_um);
}

double FiberParams::n_core(double lambda_um) const {
  return n_cladding(lambda_um) * (1.0 + core_index_step);
}

double FiberParams::v_parameter(double omega) const {
  const double lam = um_from_omega(omega);
  const double nclad = n_cladding(lam), ncore = n_core(lam);
  const double k0 = omega / c_light;  // 1/m
  return k0 * core_radius_um * 1e-6 * std::sqrt(ncore * ncore - nclad * nclad);
}

bool FiberParams::single_mode(double omega) const { return v_parameter(omega) < j01; }

double lp01_u(const FiberParams& params, double omega) {
  params.validate();
  const double v = params.v_parameter(omega);
  if (!(v > 0.0)) throw std::domain_error("lp01_u: vanishing V parameter, mode unguided");
  // u J1(u)/J0(u) - w K1(w)/K0(w) with w = sqrt(V^2 - u^2); the LP01 root
  // lies below both V and the first J0 zero.
  auto eqn = [&](double u) {
    const double w = std::sqrt(std::fmax(v * v - u * u, 0.0));
    const double lhs = u * std::cyl_bessel_j(1, u) / std::cyl_bessel_j(0, u);
    if (w < 1e-12) return lhs;  // w K1/K0 -> 0 as w -> 0
    return lhs - w * std::cyl_bessel_k(1, w) / std::cyl_bessel_k(0, w);
  };
  const double hi = std::fmin(v, j01) * (1.0 - 1e-12);
  const double lo = 1e-9 * hi;
  const double flo = eqn(lo), fhi = eqn(hi);
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::domain_error("lp01_u: no guided LP01 root bracketed");
  }
  return brent_root(eqn, lo, hi, flo, fhi, 1e-13);
}

double fiber_beta(const FiberParams& params, double omega) {
  const double lam = um_from_omega(omega);
  const double ncore = params.n_core(lam);
  const double k0 = omega / c_light;
  const double u = lp01_u(params, omega);
  const double a_m = params.core_radius_um * 1e-6;
  const double kt = u / a_m;  // transverse wavenumber
  return std::sqrt(k0 * k0 * ncore * ncore - kt * kt);
}

FiberProvider::FiberProvider(FiberParams params) : params_(params) {
  params_.validate();
  const auto* mat = params_.cladding;
  // Keep a small margin inside the material window so group_index stencils fit.
  const double lam_lo = mat->lambda_min_um * 1.02;
  const double lam_hi = mat->lambda_max_um * 0.98;
  dom_ = {omega_from_um(lam_hi), omega_from_um(lam_lo)};
}

double FiberProvider::beta(double omega) const {
  require_in_domain(omega);
  return fiber_beta(params_, omega);
}

double fiber_coupling(const FiberParams& pa, const FiberParams& pb,
                      double separation_um, double omega) {
  pa.validate();
  pb.validate();
  if (pa.core_radius_um != pb.core_radius_um || pa.core_index_step != pb.core_index_step) {
    throw std::invalid_argument("fiber_coupling: cores must be identical");
  }
  const double a = pa.core_radius_um;
  if (!(separation_um > 2.0 * a)) {
    throw std::invalid_argument("fiber_coupling: cores overlap (separation <= 2a)");
  }
  const double v = pa.v_parameter(omega);
  const double u = lp01_u(pa, omega);
  const double w = std::sqrt(std::fmax(v * v - u * u, 0.0));
  const double delta2 = 2.0 * pa.core_index_step;  // ~ (ncore^2-nclad^2)/ncore^2
  const double a_m = a * 1e-6;
  const double k1w = std::cyl_bessel_k(1, w);
  // Twin-core overlap estimate: kappa = sqrt(2 Delta)/a * u^2 K0(w d/a) / (V^3 K1(w)^2)
  return std::sqrt(delta2) / a_m * u * u * std::cyl_bessel_k(0, w * separation_um / a) /
         (v * v * v * k1w * k1w);
}

double separation_for_coupling(const FiberParams& params, double kappa_target,
                               double omega, double sep_lo_um, double sep_hi_um) {
  if (!(kappa_target > 0.0)) throw std::invalid_argument("separation_for_coupling: target <= 0");
  auto f = [&](double d) { return fiber_coupling(params, params, d, omega) - kappa_target; };
  const double flo = f(sep_lo_um), fhi = f(sep_hi_um);
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::invalid_argument("separation_for_coupling: target not bracketed in range");
  }
  return bisect_root(f, sep_lo_um, sep_hi_um, flo, fhi, 1e-9);
}

}  // namespace fwmc

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fwmc/phasematch.hpp"

namespace fwmc {

/// Pulsed short-wavelength pump plus long-wavelength pump that is CW by
/// default (sigma_p2_nm = 0). Bandwidths are Gaussian AMPLITUDE standard
/// deviations quoted in wavelength and converted to angular frequency at the
/// respective center: alpha_p(w) = exp(-(w - w0)^2 / (2 sigma_w^2)).
struct PumpSpec {
  double lambda_p1_um = 1.265;
  double sigma_p1_nm = 2.0;
  double lambda_p2_um = 1.590;
  double sigma_p2_nm = 0.0;

  void validate() const;
  double sigma_omega_p1() const;  // rad/s
  double sigma_omega_p2() const;  // rad/s, 0 when CW
};

/// Energy-conservation envelope alpha(ws + wi), peak-normalized to 1.
std::complex<double> pump_function(const PumpSpec& spec, double ws, double wi);

/// Closed form of (1/2) Int_0^L [e^{i(dk+kappa)z} + e^{i(dk-kappa)z}] dz.
std::complex<double> pm_function(double dk_per_m, double kappa_per_m, double length_m);

/// Longitudinal effective-nonlinearity weight g(z) sampled uniformly on [0, L].
struct ApodizationProfile {
  std::vector<double> g;  // dimensionless, in [0, 1]
  double length_m = 0.0;

  void validate() const;
  static ApodizationProfile uniform(int n, double length_m);
  static ApodizationProfile raised_cosine(int n, double length_m);
  static ApodizationProfile gaussian(int n, double length_m, double sigma_fraction = 0.125);
};

/// Int_0^L g(z) e^{iqz} dz, exact for the piecewise-linear interpolant of g.
/// Rejects profiles with phase advance |q| L/(n-1) > pi/4 per sample.
std::complex<double> apodized_kernel(const ApodizationProfile& profile, double q_per_m);

/// (1/2)[K(dk+kappa) + K(dk-kappa)] with K the apodized kernel above.
std::complex<double> pm_function_apodized(const ApodizationProfile& profile, double dk_per_m,
                                          double kappa_per_m);

struct JsaAxes {
  std::vector<double> lambda_s_um, lambda_i_um;
  static JsaAxes centered(double ls_center_um, double s_halfspan_nm, double li_center_um,
                          double i_halfspan_nm, int n);
};

struct JointSpectrum {
  std::vector<double> lambda_s_um, lambda_i_um;
  Eigen::MatrixXcd alpha;  // pump factor
  Eigen::MatrixXcd phi;    // phase-matching factor
  Eigen::MatrixXcd f;      // alpha .* phi (unnormalized)
};

/// Joint spectral amplitude over the axes. phi keeps only the branch selected
/// in `process` unless two_term is set, in which case the symmetric two-term
/// kernel in (dk +/- kappa_p2) is used.
JointSpectrum build_jsa(const ProcessConfig& process, const PumpSpec& pump,
                        const JsaAxes& axes, double length_m,
                        const ApodizationProfile* profile = nullptr, bool two_term = false);

struct SchmidtResult {
  std::vector<double> singular_values;  // normalized, sum of squares = 1
  double schmidt_number = 0.0;
  double purity = 0.0;
};

/// Schmidt decomposition of the (Frobenius-normalized) joint amplitude.
SchmidtResult schmidt(const JointSpectrum& js);

}  // namespace fwmc

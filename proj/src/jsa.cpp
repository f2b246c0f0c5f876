#include "fwmc/jsa.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "fwmc/units.hpp"

namespace fwmc {

using cplx = std::complex<double>;

void PumpSpec::validate() const {
  if (!(sigma_p1_nm > 0.0)) throw std::invalid_argument("pump: sigma_p1 must be > 0");
  if (sigma_p2_nm < 0.0) throw std::invalid_argument("pump: sigma_p2 must be >= 0");
  if (!(lambda_p1_um > 0.0 && lambda_p2_um > 0.0)) {
    throw std::invalid_argument("pump: wavelengths must be > 0");
  }
}

namespace {
double sigma_lambda_to_omega(double lambda_um, double sigma_nm) {
  // |domega/dlambda| = 2 pi c / lambda^2
  return two_pi * c_light / (lambda_um * 1e-6 * lambda_um * 1e-6) * sigma_nm * 1e-9;
}
}  // namespace

double PumpSpec::sigma_omega_p1() const {
  return sigma_lambda_to_omega(lambda_p1_um, sigma_p1_nm);
}

double PumpSpec::sigma_omega_p2() const {
  return sigma_p2_nm == 0.0 ? 0.0 : sigma_lambda_to_omega(lambda_p2_um, sigma_p2_nm);
}

std::complex<double> pump_function(const PumpSpec& spec, double ws, double wi) {
  spec.validate();
  const double s1 = spec.sigma_omega_p1(), s2 = spec.sigma_omega_p2();
  // The Gaussian-Gaussian convolution is again Gaussian with summed variances;
  // a CW pump 2 collapses it onto the pump-1 spectrum directly.
  const double s2tot = s1 * s1 + s2 * s2;
  const double x = ws + wi - omega_from_um(spec.lambda_p1_um) - omega_from_um(spec.lambda_p2_um);
  return cplx(std::exp(-x * x / (2.0 * s2tot)), 0.0);
}

namespace {
double sinc(double x) {
  if (std::fabs(x) < 1e-5) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// Int_0^L e^{iqz} dz = L e^{iqL/2} sinc(qL/2)
cplx sinc_kernel(double q, double L) {
  const double x = 0.5 * q * L;
  return L * sinc(x) * cplx(std::cos(x), std::sin(x));
}
}  // namespace

std::complex<double> pm_function(double dk_per_m, double kappa_per_m, double length_m) {
  if (!(length_m > 0.0)) throw std::invalid_argument("pm_function: length must be > 0");
  return 0.5 * (sinc_kernel(dk_per_m + kappa_per_m, length_m) +
                sinc_kernel(dk_per_m - kappa_per_m, length_m));
}

void ApodizationProfile::validate() const {
  if (g.size() < 64) throw std::invalid_argument("apodization: need >= 64 samples");
  if (!(length_m > 0.0)) throw std::invalid_argument("apodization: length must be > 0");
  for (double v : g) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("apodization: weights must lie in [0, 1]");
    }
  }
}

ApodizationProfile ApodizationProfile::uniform(int n, double length_m) {
  ApodizationProfile p{std::vector<double>(n, 1.0), length_m};
  p.validate();
  return p;
}

ApodizationProfile ApodizationProfile::raised_cosine(int n, double length_m) {
  ApodizationProfile p{std::vector<double>(n), length_m};
  for (int k = 0; k < n; ++k) {
    p.g[k] = 0.5 * (1.0 - std::cos(two_pi * k / (n - 1)));
  }
  p.validate();
  return p;
}

ApodizationProfile ApodizationProfile::gaussian(int n, double length_m, double sigma_fraction) {
  ApodizationProfile p{std::vector<double>(n), length_m};
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / (n - 1) - 0.5;
    p.g[k] = std::exp(-x * x / (2.0 * sigma_fraction * sigma_fraction));
  }
  p.validate();
  return p;
}

namespace {
// E(h,q) = Int_0^h e^{iqt} dt and F(h,q) = Int_0^h t e^{iqt} dt, with series
// fallbacks so the piecewise-linear quadrature stays exact near q = 0.
void linear_moments(double h, double q, cplx& E, cplx& F) {
  const double qh = q * h;
  if (std::fabs(qh) < 1e-5) {
    const cplx iqh(0.0, qh);
    E = h * (1.0 + iqh / 2.0 + iqh * iqh / 6.0 + iqh * iqh * iqh / 24.0);
    F = h * h * (0.5 + iqh / 3.0 + iqh * iqh / 8.0 + iqh * iqh * iqh / 30.0);
    return;
  }
  const cplx iq(0.0, q);
  const cplx eh(std::cos(qh), std::sin(qh));
  E = (eh - 1.0) / iq;
  F = (h * eh) / iq - E / iq;
}
}  // namespace

std::complex<double> apodized_kernel(const ApodizationProfile& profile, double q_per_m) {
  profile.validate();
  const std::size_t n = profile.g.size();
  const double h = profile.length_m / static_cast<double>(n - 1);
  if (std::fabs(q_per_m) * h > pi / 4.0) {
    throw std::invalid_argument("apodized_kernel: profile under-resolved for this mismatch "
                                "(phase advance per sample exceeds pi/4)");
  }
  cplx E, F;
  linear_moments(h, q_per_m, E, F);
  cplx total(0.0, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double z0 = h * static_cast<double>(k);
    const cplx rot(std::cos(q_per_m * z0), std::sin(q_per_m * z0));
    const double gk = profile.g[k];
    const double slope = (profile.g[k + 1] - gk) / h;
    total += rot * (gk * E + slope * F);
  }
  return total;
}

std::complex<double> pm_function_apodized(const ApodizationProfile& profile, double dk_per_m,
                                          double kappa_per_m) {
  return 0.5 * (apodized_kernel(profile, dk_per_m + kappa_per_m) +
                apodized_kernel(profile, dk_per_m - kappa_per_m));
}

JsaAxes JsaAxes::centered(double ls_center_um, double s_halfspan_nm, double li_center_um,
                          double i_halfspan_nm, int n) {
  if (n < 2) throw std::invalid_argument("JsaAxes: need >= 2 samples per axis");
  JsaAxes a;
  a.lambda_s_um.resize(n);
  a.lambda_i_um.resize(n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * k / (n - 1) - 1.0;  // [-1, 1]
    a.lambda_s_um[k] = ls_center_um + t * s_halfspan_nm * 1e-3;
    a.lambda_i_um[k] = li_center_um + t * i_halfspan_nm * 1e-3;
  }
  return a;
}

JointSpectrum build_jsa(const ProcessConfig& process, const PumpSpec& pump,
                        const JsaAxes& axes, double length_m,
                        const ApodizationProfile* profile, bool two_term) {
  process.validate();
  pump.validate();
  if (!(length_m > 0.0)) throw std::invalid_argument("build_jsa: length must be > 0");
  if (axes.lambda_s_um.empty() || axes.lambda_i_um.empty()) {
    throw std::invalid_argument("build_jsa: empty axes");
  }
  if (profile != nullptr) {
    profile->validate();
    if (std::fabs(profile->length_m - length_m) > 1e-12 * length_m) {
      throw std::invalid_argument("build_jsa: profile length disagrees with device length");
    }
  }
  const std::size_t ns = axes.lambda_s_um.size(), ni = axes.lambda_i_um.size();
  const double wp2 = omega_from_um(process.lambda_p2_um);

  // Branch-resolved beta(omega), cached on a dense spline over the needed
  // frequency range so mode solves do not run per grid point.
  double wlo = wp2, whi = wp2;
  auto widen = [&](double w) {
    wlo = std::fmin(wlo, w);
    whi = std::fmax(whi, w);
  };
  for (double l : axes.lambda_s_um) widen(omega_from_um(l));
  for (double l : axes.lambda_i_um) widen(omega_from_um(l));
  // pump-1 frequency is pinned by energy conservation at each grid point
  widen(omega_from_um(axes.lambda_s_um.front()) + omega_from_um(axes.lambda_i_um.front()) - wp2);
  widen(omega_from_um(axes.lambda_s_um.back()) + omega_from_um(axes.lambda_i_um.back()) - wp2);
  const double pad = 2e-3 * (whi - wlo) + 1e-9 * whi;
  wlo -= pad;
  whi += pad;
  const int ncache = 600;
  std::vector<double> wv(ncache), bv(ncache);
  for (int k = 0; k < ncache; ++k) {
    wv[k] = wlo + (whi - wlo) * k / (ncache - 1);
    bv[k] = process.field_beta(um_from_omega(wv[k]), false);
  }
  CubicSpline beta_cache(std::move(wv), std::move(bv));
  const double beta_p2 = process.field_beta(process.lambda_p2_um, true);
  const double gamma_p = process.gamma_per_w_m * process.power_w;
  const double kappa_p2 = process.full_supermode ? 0.0 : coupling_eval(process.coupling, wp2);

  JointSpectrum js;
  js.lambda_s_um = axes.lambda_s_um;
  js.lambda_i_um = axes.lambda_i_um;
  js.alpha.resize(ns, ni);
  js.phi.resize(ns, ni);
  js.f.resize(ns, ni);
  for (std::size_t is = 0; is < ns; ++is) {
    const double ws = omega_from_um(axes.lambda_s_um[is]);
    const double bs = beta_cache(ws);
    for (std::size_t ii = 0; ii < ni; ++ii) {
      const double wi = omega_from_um(axes.lambda_i_um[ii]);
      const double wp1 = ws + wi - wp2;
      if (!(wp1 > 0.0)) throw std::domain_error("build_jsa: grid violates energy conservation");
      // Raw mismatch on guide/supermode dispersion; branch shift handled below.
      const double dk_raw = beta_cache(wp1) + beta_p2 - bs - beta_cache(wi) - gamma_p;
      cplx phi;
      if (two_term && !process.full_supermode) {
        phi = profile ? pm_function_apodized(*profile, dk_raw, kappa_p2)
                      : pm_function(dk_raw, kappa_p2, length_m);
      } else {
        double dk = dk_raw;
        if (!process.full_supermode && process.branch != Branch::none) {
          dk += (process.branch == Branch::even) ? kappa_p2 : -kappa_p2;
        }
        phi = profile ? apodized_kernel(*profile, dk) : sinc_kernel(dk, length_m);
      }
      const cplx a = pump_function(pump, ws, wi);
      js.alpha(is, ii) = a;
      js.phi(is, ii) = phi;
      js.f(is, ii) = a * phi;
    }
  }
  return js;
}

SchmidtResult schmidt(const JointSpectrum& js) {
  const double norm = js.f.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("schmidt: all-zero joint amplitude");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(js.f / norm);
  const auto& sv = svd.singularValues();
  SchmidtResult r;
  double s2 = 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) s2 += sv[k] * sv[k];
  const double scale = 1.0 / std::sqrt(s2);
  double p = 0.0;
  r.singular_values.reserve(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    const double s = sv[k] * scale;
    r.singular_values.push_back(s);
    p += s * s * s * s;
  }
  r.purity = p;
  r.schmidt_number = 1.0 / p;
  return r;
}

}  // namespace fwmc

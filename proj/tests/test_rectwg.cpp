#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fwmc/rectwg.hpp"
#include "fwmc/units.hpp"

using namespace fwmc;

namespace {

// transverse-resonance residual of a three-layer slab, checked independently
double slab_residual(double n_cover, double n_film, double n_sub, double d_um, double l_um,
                     Polarization pol, double neff) {
  const double k0 = two_pi / l_um;
  const double kap = k0 * std::sqrt(n_film * n_film - neff * neff);
  const double gs = k0 * std::sqrt(neff * neff - n_sub * n_sub);
  const double gc = k0 * std::sqrt(neff * neff - n_cover * n_cover);
  const double qs = pol == Polarization::TM ? n_film * n_film / (n_sub * n_sub) : 1.0;
  const double qc = pol == Polarization::TM ? n_film * n_film / (n_cover * n_cover) : 1.0;
  return kap * d_um - std::atan(qs * gs / kap) - std::atan(qc * gc / kap);
}

}  // namespace

TEST_CASE("slab solution satisfies the transverse resonance condition") {
  for (auto pol : {Polarization::TE, Polarization::TM}) {
    const double n = slab_neff(1.0, 3.48, 1.444, 0.22, 1.55, pol);
    CHECK(n > 1.444);
    CHECK(n < 3.48);
    CHECK(std::fabs(slab_residual(1.0, 3.48, 1.444, 0.22, 1.55, pol, n)) < 1e-10);
  }
}

TEST_CASE("symmetric slab agrees with the analytic even-mode equation") {
  // symmetric TE slab: tan(kappa d/2) = gamma/kappa for the fundamental mode
  const double nf = 3.48, ns = 1.444, d = 0.30, lam = 1.55;
  const double n = slab_neff(ns, nf, ns, d, lam, Polarization::TE);
  const double k0 = two_pi / lam;
  const double kap = k0 * std::sqrt(nf * nf - n * n);
  const double gam = k0 * std::sqrt(n * n - ns * ns);
  CHECK(std::tan(0.5 * kap * d) == doctest::Approx(gam / kap).epsilon(1e-9));
}

TEST_CASE("slab thickness and index ordering behave physically") {
  const double thin = slab_neff(1.0, 3.48, 1.444, 0.15, 1.55, Polarization::TE);
  const double thick = slab_neff(1.0, 3.48, 1.444, 0.40, 1.55, Polarization::TE);
  CHECK(thick > thin);  // more confinement
  CHECK_THROWS_AS(slab_neff(1.0, 1.40, 1.444, 0.22, 1.55, Polarization::TE), std::domain_error);
}

TEST_CASE("rectangular core effective index bounds and polarization split") {
  const double n_te = rect_neff(0.45, 0.22, 1.55, Polarization::TE);
  const double n_tm = rect_neff(0.45, 0.22, 1.55, Polarization::TM);
  CHECK(n_te > 1.444);
  CHECK(n_te < 3.48);
  CHECK(n_tm > 1.0);
  CHECK(n_te != doctest::Approx(n_tm).epsilon(1e-4));  // flat core is birefringent
  // the wide-flat geometry guides TE more strongly
  CHECK(n_te > n_tm);
}

TEST_CASE("normal dispersion of the guided mode") {
  const double n13 = rect_neff(0.40, 0.42, 1.30, Polarization::TM);
  const double n16 = rect_neff(0.40, 0.42, 1.60, Polarization::TM);
  CHECK(n13 > n16);
}

TEST_CASE("larger core carries higher effective index at fixed wavelength") {
  const double small = rect_neff(0.32, 0.22, 1.55, Polarization::TM);
  const double large = rect_neff(0.40, 0.42, 1.55, Polarization::TM);
  CHECK(large > small);
}

TEST_CASE("provider window verification and domain checks") {
  RectProvider p(0.32, 0.22, Polarization::TM, 1.21, 1.95);
  const double w = omega_from_um(1.55);
  CHECK(p.beta(w) == doctest::Approx(rect_beta(0.32, 0.22, w, Polarization::TM)));
  CHECK_THROWS_AS(p.beta(omega_from_um(1.0)), std::domain_error);
  CHECK_THROWS(RectProvider(0.03, 0.03, Polarization::TE, 1.21, 1.95));  // below cutoff
}

TEST_CASE("geometry validation rejects overlapping cores") {
  DeviceGeometry g;
  g.s_ab_um = 0.30;  // less than (w_a + w_b)/2
  CHECK_THROWS(g.validate());
  g = DeviceGeometry{};
  CHECK_NOTHROW(g.validate());
}

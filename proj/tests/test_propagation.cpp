#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "fwmc/propagation.hpp"
#include "fwmc/units.hpp"

using namespace fwmc;

namespace {

constexpr int kP1 = int(Field::P1);
constexpr int kP2 = int(Field::P2);
constexpr int kS = int(Field::S);
constexpr int kI = int(Field::I);

SimulationConfig quiet_config() {
  SimulationConfig c;
  c.grid_size = 256;
  c.length_m = 0.01;
  c.dz_m = 1e-5;
  c.gamma_per_w_m = 0.0;
  c.signal_seed_w = 0.0;
  c.record_stride = 100;
  return c;
}

double mean_power(const std::vector<std::complex<double>>& f) {
  double s = 0.0;
  for (const auto& v : f) s += std::norm(v);
  return s / double(f.size());
}

}  // namespace

TEST_CASE("launch conditions split pump 2 as expected") {
  SimulationConfig c = quiet_config();
  c.p1_w = 4.0;
  c.p2_w = 2.0;

  c.launch = LaunchCondition::even;
  auto se = build_state(c);
  CHECK(mean_power(se.a[kP1]) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(mean_power(se.b[kP1]) == doctest::Approx(0.0));
  CHECK(mean_power(se.a[kP2]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean_power(se.b[kP2]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((se.a[kP2][0] * std::conj(se.b[kP2][0])).real() > 0.0);  // in phase

  c.launch = LaunchCondition::odd;
  auto so = build_state(c);
  CHECK(mean_power(so.a[kP2]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((so.a[kP2][0] * std::conj(so.b[kP2][0])).real() < 0.0);  // anti-phase

  c.launch = LaunchCondition::mixed;
  auto sm = build_state(c);
  CHECK(mean_power(sm.a[kP2]) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(mean_power(sm.b[kP2]) == doctest::Approx(0.0));
}

TEST_CASE("linear lossless run conserves every field power") {
  SimulationConfig c = quiet_config();
  c.launch = LaunchCondition::odd;
  c.signal_seed_w = 1e-6;
  const auto rec = propagate(c);
  REQUIRE(rec.z_m.size() >= 2);
  for (std::size_t i = 0; i < rec.z_m.size(); ++i) {
    for (int f = 0; f < 4; ++f) {
      const double p0 = rec.power_a_w.front()[f] + rec.power_b_w.front()[f];
      const double pz = rec.power_a_w[i][f] + rec.power_b_w[i][f];
      CHECK(std::fabs(pz - p0) < 1e-10 * (1.0 + p0));
    }
  }
  CHECK_FALSE(rec.nonlinear_phase_warning);
}

TEST_CASE("single-guide launch oscillates between guides at the beat period") {
  const double kappa = 1000.0;
  SimulationConfig c = quiet_config();
  c.launch = LaunchCondition::mixed;  // all of pump 2 starts in guide A
  c.kappa_per_m[kP2] = kappa;
  c.length_m = pi / kappa;  // one full power-exchange period
  c.dz_m = c.length_m / 400.0;
  c.record_stride = 100;  // samples at 0, L/4, L/2, 3L/4, L
  const auto rec = propagate(c);

  auto at = [&](double z_target) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rec.z_m.size(); ++i) {
      if (std::fabs(rec.z_m[i] - z_target) < std::fabs(rec.z_m[best] - z_target)) best = i;
    }
    return best;
  };
  const double p2 = c.p2_w;
  const std::size_t half = at(0.5 * c.length_m), full = at(c.length_m);
  CHECK(rec.z_m[half] == doctest::Approx(0.5 * c.length_m).epsilon(1e-9));
  CHECK(rec.power_a_w[half][kP2] < 1e-9 * p2);            // fully transferred to B
  CHECK(rec.power_b_w[half][kP2] == doctest::Approx(p2).epsilon(1e-9));
  CHECK(rec.power_a_w[full][kP2] == doctest::Approx(p2).epsilon(1e-9));  // and back
  // pump 1 is uncoupled and stays put
  CHECK(rec.power_b_w[full][kP1] == doctest::Approx(0.0));
}

TEST_CASE("symmetric and antisymmetric launches are stationary under coupling") {
  SimulationConfig c = quiet_config();
  c.kappa_per_m[kP2] = 2000.0;
  for (auto l : {LaunchCondition::even, LaunchCondition::odd}) {
    c.launch = l;
    const auto rec = propagate(c);
    for (std::size_t i = 0; i < rec.z_m.size(); ++i) {
      CHECK(rec.power_a_w[i][kP2] == doctest::Approx(0.5 * c.p2_w).epsilon(1e-10));
      CHECK(rec.power_b_w[i][kP2] == doctest::Approx(0.5 * c.p2_w).epsilon(1e-10));
    }
  }
}

TEST_CASE("continuous-wave self-phase modulation accumulates gamma P z") {
  SimulationConfig c = quiet_config();
  c.launch = LaunchCondition::mixed;
  c.gamma_per_w_m = 0.5;
  c.p1_w = 2.0;
  c.p2_w = 0.0;
  c.lambda_um = {1.55, 1.55, 1.55, 1.55};  // uniform carriers: one rate for all fields
  c.length_m = 0.002;
  c.dz_m = 1e-5;
  auto s = build_state(c);
  const int n = int(std::lround(c.length_m / c.dz_m));
  for (int i = 0; i < n; ++i) s = step(std::move(s), c, c.dz_m);
  const double phase = std::arg(s.a[kP1][0]);
  CHECK(phase == doctest::Approx(c.gamma_per_w_m * c.p1_w * c.length_m).epsilon(1e-8));
  CHECK(std::abs(s.a[kP1][0]) == doctest::Approx(std::sqrt(c.p1_w)).epsilon(1e-10));
}

TEST_CASE("gain scan is independent of the thread count") {
  SimulationConfig c = quiet_config();
  c.launch = LaunchCondition::odd;
  c.gamma_per_w_m = 0.01;
  c.p1_w = 100.0;
  c.p2_w = 50.0;
  c.delta_k_per_m = 500.0;
  c.signal_seed_w = 1e-4;
  c.length_m = 0.01;
  c.dz_m = 2e-5;
  const auto one = gain_scan(c, 200.0, 800.0, 5, 1);
  const auto two = gain_scan(c, 200.0, 800.0, 5, 2);
  REQUIRE(one.size() == 5);
  REQUIRE(two.size() == 5);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].kappa_per_m == two[i].kappa_per_m);
    CHECK(one[i].gain_db == two[i].gain_db);
  }
}

TEST_CASE("scan peak sits at the coupling that cancels the carrier mismatch") {
  SimulationConfig c = quiet_config();
  c.launch = LaunchCondition::odd;
  c.gamma_per_w_m = 0.01;
  c.p1_w = 1.0;
  c.p2_w = 1.0;
  c.delta_k_per_m = 47025.59;
  c.lambda_um = {1.55, 1.55, 1.55, 1.55};
  c.signal_seed_w = 1e-6;
  c.length_m = 0.02;
  c.dz_m = 5e-6;
  const auto pts = gain_scan(c, 46500.0, 47500.0, 11, 1);
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].gain_db > pts[best].gain_db) best = i;
  }
  // grid step is 100 /m; the peak must land within one step of delta k
  CHECK(std::fabs(pts[best].kappa_per_m - c.delta_k_per_m) <= 100.0 + 1e-9);
}

TEST_CASE("vacuum noise is reproducible per seed") {
  SimulationConfig c = quiet_config();
  c.vacuum_noise = true;
  c.rng_seed = 42;
  const auto s1 = build_state(c);
  const auto s2 = build_state(c);
  CHECK(s1.a[kS] == s2.a[kS]);
  CHECK(s1.b[kI] == s2.b[kI]);
  c.rng_seed = 43;
  const auto s3 = build_state(c);
  CHECK(s1.a[kS] != s3.a[kS]);
}

TEST_CASE("configuration validation") {
  SimulationConfig c;
  c.grid_size = 300;  // not a power of two
  CHECK_THROWS(c.validate());
  c = SimulationConfig{};
  c.dz_m = 0.0;
  CHECK_THROWS(c.validate());
  c = SimulationConfig{};
  c.record_stride = 0;
  CHECK_THROWS(c.validate());
  CHECK_NOTHROW(SimulationConfig{}.validate());
  for (auto l : {LaunchCondition::even, LaunchCondition::odd, LaunchCondition::mixed}) {
    CHECK(launch_from_name(launch_name(l)) == l);
  }
  CHECK_THROWS(launch_from_name("sideway"));
}

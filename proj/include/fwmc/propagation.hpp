#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwmc/dispersion.hpp"

namespace fwmc {

/// Thrown when a simulation produces non-finite values or fails to converge.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Field : int { P1 = 0, P2 = 1, S = 2, I = 3 };

enum class LaunchCondition { even, odd, mixed };
LaunchCondition launch_from_name(const std::string& name);
std::string launch_name(LaunchCondition l);

struct SimulationConfig {
  double time_window_ps = 8.0;
  int grid_size = 256;  // power of two, >= 256
  double length_m = 0.1;
  double dz_m = 2e-6;
  double gamma_per_w_m = 0.01;
  double delta_k_per_m = 0.0;  // carrier mismatch k_p1 + k_p2 - k_s - k_i
  std::array<double, 4> lambda_um{0.532, 1.550, 0.792, 0.792};  // P1, P2, S, I
  std::array<DispersionPtr, 4> guide_a{};  // null entries: dispersionless envelope
  std::array<DispersionPtr, 4> guide_b{};
  std::array<double, 4> kappa_per_m{0, 0, 0, 0};  // only P2 couples by default
  double p1_w = 1.0;
  double p2_w = 1.0;
  double pulse_duration_ps = 0.0;  // Gaussian amplitude sigma of pump 1; 0 = CW
  LaunchCondition launch = LaunchCondition::odd;
  double signal_seed_w = 1e-9;  // deterministic CW signal seed in guide A
  bool vacuum_noise = false;    // add half-photon-per-mode noise to S and I
  std::uint64_t rng_seed = 0;
  int record_stride = 16;

  void validate() const;
};

struct SimulationState {
  double z = 0.0;
  std::array<std::vector<std::complex<double>>, 4> a;  // guide A envelopes, sqrt(W)
  std::array<std::vector<std::complex<double>>, 4> b;  // guide B
};

SimulationState build_state(const SimulationConfig& config);

struct PropagationRecord {
  std::vector<double> z_m;
  std::vector<std::array<double, 4>> power_a_w;  // mean power per field, guide A
  std::vector<std::array<double, 4>> power_b_w;
  std::vector<std::array<double, 4>> photon_flux;  // both guides, photons/s
  bool nonlinear_phase_warning = false;

  /// Largest pairwise violation of the photon-number identities
  /// dN_S = dN_I = -dN_P1 = -dN_P2, relative to the photons exchanged.
  double manley_rowe_residual() const;
};

/// Split-step integrator: symmetric linear half-steps (dispersion phase in
/// the retarded frame of pump 2, then the exact two-guide coupling rotation)
/// around a fourth-order nonlinear step for SPM/XPM/FWM.
class Propagator {
 public:
  explicit Propagator(SimulationConfig config);
  ~Propagator();
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  const SimulationConfig& config() const { return config_; }
  void step(SimulationState& state);  // advance by config dz
  PropagationRecord run();            // fresh state to z = L, recording powers

 private:
  struct Impl;
  SimulationConfig config_;
  std::unique_ptr<Impl> impl_;
};

SimulationState step(SimulationState state, const SimulationConfig& config, double dz_m);
PropagationRecord propagate(const SimulationConfig& config);

struct GainPoint {
  double kappa_per_m = 0.0;
  double gain_db = 0.0;  // 10 log10 of idler output over the signal seed
};

std::vector<GainPoint> gain_scan(const SimulationConfig& config, double kappa_lo_per_m,
                                 double kappa_hi_per_m, int n_points, int threads = 1);

}  // namespace fwmc

#include "fwmc/propagation.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "fwmc/units.hpp"

namespace fwmc {

using cplx = std::complex<double>;

LaunchCondition launch_from_name(const std::string& name) {
  if (name == "even") return LaunchCondition::even;
  if (name == "odd") return LaunchCondition::odd;
  if (name == "mixed") return LaunchCondition::mixed;
  throw std::invalid_argument("unknown launch condition: " + name);
}

std::string launch_name(LaunchCondition l) {
  switch (l) {
    case LaunchCondition::even: return "even";
    case LaunchCondition::odd: return "odd";
    case LaunchCondition::mixed: return "mixed";
  }
  return "?";
}

void SimulationConfig::validate() const {
  if (grid_size < 256 || (grid_size & (grid_size - 1)) != 0) {
    throw std::invalid_argument("simulation: grid_size must be a power of two >= 256");
  }
  if (!(time_window_ps > 0.0)) throw std::invalid_argument("simulation: time window must be > 0");
  if (!(length_m > 0.0) || !(dz_m > 0.0) || dz_m > length_m) {
    throw std::invalid_argument("simulation: need 0 < dz <= L");
  }
  if (gamma_per_w_m < 0.0) throw std::invalid_argument("simulation: gamma must be >= 0");
  for (double k : kappa_per_m) {
    if (k < 0.0) throw std::invalid_argument("simulation: kappa must be >= 0");
  }
  for (double l : lambda_um) {
    if (!(l > 0.0)) throw std::invalid_argument("simulation: wavelengths must be > 0");
  }
  if (p1_w < 0.0 || p2_w < 0.0 || signal_seed_w < 0.0 || pulse_duration_ps < 0.0) {
    throw std::invalid_argument("simulation: powers and durations must be >= 0");
  }
  if (record_stride < 1) throw std::invalid_argument("simulation: record_stride must be >= 1");
}

SimulationState build_state(const SimulationConfig& config) {
  config.validate();
  const int n = config.grid_size;
  SimulationState st;
  st.z = 0.0;
  for (int f = 0; f < 4; ++f) {
    st.a[f].assign(n, cplx(0.0, 0.0));
    st.b[f].assign(n, cplx(0.0, 0.0));
  }
  const double dt_ps = config.time_window_ps / n;
  for (int k = 0; k < n; ++k) {
    const double t_ps = (k - n / 2) * dt_ps;
    double amp = std::sqrt(config.p1_w);
    if (config.pulse_duration_ps > 0.0) {
      const double x = t_ps / config.pulse_duration_ps;
      amp *= std::exp(-0.5 * x * x);
    }
    st.a[int(Field::P1)][k] = amp;
  }
  const double half = std::sqrt(0.5 * config.p2_w);
  switch (config.launch) {
    case LaunchCondition::even:
      for (int k = 0; k < config.grid_size; ++k) {
        st.a[int(Field::P2)][k] = half;
        st.b[int(Field::P2)][k] = half;
      }
      break;
    case LaunchCondition::odd:
      for (int k = 0; k < config.grid_size; ++k) {
        st.a[int(Field::P2)][k] = half;
        st.b[int(Field::P2)][k] = -half;
      }
      break;
    case LaunchCondition::mixed:
      // equal superposition of the two supermodes: all power starts in guide A
      for (int k = 0; k < config.grid_size; ++k) {
        st.a[int(Field::P2)][k] = std::sqrt(config.p2_w);
      }
      break;
  }
  const double seed_amp = std::sqrt(config.signal_seed_w);
  for (int k = 0; k < config.grid_size; ++k) st.a[int(Field::S)][k] = seed_amp;
  if (config.vacuum_noise) {
    // classical proxy: half a photon of energy per temporal mode, split into
    // both quadratures, on signal and idler in the FWM guide
    std::mt19937_64 rng(config.rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double dt_s = config.time_window_ps * 1e-12 / config.grid_size;
    for (Field f : {Field::S, Field::I}) {
      const double wf = omega_from_um(config.lambda_um[int(f)]);
      const double sigma = std::sqrt(hbar * wf / (4.0 * dt_s));
      for (int k = 0; k < config.grid_size; ++k) {
        st.a[int(f)][k] += cplx(sigma * gauss(rng), sigma * gauss(rng));
      }
    }
  }
  return st;
}

double PropagationRecord::manley_rowe_residual() const {
  if (photon_flux.size() < 2) return 0.0;
  const auto& first = photon_flux.front();
  const auto& last = photon_flux.back();
  const double dns = last[int(Field::S)] - first[int(Field::S)];
  const double dni = last[int(Field::I)] - first[int(Field::I)];
  const double dnp1 = last[int(Field::P1)] - first[int(Field::P1)];
  const double dnp2 = last[int(Field::P2)] - first[int(Field::P2)];
  const double exchanged = std::fmax(std::fabs(dns), std::fabs(dni));
  if (exchanged == 0.0) return 0.0;
  double r = std::fabs(dns - dni);
  r = std::fmax(r, std::fabs(dns + dnp1));
  r = std::fmax(r, std::fabs(dni + dnp2));
  return r / exchanged;
}

struct Propagator::Impl {
  int n = 0;
  fftw_plan fwd = nullptr, bwd = nullptr;
  std::vector<cplx> scratch;
  // dispersion phase per frequency bin for a half step, per field per guide;
  // empty vector = dispersionless (skip the transform entirely)
  std::array<std::vector<cplx>, 4> disp_a, disp_b;
  double cos_half[4] = {1, 1, 1, 1};
  double sin_half[4] = {0, 0, 0, 0};
  bool couple[4] = {false, false, false, false};

  // FFTW planning is not thread-safe; serialize it across Propagators.
  static std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

namespace {

std::vector<cplx> dispersion_phase(const DispersionPtr& provider, double lambda_um,
                                   double beta1_ref, double window_s, int n, double half_dz) {
  if (!provider) return {};
  const double w0 = omega_from_um(lambda_um);
  const double beta0 = provider->beta(w0);
  std::vector<cplx> ph(n);
  for (int k = 0; k < n; ++k) {
    const int kk = (k < n / 2) ? k : k - n;  // FFT bin ordering
    const double om = two_pi * kk / window_s;
    const double phase = (provider->beta(w0 + om) - beta0 - beta1_ref * om) * half_dz;
    ph[k] = cplx(std::cos(phase), std::sin(phase));
  }
  return ph;
}

inline void apply_fft_phase(std::vector<cplx>& field, const std::vector<cplx>& phase,
                            fftw_plan fwd, fftw_plan bwd, double inv_n) {
  auto* p = reinterpret_cast<fftw_complex*>(field.data());
  fftw_execute_dft(fwd, p, p);
  for (std::size_t k = 0; k < field.size(); ++k) field[k] *= phase[k];
  fftw_execute_dft(bwd, p, p);
  for (auto& v : field) v *= inv_n;
}

}  // namespace

Propagator::Propagator(SimulationConfig config)
    : config_(std::move(config)), impl_(std::make_unique<Impl>()) {
  config_.validate();
  const int n = config_.grid_size;
  impl_->n = n;
  impl_->scratch.assign(n, cplx(0, 0));
  {
    std::lock_guard<std::mutex> lock(Impl::plan_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(impl_->scratch.data());
    impl_->fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    impl_->bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }

  // retarded frame of pump 2: subtract its group delay from every envelope
  double beta1_ref = 0.0;
  const auto& p2 = config_.guide_a[int(Field::P2)];
  if (p2) beta1_ref = group_index(*p2, omega_from_um(config_.lambda_um[int(Field::P2)])) / c_light;

  const double window_s = config_.time_window_ps * 1e-12;
  const double half_dz = 0.5 * config_.dz_m;
  for (int f = 0; f < 4; ++f) {
    impl_->disp_a[f] = dispersion_phase(config_.guide_a[f], config_.lambda_um[f], beta1_ref,
                                        window_s, n, half_dz);
    const auto& gb = config_.guide_b[f] ? config_.guide_b[f] : config_.guide_a[f];
    impl_->disp_b[f] =
        dispersion_phase(gb, config_.lambda_um[f], beta1_ref, window_s, n, half_dz);
    const double theta = config_.kappa_per_m[f] * half_dz;
    impl_->couple[f] = config_.kappa_per_m[f] > 0.0;
    impl_->cos_half[f] = std::cos(theta);
    impl_->sin_half[f] = std::sin(theta);
  }
}

Propagator::~Propagator() = default;

namespace {

// d/dz of the eight envelopes from SPM/XPM/FWM at position z, one guide.
// Each field's nonlinear coefficient scales with its carrier frequency
// (gamma[F] = gamma * omega_F / omega_S), which makes the photon-flux
// identities dN_S = dN_I = -dN_P1 = -dN_P2 hold exactly for the FWM terms.
void nonlinear_rhs(const std::array<const std::vector<cplx>*, 4>& f,
                   const std::array<double, 4>& gamma, const cplx& eplus,
                   std::array<std::vector<cplx>, 4>& out) {
  const std::size_t n = f[0]->size();
  const cplx eminus = std::conj(eplus);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx p1 = (*f[0])[k], p2 = (*f[1])[k], s = (*f[2])[k], ii = (*f[3])[k];
    const double pw[4] = {std::norm(p1), std::norm(p2), std::norm(s), std::norm(ii)};
    const double tot = pw[0] + pw[1] + pw[2] + pw[3];
    const cplx pump_pair = p1 * p2;
    const cplx fwm_si = 2.0 * pump_pair * eplus;
    const cplx psi[4] = {(2.0 * tot - pw[0]) * p1, (2.0 * tot - pw[1]) * p2,
                         (2.0 * tot - pw[2]) * s, (2.0 * tot - pw[3]) * ii};
    const cplx phi[4] = {2.0 * std::conj(p2) * s * ii * eminus,
                         2.0 * std::conj(p1) * s * ii * eminus,
                         std::conj(ii) * fwm_si, std::conj(s) * fwm_si};
    for (int q = 0; q < 4; ++q) {
      out[q][k] = cplx(0.0, gamma[q]) * (psi[q] + phi[q]);
    }
  }
}

}  // namespace

void Propagator::step(SimulationState& state) {
  auto& im = *impl_;
  const int n = im.n;
  const double inv_n = 1.0 / n;
  const double dz = config_.dz_m;

  auto linear_half = [&] {
    for (int f = 0; f < 4; ++f) {
      if (!im.disp_a[f].empty()) {
        apply_fft_phase(state.a[f], im.disp_a[f], im.fwd, im.bwd, inv_n);
      }
      if (!im.disp_b[f].empty()) {
        apply_fft_phase(state.b[f], im.disp_b[f], im.fwd, im.bwd, inv_n);
      }
      if (im.couple[f]) {
        const double c = im.cos_half[f], s = im.sin_half[f];
        for (int k = 0; k < n; ++k) {
          const cplx av = state.a[f][k], bv = state.b[f][k];
          state.a[f][k] = c * av + cplx(0.0, s) * bv;
          state.b[f][k] = cplx(0.0, s) * av + c * bv;
        }
      }
    }
  };

  linear_half();

  if (config_.gamma_per_w_m > 0.0) {
    // classic RK4 over the nonlinear subsystem with the z-dependent mismatch phase
    static thread_local std::array<std::vector<cplx>, 4> k1a, k2a, k3a, k4a, k1b, k2b, k3b,
        k4b, tmpa, tmpb;
    auto resize_all = [&](std::array<std::vector<cplx>, 4>& arr) {
      for (auto& v : arr) v.resize(n);
    };
    for (auto* arr : {&k1a, &k2a, &k3a, &k4a, &k1b, &k2b, &k3b, &k4b, &tmpa, &tmpb}) {
      resize_all(*arr);
    }
    const double w_ref = omega_from_um(config_.lambda_um[int(Field::S)]);
    std::array<double, 4> g{};
    for (int f = 0; f < 4; ++f) {
      g[f] = config_.gamma_per_w_m * omega_from_um(config_.lambda_um[f]) / w_ref;
    }
    auto phase = [&](double z) {
      const double q = config_.delta_k_per_m * z;
      return cplx(std::cos(q), std::sin(q));
    };
    auto views = [](const std::array<std::vector<cplx>, 4>& arr) {
      return std::array<const std::vector<cplx>*, 4>{&arr[0], &arr[1], &arr[2], &arr[3]};
    };
    auto axpy = [&](std::array<std::vector<cplx>, 4>& dst,
                    const std::array<std::vector<cplx>, 4>& x,
                    const std::array<std::vector<cplx>, 4>& k, double c) {
      for (int f = 0; f < 4; ++f) {
        for (int t = 0; t < n; ++t) dst[f][t] = x[f][t] + c * k[f][t];
      }
    };
    const double z0 = state.z, zm = state.z + 0.5 * dz, z1 = state.z + dz;
    nonlinear_rhs(views(state.a), g, phase(z0), k1a);
    nonlinear_rhs(views(state.b), g, phase(z0), k1b);
    axpy(tmpa, state.a, k1a, 0.5 * dz);
    axpy(tmpb, state.b, k1b, 0.5 * dz);
    nonlinear_rhs(views(tmpa), g, phase(zm), k2a);
    nonlinear_rhs(views(tmpb), g, phase(zm), k2b);
    axpy(tmpa, state.a, k2a, 0.5 * dz);
    axpy(tmpb, state.b, k2b, 0.5 * dz);
    nonlinear_rhs(views(tmpa), g, phase(zm), k3a);
    nonlinear_rhs(views(tmpb), g, phase(zm), k3b);
    axpy(tmpa, state.a, k3a, dz);
    axpy(tmpb, state.b, k3b, dz);
    nonlinear_rhs(views(tmpa), g, phase(z1), k4a);
    nonlinear_rhs(views(tmpb), g, phase(z1), k4b);
    const double w = dz / 6.0;
    for (int f = 0; f < 4; ++f) {
      for (int t = 0; t < n; ++t) {
        state.a[f][t] += w * (k1a[f][t] + 2.0 * k2a[f][t] + 2.0 * k3a[f][t] + k4a[f][t]);
        state.b[f][t] += w * (k1b[f][t] + 2.0 * k2b[f][t] + 2.0 * k3b[f][t] + k4b[f][t]);
      }
    }
  }

  linear_half();
  state.z += dz;
}

PropagationRecord Propagator::run() {
  SimulationState state = build_state(config_);
  const int n = config_.grid_size;
  const int n_steps = static_cast<int>(std::llround(config_.length_m / config_.dz_m));
  PropagationRecord rec;

  auto mean_power = [&](const std::vector<cplx>& v) {
    double p = 0.0;
    for (const auto& x : v) p += std::norm(x);
    return p / n;
  };
  auto record = [&] {
    std::array<double, 4> pa{}, pb{}, flux{};
    for (int f = 0; f < 4; ++f) {
      pa[f] = mean_power(state.a[f]);
      pb[f] = mean_power(state.b[f]);
      if (!std::isfinite(pa[f]) || !std::isfinite(pb[f])) {
        throw numerical_error("propagate: non-finite field at z = " + std::to_string(state.z));
      }
      flux[f] = (pa[f] + pb[f]) / (hbar * omega_from_um(config_.lambda_um[f]));
    }
    rec.z_m.push_back(state.z);
    rec.power_a_w.push_back(pa);
    rec.power_b_w.push_back(pb);
    rec.photon_flux.push_back(flux);
    const double tot = pa[0] + pa[1] + pa[2] + pa[3] + pb[0] + pb[1] + pb[2] + pb[3];
    if (config_.gamma_per_w_m * 2.0 * tot * config_.dz_m > 0.05) {
      rec.nonlinear_phase_warning = true;
    }
  };

  record();
  for (int s = 1; s <= n_steps; ++s) {
    step(state);
    if (s % config_.record_stride == 0 || s == n_steps) record();
  }
  return rec;
}

SimulationState step(SimulationState state, const SimulationConfig& config, double dz_m) {
  SimulationConfig c = config;
  c.dz_m = dz_m;
  Propagator prop(c);
  prop.step(state);
  return state;
}

PropagationRecord propagate(const SimulationConfig& config) {
  Propagator prop(config);
  return prop.run();
}

std::vector<GainPoint> gain_scan(const SimulationConfig& config, double kappa_lo_per_m,
                                 double kappa_hi_per_m, int n_points, int threads) {
  config.validate();
  if (n_points < 2 || !(kappa_lo_per_m < kappa_hi_per_m)) {
    throw std::invalid_argument("gain_scan: bad kappa range or point count");
  }
  if (!(config.signal_seed_w > 0.0)) {
    throw std::invalid_argument("gain_scan: needs a nonzero signal seed");
  }
  std::vector<GainPoint> out(n_points);
  auto work = [&](int idx) {
    SimulationConfig c = config;
    c.kappa_per_m[int(Field::P2)] =
        kappa_lo_per_m + (kappa_hi_per_m - kappa_lo_per_m) * idx / (n_points - 1);
    auto rec = propagate(c);
    const double p_out = rec.power_a_w.back()[int(Field::I)] + rec.power_b_w.back()[int(Field::I)];
    out[idx] = {c.kappa_per_m[int(Field::P2)],
                10.0 * std::log10(std::fmax(p_out, 1e-300) / c.signal_seed_w)};
  };
  if (threads <= 1) {
    for (int i = 0; i < n_points; ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t stride = threads;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < n_points; i += static_cast<int>(stride)) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace fwmc

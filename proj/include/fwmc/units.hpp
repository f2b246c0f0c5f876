#pragma once

#include <cmath>

namespace fwmc {

inline constexpr double c_light = 299792458.0;     // m/s
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Angular frequency (rad/s) of a vacuum wavelength in micrometres.
inline double omega_from_um(double lambda_um) {
  return two_pi * c_light / (lambda_um * 1e-6);
}

/// Vacuum wavelength in micrometres of an angular frequency (rad/s).
inline double um_from_omega(double omega) {
  return two_pi * c_light / omega * 1e6;
}

}  // namespace fwmc

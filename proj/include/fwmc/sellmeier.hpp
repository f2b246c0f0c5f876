#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fwmc {

/// Sellmeier-type material dispersion model,
///   n^2(lambda) = 1 + sum_i B_i lambda^2 / (lambda^2 - C_i),
/// with lambda in micrometres and C_i in um^2.
struct MaterialModel {
  std::string name;
  std::vector<std::pair<double, double>> terms;  // (B_i, C_i um^2)
  double lambda_min_um = 0.0;                    // validity window
  double lambda_max_um = 0.0;

  bool in_window(double lambda_um) const {
    return lambda_um >= lambda_min_um && lambda_um <= lambda_max_um;
  }
};

/// Refractive index at a vacuum wavelength inside the validity window.
/// Throws std::domain_error outside the window or if n^2 <= 1 would result
/// in a nonphysical index.
double material_index(const MaterialModel& model, double lambda_um);

/// Fused silica (Malitson coefficients), valid 0.21-6.7 um.
const MaterialModel& fused_silica();

/// Crystalline silicon (Salzberg-Villa coefficients), valid 1.2-11 um.
const MaterialModel& silicon();

}  // namespace fwmc

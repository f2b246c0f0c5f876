#include "fwmc/sellmeier.hpp"

#include <cmath>
#include <stdexcept>

namespace fwmc {

double material_index(const MaterialModel& model, double lambda_um) {
  if (!model.in_window(lambda_um)) {
    throw std::domain_error("material_index: wavelength " + std::to_string(lambda_um) +
                            " um outside validity window of '" + model.name + "'");
  }
  const double l2 = lambda_um * lambda_um;
  double n2 = 1.0;
  for (const auto& [b, c] : model.terms) {
    n2 += b * l2 / (l2 - c);
  }
  if (!(n2 >= 1.0)) {
    throw std::domain_error("material_index: nonphysical n^2 for '" + model.name + "' at " +
                            std::to_string(lambda_um) + " um");
  }
  return std::sqrt(n2);
}

const MaterialModel& fused_silica() {
  static const MaterialModel m{
      "fused-silica",
      {{0.6961663, 0.0684043 * 0.0684043},
       {0.4079426, 0.1162414 * 0.1162414},
       {0.8974794, 9.896161 * 9.896161}},
      0.21,
      6.7};
  return m;
}

const MaterialModel& silicon() {
  static const MaterialModel m{
      "silicon",
      {{10.6684293, 0.301516485 * 0.301516485},
       {0.0030434748, 1.13475115 * 1.13475115},
       {1.54133408, 1104.0 * 1104.0}},
      1.2,
      11.0};
  return m;
}

}  // namespace fwmc

#include "fwmc/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fwmc/units.hpp"

namespace fwmc {

void DispersionProvider::require_in_domain(double omega) const {
  const auto d = domain();
  if (!d.contains(omega)) {
    throw std::domain_error("dispersion query at omega=" + std::to_string(omega) +
                            " rad/s outside provider domain [" + std::to_string(d.lo) + ", " +
                            std::to_string(d.hi) + "]");
  }
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n) throw std::invalid_argument("CubicSpline: need >= 3 samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("CubicSpline: abscissae not increasing");
  }
  // Tridiagonal solve for natural boundary conditions.
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
  b[0] = b[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    a[i] = h0;
    b[i] = 2.0 * (h0 + h1);
    c[i] = h1;
    d[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  m_.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    d[i] -= w * d[i - 1];
  }
  m_[n - 1] = d[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
}

double CubicSpline::operator()(double x) const {
  if (x_.empty()) throw std::logic_error("CubicSpline: empty");
  if (x < x_.front() || x > x_.back()) {
    throw std::domain_error("CubicSpline: abscissa outside knot range");
  }
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const std::size_t i = std::min<std::size_t>(x_.size() - 2, it == x_.begin() ? 0 : (it - x_.begin() - 1));
  const double h = x_[i + 1] - x_[i];
  const double t0 = (x_[i + 1] - x) / h, t1 = (x - x_[i]) / h;
  return t0 * y_[i] + t1 * y_[i + 1] +
         ((t0 * t0 * t0 - t0) * m_[i] + (t1 * t1 * t1 - t1) * m_[i + 1]) * h * h / 6.0;
}

TabulatedProvider::TabulatedProvider(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 8) throw std::invalid_argument("load_tabulated: need >= 8 rows");
  bool increasing = rows[1].first > rows[0].first;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool step_up = rows[i].first > rows[i - 1].first;
    if (rows[i].first == rows[i - 1].first || step_up != increasing) {
      throw std::invalid_argument("load_tabulated: wavelengths must be strictly monotone");
    }
  }
  std::vector<double> om(rows.size()), ne(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first <= 0.0) throw std::invalid_argument("load_tabulated: nonpositive wavelength");
    om[i] = omega_from_um(rows[i].first);
    ne[i] = rows[i].second;
  }
  if (om[0] > om[1]) {  // wavelength-ascending input gives omega-descending order
    std::reverse(om.begin(), om.end());
    std::reverse(ne.begin(), ne.end());
  }
  dom_ = {om.front(), om.back()};
  neff_ = CubicSpline(std::move(om), std::move(ne));
}

double TabulatedProvider::beta(double omega) const {
  require_in_domain(omega);
  return neff_(omega) * omega / c_light;
}

DispersionPtr load_tabulated(const std::vector<std::pair<double, double>>& rows) {
  return std::make_shared<TabulatedProvider>(rows);
}

DispersionPtr load_tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dispersion table: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("wavelength_um", 0) == 0) continue;  // header row
    }
    std::istringstream ls(line);
    double lam, ne;
    char comma;
    if (!(ls >> lam >> comma >> ne) || comma != ',') {
      throw std::runtime_error("bad row in dispersion table " + path + ": " + line);
    }
    rows.emplace_back(lam, ne);
  }
  return load_tabulated(rows);
}

double group_index(const DispersionProvider& provider, double omega) {
  const double h = 1e-4 * omega;
  const auto d = provider.domain();
  if (!(d.contains(omega - h) && d.contains(omega + h))) {
    throw std::domain_error("group_index: omega too close to provider domain edge");
  }
  auto central = [&](double step) {
    return (provider.beta(omega + step) - provider.beta(omega - step)) / (2.0 * step);
  };
  const double d_h = central(h), d_h2 = central(0.5 * h);
  return c_light * (4.0 * d_h2 - d_h) / 3.0;  // Richardson, O(h^4)
}

}  // namespace fwmc

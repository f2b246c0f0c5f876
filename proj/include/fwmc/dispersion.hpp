#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fwmc {

struct OmegaInterval {
  double lo = 0.0;  // rad/s
  double hi = 0.0;

  bool contains(double omega) const { return omega >= lo && omega <= hi; }
  OmegaInterval intersect(const OmegaInterval& other) const {
    return {lo > other.lo ? lo : other.lo, hi < other.hi ? hi : other.hi};
  }
};

/// Maps angular frequency to the propagation constant beta(omega) of one
/// guided mode. Implementations are immutable after construction and safe
/// for concurrent reads. Queries outside the domain throw std::domain_error.
class DispersionProvider {
 public:
  virtual ~DispersionProvider() = default;
  virtual double beta(double omega) const = 0;  // 1/m
  virtual OmegaInterval domain() const = 0;

 protected:
  void require_in_domain(double omega) const;
};

using DispersionPtr = std::shared_ptr<const DispersionProvider>;

/// Provider from a closed-form beta(omega).
class AnalyticProvider final : public DispersionProvider {
 public:
  AnalyticProvider(std::function<double(double)> beta_fn, OmegaInterval dom)
      : fn_(std::move(beta_fn)), dom_(dom) {}
  double beta(double omega) const override {
    require_in_domain(omega);
    return fn_(omega);
  }
  OmegaInterval domain() const override { return dom_; }

 private:
  std::function<double(double)> fn_;
  OmegaInterval dom_;
};

/// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;  // throws std::domain_error off the knots
  double xmin() const { return x_.front(); }
  double xmax() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

/// Provider interpolating tabulated (wavelength, effective index) samples.
class TabulatedProvider final : public DispersionProvider {
 public:
  /// Rows are (wavelength um, n_eff), at least 8 of them, wavelengths
  /// strictly monotone. n_eff is splined against omega.
  explicit TabulatedProvider(const std::vector<std::pair<double, double>>& rows);
  double beta(double omega) const override;
  OmegaInterval domain() const override { return dom_; }

 private:
  CubicSpline neff_;
  OmegaInterval dom_;
};

DispersionPtr load_tabulated(const std::vector<std::pair<double, double>>& rows);

/// Parse a `wavelength_um,n_eff` CSV (comment lines start with '#').
DispersionPtr load_tabulated_csv(const std::string& path);

/// n_g = c dbeta/domega by central difference with Richardson extrapolation
/// (steps h = 1e-4 omega and h/2). omega needs a two-sided neighbourhood.
double group_index(const DispersionProvider& provider, double omega);

}  // namespace fwmc

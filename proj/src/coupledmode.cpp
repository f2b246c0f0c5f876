#include "fwmc/coupledmode.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fwmc/units.hpp"

namespace fwmc {

SupermodeEntry supermodes(double beta_a, double beta_b, double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("supermodes: kappa must be >= 0");
  SupermodeEntry e;
  e.beta_bar = 0.5 * (beta_a + beta_b);
  e.delta_beta = 0.5 * (beta_a - beta_b);
  e.kappa = kappa;
  e.psi = std::hypot(e.delta_beta, kappa);
  e.beta_plus = e.beta_bar + e.psi;
  e.beta_minus = e.beta_bar - e.psi;
  return e;
}

SupermodeFields supermode_fields(double delta_beta, double kappa) {
  if (!(kappa >= 0.0)) throw std::invalid_argument("supermode_fields: kappa must be >= 0");
  SupermodeFields f;
  if (kappa == 0.0) {
    if (delta_beta == 0.0) {
      const double r = 1.0 / std::sqrt(2.0);
      f.even_a = r; f.even_b = r;
      f.odd_a = -r; f.odd_b = r;
      f.degenerate = true;
      return f;
    }
    // Decoupled limit: the upper branch sits in the higher-index guide.
    if (delta_beta > 0.0) {
      f.even_a = 1.0; f.even_b = 0.0;
      f.odd_a = 0.0; f.odd_b = 1.0;
    } else {
      f.even_a = 0.0; f.even_b = 1.0;
      f.odd_a = 1.0; f.odd_b = 0.0;
    }
    return f;
  }
  const double psi = std::hypot(delta_beta, kappa);
  const double re = (delta_beta + psi) / (-kappa);  // c_A/c_B, even
  const double ro = (delta_beta - psi) / (-kappa);  // c_A/c_B, odd
  const double ne = std::sqrt(re * re + 1.0), no = std::sqrt(ro * ro + 1.0);
  f.even_a = re / ne; f.even_b = 1.0 / ne;
  f.odd_a = ro / no; f.odd_b = 1.0 / no;
  return f;
}

double beat_length(double psi) {
  if (psi < 0.0) throw std::invalid_argument("beat_length: psi must be >= 0");
  if (psi == 0.0) return std::numeric_limits<double>::infinity();
  return pi / psi;
}

CouplingModel CouplingModel::constant(double kappa_per_m) {
  return exponential(kappa_per_m, 1.55, 0.0);
}

CouplingModel CouplingModel::exponential(double kappa0_per_m, double lambda0_um,
                                         double rate_per_um) {
  if (!(kappa0_per_m >= 0.0)) throw std::invalid_argument("coupling: kappa0 must be >= 0");
  CouplingModel m;
  m.kind = Kind::exponential;
  m.kappa0_per_m = kappa0_per_m;
  m.lambda0_um = lambda0_um;
  m.rate_per_um = rate_per_um;
  return m;
}

CouplingModel CouplingModel::fiber(FiberParams a, FiberParams b, double separation_um) {
  CouplingModel m;
  m.kind = Kind::fiber;
  m.fiber_a = a;
  m.fiber_b = b;
  m.separation_um = separation_um;
  return m;
}

CouplingModel CouplingModel::tabulated(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 3) throw std::invalid_argument("coupling table: need >= 3 rows");
  bool increasing = rows[1].first > rows[0].first;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool step_up = rows[i].first > rows[i - 1].first;
    if (rows[i].first == rows[i - 1].first || step_up != increasing) {
      throw std::invalid_argument("coupling table: wavelengths must be strictly monotone");
    }
  }
  std::vector<double> om, kp;
  om.reserve(rows.size());
  kp.reserve(rows.size());
  auto push = [&](const std::pair<double, double>& r) {
    if (r.second < 0.0) throw std::invalid_argument("coupling table: kappa must be >= 0");
    om.push_back(omega_from_um(r.first));
    kp.push_back(r.second);
  };
  if (increasing) {  // ascending wavelength = descending omega; flip for the spline
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) push(*it);
  } else {
    for (const auto& r : rows) push(r);
  }
  CouplingModel m;
  m.kind = Kind::tabulated;
  m.table_domain = {om.front(), om.back()};
  m.table = CubicSpline(std::move(om), std::move(kp));
  return m;
}

double coupling_eval(const CouplingModel& model, double omega) {
  switch (model.kind) {
    case CouplingModel::Kind::exponential: {
      const double lam = um_from_omega(omega);
      return model.kappa0_per_m * std::exp(model.rate_per_um * (lam - model.lambda0_um));
    }
    case CouplingModel::Kind::fiber:
      return fiber_coupling(model.fiber_a, model.fiber_b, model.separation_um, omega);
    case CouplingModel::Kind::tabulated: {
      if (!model.table_domain.contains(omega)) {
        throw std::domain_error("coupling_eval: omega outside tabulated domain");
      }
      const double k = model.table(omega);
      return k < 0.0 ? 0.0 : k;  // clamp interpolation undershoot
    }
  }
  throw std::logic_error("coupling_eval: unknown model kind");
}

CouplingModel load_coupling_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coupling table: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("wavelength_um", 0) == 0) continue;
    }
    std::istringstream ls(line);
    double lam, k;
    char comma;
    if (!(ls >> lam >> comma >> k) || comma != ',') {
      throw std::runtime_error("bad row in coupling table " + path + ": " + line);
    }
    rows.emplace_back(lam, k);
  }
  return CouplingModel::tabulated(rows);
}

SupermodeProvider::SupermodeProvider(DispersionPtr guide_a, DispersionPtr guide_b,
                                     CouplingModel coupling, SupermodeBranch branch)
    : a_(std::move(guide_a)), b_(std::move(guide_b)), coupling_(std::move(coupling)),
      branch_(branch) {
  if (!a_ || !b_) throw std::invalid_argument("SupermodeProvider: missing guide provider");
  dom_ = a_->domain().intersect(b_->domain());
  if (coupling_.kind == CouplingModel::Kind::tabulated) {
    dom_ = dom_.intersect(coupling_.table_domain);
  }
  if (!(dom_.lo < dom_.hi)) {
    throw std::invalid_argument("SupermodeProvider: empty domain intersection");
  }
}

double SupermodeProvider::beta(double omega) const {
  require_in_domain(omega);
  const auto e = supermodes(a_->beta(omega), b_->beta(omega), coupling_eval(coupling_, omega));
  return branch_ == SupermodeBranch::upper ? e.beta_plus : e.beta_minus;
}

}  // namespace fwmc

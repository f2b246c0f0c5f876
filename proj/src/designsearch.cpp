#include "fwmc/designsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fwmc/units.hpp"

namespace fwmc {

void DesignTarget::validate() const {
  if (!(lambda_p1_um < lambda_p2_um)) throw std::invalid_argument("target: lambda_p1 < lambda_p2");
  if (!(tolerance_per_m > 0.0)) throw std::invalid_argument("target: tolerance must be > 0");
  if (!(length_m > 0.0)) throw std::invalid_argument("target: length must be > 0");
  if (!(ell_s_um > 0.0)) throw std::invalid_argument("target: ell_s must be > 0");
  for (const auto& b : bounds) {
    if (!(b.lo > 0.0) || !(b.lo <= b.hi)) {
      throw std::invalid_argument("target: bounds must be nonempty and positive");
    }
  }
}

namespace {

std::array<double, 5> dims_of(const DeviceGeometry& g) {
  return {g.w_a_um, g.h_a_um, g.w_b_um, g.h_b_um, g.s_ab_um};
}

DeviceGeometry geometry_of(const std::array<double, 5>& x, double pedestal) {
  DeviceGeometry g;
  g.w_a_um = x[0];
  g.h_a_um = x[1];
  g.w_b_um = x[2];
  g.h_b_um = x[3];
  g.s_ab_um = x[4];
  g.pedestal_um = pedestal;
  return g;
}

bool lex_less(const DeviceGeometry& a, const DeviceGeometry& b) {
  return dims_of(a) < dims_of(b);
}

}  // namespace

Candidate evaluate_candidate(const DeviceGeometry& geometry, const DesignTarget& target) {
  target.validate();
  Candidate c;
  c.geometry = geometry;
  try {
    geometry.validate();
    const double li = idler_wavelength(target.lambda_p1_um, target.lambda_p2_um,
                                       target.lambda_s_um);
    const double lam_lo = std::fmax(1.2, std::fmin(target.lambda_p1_um, target.lambda_s_um) - 0.02);
    const double lam_hi = std::fmax(target.lambda_p2_um, li) + 0.02;
    ProcessConfig pc;
    pc.guide_a = std::make_shared<RectProvider>(geometry.w_a_um, geometry.h_a_um,
                                                target.polarization, lam_lo, lam_hi);
    pc.guide_b = std::make_shared<RectProvider>(geometry.w_b_um, geometry.h_b_um,
                                                target.polarization, lam_lo, lam_hi);
    const double kappa0 = target.kappa0_per_m *
                          std::exp(-(geometry.s_ab_um - target.s0_um) / target.ell_s_um);
    pc.coupling = CouplingModel::exponential(kappa0, target.lambda0_um, target.rate_per_um);
    pc.branch = target.branch;
    pc.full_supermode = true;
    pc.lambda_p1_um = target.lambda_p1_um;
    pc.lambda_p2_um = target.lambda_p2_um;

    c.mismatch_per_m = phase_mismatch(pc, target.lambda_s_um);
    const auto gvm = gvm_report(pc, target.lambda_s_um);
    c.gvm_margin = gvm.margin;

    const double unit = two_pi / target.length_m;
    const double excess = std::fmax(0.0, std::fabs(c.mismatch_per_m) - target.tolerance_per_m);
    double obj = (excess / unit) * (excess / unit);
    if (target.require_gvm) {
      const double d1 = std::fmax(0.0, gvm.ng_p1 - gvm.ng_s);
      const double d2 = std::fmax(0.0, gvm.ng_i - gvm.ng_p1);
      obj += 10.0 * (d1 * d1 + d2 * d2);
    }
    c.objective = obj;
  } catch (const std::exception& e) {
    c.objective = std::numeric_limits<double>::infinity();
    c.diagnostic = e.what();
  }
  return c;
}

double objective(const DeviceGeometry& geometry, const DesignTarget& target) {
  return evaluate_candidate(geometry, target).objective;
}

std::vector<Candidate> grid_sweep(const DesignTarget& target, const std::array<int, 5>& samples,
                                  long budget) {
  target.validate();
  long total = 1;
  for (int s : samples) {
    if (s < 1) throw std::invalid_argument("grid_sweep: samples per axis must be >= 1");
    total *= s;
  }
  if (total > budget) throw std::invalid_argument("grid_sweep: point budget exceeded");

  auto axis_value = [&](int axis, int idx) {
    const auto& b = target.bounds[axis];
    if (samples[axis] == 1) return 0.5 * (b.lo + b.hi);
    return b.lo + (b.hi - b.lo) * idx / (samples[axis] - 1.0);
  };

  std::vector<Candidate> out;
  out.reserve(total);
  std::array<int, 5> idx{};
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    for (int axis = 4; axis >= 0; --axis) {
      idx[axis] = static_cast<int>(rem % samples[axis]);
      rem /= samples[axis];
    }
    std::array<double, 5> x{};
    for (int axis = 0; axis < 5; ++axis) x[axis] = axis_value(axis, idx[axis]);
    out.push_back(evaluate_candidate(geometry_of(x, 0.02), target));
  }
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.objective != b.objective) return a.objective < b.objective;
    return lex_less(a.geometry, b.geometry);
  });
  return out;
}

Candidate refine(const Candidate& start, const DesignTarget& target) {
  target.validate();
  constexpr int dim = 5;
  const double pedestal = start.geometry.pedestal_um;

  auto clamp = [&](std::array<double, 5> x) {
    for (int a = 0; a < dim; ++a) {
      x[a] = std::fmin(std::fmax(x[a], target.bounds[a].lo), target.bounds[a].hi);
    }
    return x;
  };
  auto score = [&](const std::array<double, 5>& x) {
    return evaluate_candidate(geometry_of(x, pedestal), target);
  };

  struct Pt {
    std::array<double, 5> x;
    Candidate cand;
  };
  std::vector<Pt> simplex;
  const auto x0 = clamp(dims_of(start.geometry));
  simplex.push_back({x0, score(x0)});
  for (int a = 0; a < dim; ++a) {
    auto x = x0;
    const double span = target.bounds[a].hi - target.bounds[a].lo;
    double h = std::fmin(0.01, span > 0.0 ? 0.25 * span : 0.01);
    if (h == 0.0) h = 1e-6;
    x[a] = (x[a] + h <= target.bounds[a].hi) ? x[a] + h : x[a] - h;
    x = clamp(x);
    simplex.push_back({x, score(x)});
  }
  auto by_obj = [](const Pt& u, const Pt& v) { return u.cand.objective < v.cand.objective; };

  for (int iter = 0; iter < 200; ++iter) {
    std::stable_sort(simplex.begin(), simplex.end(), by_obj);
    double diam = 0.0;
    for (int a = 0; a < dim; ++a) {
      diam = std::fmax(diam, std::fabs(simplex.back().x[a] - simplex.front().x[a]));
    }
    if (diam < 1e-4) break;

    std::array<double, 5> centroid{};
    for (int v = 0; v < dim; ++v) {  // all but the worst vertex
      for (int a = 0; a < dim; ++a) centroid[a] += simplex[v].x[a] / dim;
    }
    auto& worst = simplex.back();
    auto point_at = [&](double coeff) {
      std::array<double, 5> x{};
      for (int a = 0; a < dim; ++a) x[a] = centroid[a] + coeff * (worst.x[a] - centroid[a]);
      return clamp(x);
    };

    const auto xr = point_at(-1.0);  // reflection
    auto cr = score(xr);
    if (cr.objective < simplex.front().cand.objective) {
      const auto xe = point_at(-2.0);  // expansion
      auto ce = score(xe);
      worst = (ce.objective < cr.objective) ? Pt{xe, ce} : Pt{xr, cr};
      continue;
    }
    if (cr.objective < simplex[dim - 1].cand.objective) {
      worst = {xr, cr};
      continue;
    }
    const auto xc = point_at(0.5);  // contraction
    auto cc = score(xc);
    if (cc.objective < worst.cand.objective) {
      worst = {xc, cc};
      continue;
    }
    for (std::size_t v = 1; v < simplex.size(); ++v) {  // shrink toward the best
      for (int a = 0; a < dim; ++a) {
        simplex[v].x[a] = 0.5 * (simplex[v].x[a] + simplex.front().x[a]);
      }
      simplex[v].x = clamp(simplex[v].x);
      simplex[v].cand = score(simplex[v].x);
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(), by_obj);
  // contract guarantee: never hand back something worse than the input
  if (start.objective > 0.0 && simplex.front().cand.objective > start.objective) return start;
  return simplex.front().cand;
}

}  // namespace fwmc

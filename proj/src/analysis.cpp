#include "noisy_barrier/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace noisy_barrier {

double scaled_error(const Vector& x, const Vector& x_star_mu) {
  if (x.size() != x_star_mu.size()) {
    throw DimensionMismatch("scaled_error: size mismatch");
  }
  return scaled_norm_diag_inv_sq(x_star_mu, x - x_star_mu);
}

LocalConstants constants_generic(const GenericConstantInputs& in) {
  if (!(in.bar_delta > 0.0 && in.bar_delta < 1.0)) {
    throw std::invalid_argument("constants_generic: bar_delta must lie in (0, 1)");
  }
  if (!(in.xi_m > 1.0)) {
    throw std::invalid_argument("constants_generic: xi_m must exceed 1");
  }
  if (in.l_g < 0.0 || in.l_h < 0.0 || in.norm_gamma_inv < 0.0 ||
      in.x_star_inf < 0.0 || in.z_star_inf < 0.0) {
    throw std::invalid_argument("constants_generic: negative input");
  }
  const double shrink = 1.0 - in.bar_delta;
  const double xs = in.x_star_inf;
  LocalConstants c;
  c.m2 = in.xi_m * 4.0 * in.norm_gamma_inv *
         (in.l_h * xs * xs / 2.0 + in.z_star_inf / (shrink * shrink));
  c.m1 = in.xi_m * 32.0 * in.norm_gamma_inv * in.norm_gamma_inv * xs *
         (in.l_g * xs + in.z_star_inf / shrink);
  c.m0 = 8.0 * in.norm_gamma_inv;
  return c;
}

LocalConstants constants_illustrative(double mu, double bar_delta) {
  if (!(bar_delta > 0.0 && bar_delta < 1.0)) {
    throw std::invalid_argument(
        "constants_illustrative: bar_delta must lie in (0, 1)");
  }
  if (!(mu > 0.0)) {
    throw std::invalid_argument("constants_illustrative: mu must be positive");
  }
  const double up = 1.0 + bar_delta;
  const double down = 1.0 - bar_delta;
  const double x1 = (1.0 + std::sqrt(1.0 + 4.0 * mu)) / 2.0;
  LocalConstants c;
  c.m2 = (up / down) * (up / down);
  c.m1 = 2.0 * std::pow(up, 4) * x1 * (x1 + 1.0 / down);
  c.m0 = 2.0 * up * up;
  return c;
}

RadiiReport radii(const LocalConstants& c, double eps_g, double eps_h,
                  double bar_delta) {
  RadiiReport r;
  r.bar_delta = bar_delta;
  const double lead = 1.0 - c.m1 * eps_h;
  r.delta = lead * lead - 4.0 * c.m0 * c.m2 * eps_g;
  r.feasible = eps_h * c.m1 < 1.0 && r.delta >= 0.0 && c.m2 > 0.0;
  if (!r.feasible) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.delta_minus = r.delta_plus = r.delta1 = r.delta2 = nan;
    return r;
  }
  const double root = std::sqrt(r.delta);
  r.delta_plus = (lead + root) / (2.0 * c.m2);
  // Vieta form; exact zero when ε_g = 0.
  r.delta_minus = 2.0 * c.m0 * eps_g / (lead + root);
  r.delta1 = r.delta_minus;
  r.delta2 = std::min(r.delta_plus, bar_delta);
  return r;
}

std::vector<double> linear_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo < hi)) {
    throw std::invalid_argument("linear_grid: need lo < hi and count >= 2");
  }
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = lo + (hi - lo) * i / (count - 1);
  }
  return grid;
}

namespace {

constexpr double kBisectionTol = 1e-6;

/// First root of h on the grid where h goes from positive to non-positive,
/// looking only at intervals whose endpoints are both feasible.
std::optional<double> first_crossing(
    const std::vector<double>& grid, const std::vector<RadiiReport>& points,
    const std::function<std::optional<double>(double)>& h) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!points[i].feasible || !points[i + 1].feasible) continue;
    const auto ha = h(grid[i]);
    const auto hb = h(grid[i + 1]);
    if (!ha || !hb || !(*ha > 0.0) || *hb > 0.0) continue;
    double lo = grid[i];
    double hi = grid[i + 1];
    while (hi - lo > kBisectionTol) {
      const double mid = 0.5 * (lo + hi);
      const auto hm = h(mid);
      if (!hm) break;
      if (*hm > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
  return std::nullopt;
}

}  // namespace

RadiiSweep radii_sweep(const ConstantsFn& constants, double eps_g, double eps_h,
                       const std::vector<double>& grid) {
  if (grid.size() < 2) {
    throw std::invalid_argument("radii_sweep: grid needs at least two points");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw std::invalid_argument(
          "radii_sweep: grid must be increasing inside (0, 1)");
    }
  }
  RadiiSweep sweep;
  sweep.points.reserve(grid.size());
  for (double d : grid) {
    sweep.points.push_back(radii(constants(d), eps_g, eps_h, d));
  }

  auto gap = [&](double d, bool minus) -> std::optional<double> {
    const RadiiReport r = radii(constants(d), eps_g, eps_h, d);
    if (!r.feasible) return std::nullopt;
    return (minus ? r.delta_minus : r.delta_plus) - d;
  };

  if (eps_g == 0.0) {
    sweep.delta1_min = 0.0;
  } else {
    const auto d1 = first_crossing(grid, sweep.points,
                                   [&](double d) { return gap(d, true); });
    if (!d1) throw NoCrossing("radii_sweep: delta_minus never crosses bar_delta");
    sweep.delta1_min = *d1;
  }
  const auto d2 = first_crossing(grid, sweep.points,
                                 [&](double d) { return gap(d, false); });
  if (!d2) throw NoCrossing("radii_sweep: delta_plus never crosses bar_delta");
  sweep.delta2_max = *d2;
  return sweep;
}

std::vector<ContractionSample> contraction_check(
    const Trajectory& trajectory, const CentralPath& path,
    const LocalConstants& c, double eps_g, double eps_h, double radius) {
  std::vector<ContractionSample> out;
  out.reserve(trajectory.records.size());
  for (std::size_t k = 0; k < trajectory.records.size(); ++k) {
    const IterateRecord& r = trajectory.records[k];
    const Vector x_star = path.x_of_mu(r.mu);
    ContractionSample s;
    s.k = static_cast<int>(k);
    s.e = scaled_error(r.x, x_star);
    s.bound = c.m2 * s.e * s.e + c.m1 * eps_h * s.e + c.m0 * eps_g;
    s.e_plus = scaled_error(r.x + r.direction, x_star);
    s.in_neighborhood = s.e <= radius;
    out.push_back(s);
  }
  return out;
}

ActiveSetReport active_set_report(const Trajectory& trajectory,
                                  const KnownSolution& known, int window) {
  const auto& records = trajectory.records;
  if (window <= 0 || static_cast<std::size_t>(window) > records.size()) {
    throw std::invalid_argument(
        "active_set_report: window must lie in [1, trajectory length]");
  }
  ActiveSetReport report;
  report.window = window;
  report.mu = records.back().mu;
  report.empty_active_set = known.active_strict.empty();
  report.index_max.assign(known.active_strict.size(), 0.0);
  for (std::size_t k = records.size() - window; k < records.size(); ++k) {
    for (std::size_t j = 0; j < known.active_strict.size(); ++j) {
      const double v = records[k].x(known.active_strict[j]);
      report.index_max[j] = std::max(report.index_max[j], v);
      report.window_max = std::max(report.window_max, v);
    }
  }
  return report;
}

}  // namespace noisy_barrier

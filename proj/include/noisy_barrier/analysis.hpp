#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "noisy_barrier/linalg.hpp"
#include "noisy_barrier/problems.hpp"
#include "noisy_barrier/solver.hpp"

namespace noisy_barrier {

/// ‖x − x*^μ‖ with each component divided by x*^μ_i.
double scaled_error(const Vector& x, const Vector& x_star_mu);

struct GenericConstantInputs {
  double l_g = 0.0;
  double l_h = 0.0;
  double norm_gamma_inv = 0.0;
  double x_star_inf = 0.0;
  double z_star_inf = 0.0;
  double bar_delta = 0.0;
  double xi_m = 1.01;
};

struct LocalConstants {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
};

/// M₂, M₁, M₀ from Lipschitz constants and solution norms.
LocalConstants constants_generic(const GenericConstantInputs& in);

/// Specialization for the illustrative example (c1 = c2 = 1) at barrier
/// parameter μ and neighborhood radius δ̄.
LocalConstants constants_illustrative(double mu, double bar_delta);

struct RadiiReport {
  double bar_delta = 0.0;
  double delta = 0.0;  // discriminant
  double delta_minus = 0.0;
  double delta_plus = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  bool feasible = false;
  std::optional<double> delta1_min;
  std::optional<double> delta2_max;
};

/// Roots of M₂δ² − (1 − M₁ε_H)δ + M₀ε_g. Infeasibility is reported, not thrown.
RadiiReport radii(const LocalConstants& c, double eps_g, double eps_h,
                  double bar_delta);

class NoCrossing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ConstantsFn = std::function<LocalConstants(double bar_delta)>;

struct RadiiSweep {
  std::vector<RadiiReport> points;
  double delta1_min = 0.0;
  double delta2_max = 0.0;
};

/// Uniform grid on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int count);

/// Scans the δ̄ grid and bisects δ⁻(δ̄) = δ̄ and δ⁺(δ̄) = δ̄ to 1e-6.
/// δ₁^min is 0 when ε_g = 0. Throws NoCrossing.
RadiiSweep radii_sweep(const ConstantsFn& constants, double eps_g, double eps_h,
                       const std::vector<double>& grid);

struct ContractionSample {
  int k = 0;
  double e = 0.0;
  double bound = 0.0;
  double e_plus = 0.0;
  bool in_neighborhood = false;

  bool violated() const { return in_neighborhood && e_plus > bound; }
};

/// Full-step error x_k + d_k against M₂e² + M₁ε_H e + M₀ε_g for every
/// record; iterates with e ≤ radius are marked in-neighborhood.
std::vector<ContractionSample> contraction_check(
    const Trajectory& trajectory, const CentralPath& path,
    const LocalConstants& c, double eps_g, double eps_h, double radius);

struct ActiveSetReport {
  double mu = 0.0;
  int window = 10;
  double window_max = 0.0;
  bool empty_active_set = false;
  /// Per-index maxima over the window, in active_strict order.
  std::vector<double> index_max;
};

/// max over the last `window` records of max_{i∈𝒜s} x_i.
ActiveSetReport active_set_report(const Trajectory& trajectory,
                                  const KnownSolution& known, int window = 10);

}  // namespace noisy_barrier

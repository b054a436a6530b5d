#pragma once

#include <functional>
#include <stdexcept>

#include "noisy_barrier/linalg.hpp"
#include "noisy_barrier/noise.hpp"

namespace noisy_barrier {

/// Largest α ∈ (0, 1] with x + αd ≥ (1 − τ)x.
double fraction_to_boundary(const Vector& x, const Vector& d, double tau);

/// The same rule applied to the duals.
double dual_fraction_to_boundary(const Vector& z, const Vector& dz, double tau);

class HalvingCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LineSearchResult {
  double alpha = 0.0;
  int halvings = 0;
  double phi_trial = 0.0;
  double armijo_lhs = 0.0;
  double armijo_rhs = 0.0;
  /// f̃ draws spent on trial points.
  int trial_evaluations = 0;
};

struct ArmijoParameters {
  double nu = 1e-6;
  double eps_r = 0.0;
  int halving_cap = 60;
};

/// Noisy barrier value at a trial point; each call is a fresh draw.
using TrialBarrier = std::function<double(const Vector&)>;

/**
 * Backtracks from alpha_max by halving until
 *   φ̃(x + αd) ≤ φ̃(x) + ν·α·∇φ̃ᵀd + ε_R.
 * `phi_x` is the value already drawn at x; it is not re-drawn.
 * Throws HalvingCapExceeded after `halving_cap` rejections.
 */
LineSearchResult relaxed_armijo_search(const TrialBarrier& trial_phi,
                                       double phi_x, const Vector& x,
                                       const Vector& d, const Vector& grad_tilde,
                                       double alpha_max,
                                       const ArmijoParameters& params);

/// Oracle-backed search. Enforces ε_R > 2ε_f against the oracle's noise spec.
LineSearchResult relaxed_armijo_search(NoisyOracle& oracle, double mu,
                                       double phi_x, const Vector& x,
                                       const Vector& d, const Vector& grad_tilde,
                                       double alpha_max,
                                       const ArmijoParameters& params);

}  // namespace noisy_barrier

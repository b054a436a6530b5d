#include "noisy_barrier/step.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisy_barrier/barrier.hpp"

namespace noisy_barrier {

namespace {

double boundary_cap(const Vector& v, const Vector& dv, double tau,
                    const char* who) {
  if (v.size() != dv.size()) {
    throw DimensionMismatch(std::string(who) + ": size mismatch");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": tau must lie in (0, 1)");
  }
  require_interior(v, who);
  double alpha = 1.0;
  for (Index i = 0; i < v.size(); ++i) {
    if (dv(i) < 0.0) alpha = std::min(alpha, -tau * v(i) / dv(i));
  }
  return alpha;
}

}  // namespace

double fraction_to_boundary(const Vector& x, const Vector& d, double tau) {
  return boundary_cap(x, d, tau, "fraction_to_boundary");
}

double dual_fraction_to_boundary(const Vector& z, const Vector& dz, double tau) {
  return boundary_cap(z, dz, tau, "dual_fraction_to_boundary");
}

LineSearchResult relaxed_armijo_search(const TrialBarrier& trial_phi,
                                       double phi_x, const Vector& x,
                                       const Vector& d, const Vector& grad_tilde,
                                       double alpha_max,
                                       const ArmijoParameters& params) {
  if (!(params.nu > 0.0 && params.nu < 0.5)) {
    throw std::invalid_argument("relaxed_armijo_search: nu must lie in (0, 1/2)");
  }
  if (!(alpha_max > 0.0 && alpha_max <= 1.0)) {
    throw std::invalid_argument(
        "relaxed_armijo_search: alpha_max must lie in (0, 1]");
  }
  const double slope = grad_tilde.dot(d);
  LineSearchResult result;
  double alpha = alpha_max;
  for (int rejected = 0;; ++rejected) {
    const Vector trial = x + alpha * d;
    const double phi_trial = trial_phi(trial);
    ++result.trial_evaluations;
    const double rhs = phi_x + params.nu * alpha * slope + params.eps_r;
    if (phi_trial <= rhs) {
      result.alpha = alpha;
      result.halvings = rejected;
      result.phi_trial = phi_trial;
      result.armijo_lhs = phi_trial;
      result.armijo_rhs = rhs;
      return result;
    }
    if (rejected + 1 >= params.halving_cap) {
      throw HalvingCapExceeded("relaxed Armijo search rejected " +
                               std::to_string(params.halving_cap) +
                               " trial steps");
    }
    alpha *= 0.5;
  }
}

LineSearchResult relaxed_armijo_search(NoisyOracle& oracle, double mu,
                                       double phi_x, const Vector& x,
                                       const Vector& d, const Vector& grad_tilde,
                                       double alpha_max,
                                       const ArmijoParameters& params) {
  if (!(params.eps_r > 2.0 * oracle.spec().eps_f)) {
    throw std::invalid_argument(
        "relaxed_armijo_search: eps_r must exceed 2*eps_f");
  }
  auto trial_phi = [&oracle, mu](const Vector& trial) {
    return barrier_value(oracle.f(trial), mu, trial);
  };
  return relaxed_armijo_search(trial_phi, phi_x, x, d, grad_tilde, alpha_max,
                               params);
}

}  // namespace noisy_barrier

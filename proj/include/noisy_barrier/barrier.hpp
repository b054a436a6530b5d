#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "noisy_barrier/linalg.hpp"
#include "noisy_barrier/noise.hpp"

namespace noisy_barrier {

class NonInteriorPoint : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RegularizationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// φ̃ = f̃ − μΣlog x and ∇φ̃ = g̃ − μX⁻¹e. The log terms are always exact.
struct BarrierEval {
  double mu = 0.0;
  double phi = 0.0;
  double f_tilde = 0.0;
  Vector grad;
  Vector g_tilde;
};

/// Throws NonInteriorPoint unless x > 0.
void require_interior(const Vector& x, std::string_view where);

/// f − μΣ log x_i.
double barrier_value(double f_value, double mu, const Vector& x);
/// g − μX⁻¹e.
Vector barrier_gradient(const Vector& g, double mu, const Vector& x);

/// One f̃ and one g̃ draw.
BarrierEval eval_barrier(NoisyOracle& oracle, double mu, const Vector& x);

/// Noiseless ∇φ^μ(x); only available because the problems are synthetic.
Vector true_barrier_gradient(const Problem& problem, double mu, const Vector& x);

enum class HessianMode {
  /// Ĥ + μX⁻²
  Primal,
  /// Ĥ + ZX⁻¹
  PrimalDual,
  /// G̃ = H̃ + μX⁻², the noisy Newton model of the local analysis.
  NoisyNewtonPrimal,
};

std::string_view to_string(HessianMode mode);
/// Accepts "primal", "primal_dual", "noisy_newton".
HessianMode parse_hessian_mode(std::string_view text);

/// Regularization ladder for Ĝ + λI.
struct RegularizationPolicy {
  double lambda_floor = 1e-8;
  double lambda_relative = 1e-4;  // times ‖Ĥ‖_max
  double growth = 10.0;
  double lambda_max = 1e12;
};

/**
 * Ĝ_k actually used for the step: the mode's base matrix plus λI, factored.
 * σ_min is computed on first request.
 */
class HessianModel {
 public:
  HessianModel(HessianMode mode, SymMatrix matrix, double lambda,
               Factorization factor)
      : mode_(mode),
        matrix_(std::move(matrix)),
        lambda_(lambda),
        factor_(std::move(factor)) {}

  HessianMode mode() const { return mode_; }
  /// Regularized matrix (λ included).
  const SymMatrix& matrix() const { return matrix_; }
  double lambda() const { return lambda_; }
  const Factorization& factor() const { return factor_; }
  double sigma_min() const;

 private:
  HessianMode mode_;
  SymMatrix matrix_;
  double lambda_;
  Factorization factor_;
  mutable std::optional<double> sigma_min_;
};

/**
 * Builds Ĝ from a given noisy Hessian draw. `z` is required (and must be
 * positive) exactly when mode is PrimalDual.
 *
 * Tries λ = 0 first, then λ_init = max(floor, relative·‖Ĥ‖_max) multiplied by
 * `growth` until Cholesky succeeds. Throws RegularizationFailed past
 * lambda_max.
 */
HessianModel assemble_hessian_from(const SymMatrix& h_tilde, HessianMode mode,
                                   double mu, const Vector& x,
                                   const std::optional<Vector>& z,
                                   const RegularizationPolicy& policy = {});

/// Same, drawing one H̃ from the oracle.
HessianModel assemble_hessian(NoisyOracle& oracle, HessianMode mode, double mu,
                              const Vector& x, const std::optional<Vector>& z,
                              const RegularizationPolicy& policy = {});

}  // namespace noisy_barrier

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noisy_barrier/barrier.hpp"
#include "noisy_barrier/noise.hpp"
#include "noisy_barrier/step.hpp"
#include "noisy_barrier/stopping.hpp"

namespace noisy_barrier {

enum class MuStrategyKind {
  /// Leave a stage once C1 and C2 hold, or n_mu iterations after C1 first held.
  Heuristic,
  /// Leave a stage after a fixed number of iterations.
  Periodic,
  /// Leave a stage as soon as the practical stopping test triggers.
  StoppingTestOnly,
  /// Single stage at mu0 for max_inner iterations.
  FixedMu,
};

struct MuStrategy {
  MuStrategyKind kind = MuStrategyKind::Heuristic;
  int period = 40;
};

std::string_view to_string(MuStrategyKind kind);
/// Accepts "heuristic", "periodic", "stopping_test", "fixed".
MuStrategyKind parse_mu_strategy(std::string_view text);

struct SolverConfig {
  double nu = 1e-6;
  /// Relaxation ε_R; unset means 2.05·ε_f (1e-10 for noiseless oracles).
  std::optional<double> eps_r;
  /// Fraction-to-the-boundary parameter of standalone fixed-μ runs.
  double tau = 0.995;
  /// Floor of τ_ℓ = max{τ_min, 1 − μ_ℓ} inside the continuation.
  double tau_min = 0.99;
  double gamma = 0.99;
  double kappa_sigma = 1e4;
  double kappa_mu = 10.0;
  double kappa_dec = 0.1;
  int n_mu = 10;
  double mu0 = 0.1;
  double mu_min = 1e-7;
  int max_inner = 5000;
  int halving_cap = 60;
  HessianMode hessian_mode = HessianMode::PrimalDual;
  MuStrategy mu_strategy;
  NuRule nu_rule = NuRule::Balanced;
  RegularizationPolicy regularization;

  double resolved_eps_r(const NoiseSpec& noise) const;
  /// Throws std::invalid_argument on any out-of-range field, including
  /// ε_R ≤ 2ε_f for the given noise.
  void validate(const NoiseSpec& noise) const;
};

/// One inner iteration. x, z, d are the values at the start of the iteration;
/// the stopping quantities certify x.
struct IterateRecord {
  int outer = 0;
  int inner = 0;
  double mu = 0.0;
  Vector x;
  Vector z;
  double alpha = 0.0;
  double alpha_max = 0.0;
  double alpha_dual = 0.0;
  double lambda = 0.0;
  std::uint64_t f_evals = 0;
  double grad_tilde_norm = 0.0;
  double grad_tilde_scaled = 0.0;
  double sigma_min_G = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double nu_k = 0.0;
  bool cond_i = false;
  bool cond_ii = false;
  bool c1 = false;
  bool c2 = false;

  double nu_hat1 = 0.0;
  double nu_hat2 = 0.0;
  int halvings = 0;
  double phi = 0.0;
  double phi_trial = 0.0;
  double armijo_lhs = 0.0;
  double armijo_rhs = 0.0;
  double compl_inf = 0.0;
  double true_grad_norm = 0.0;
  double beta = 0.0;
  /// Block residuals of the primal-dual Newton system (zero in primal modes).
  double kkt_residual_primal = 0.0;
  double kkt_residual_dual = 0.0;

  Vector direction;
  Vector grad_tilde;
  Vector true_grad;

  bool triggered() const { return cond_i || cond_ii; }
};

enum class TerminationReason { MaxInner, StopPredicate, MuMinReached };
std::string_view to_string(TerminationReason reason);

struct Trajectory {
  std::vector<IterateRecord> records;
  TerminationReason reason = TerminationReason::MaxInner;
  Vector x;
  Vector z;
  double mu = 0.0;
};

/// Raised for regularization or line-search breakdowns; carries the
/// iterations completed before the failure.
class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(const std::string& what, Trajectory partial);
  const Trajectory& partial() const { return *partial_; }

 private:
  std::shared_ptr<const Trajectory> partial_;
};

/// Ĝ⁻¹ applied to −∇φ̃.
Vector primal_direction(const HessianModel& hm, const Vector& grad_tilde);

/// −X⁻¹(Zd − μe) − z
Vector dual_direction(const Vector& x, const Vector& z, double mu,
                      const Vector& d);

/// z_i ← max{min{z_i, κ_Σμ/x_i}, μ/(κ_Σ x_i)}
Vector project_duals(const Vector& x, const Vector& z, double mu,
                     double kappa_sigma);

using StopPredicate = std::function<bool(const IterateRecord&)>;

/**
 * Relaxed-Armijo barrier iterations at fixed μ, with τ = config.tau. Runs
 * config.max_inner iterations or until `stop` returns true (the iteration
 * that satisfies it still takes its step). z0 defaults to μX₀⁻¹e.
 */
Trajectory solve_fixed_mu(NoisyOracle& oracle, const SolverConfig& config,
                          double mu, const Vector& x0,
                          std::optional<Vector> z0 = std::nullopt,
                          const StopPredicate& stop = {});

/// Interior-point continuation μ_ℓ = μ₀κ_dec^ℓ down to μ_min, starting from
/// the problem's x0 and z0 = μ₀X₀⁻¹e, stages ended by config.mu_strategy.
Trajectory solve_continuation(NoisyOracle& oracle, const SolverConfig& config);

}  // namespace noisy_barrier

#pragma once

#include "noisy_barrier/barrier.hpp"
#include "noisy_barrier/linalg.hpp"

namespace noisy_barrier {

/// Largest Armijo parameter the accepted step would have satisfied:
///   (φ̃(x) − φ̃(x + αd) + ε_R) / (α‖∇φ̃‖²_{Ĝ⁻¹}).
/// Returns +∞ when the scaled gradient vanishes.
double nu_hat1(double phi_tilde_x, double phi_tilde_trial, double alpha,
               double scaled_grad, double eps_r);

/// The ν that makes T₁(ν) = T₂(ν); lies in (0, ½], equal to ½ when ε_g = 0.
double nu_hat2(double eps_f, double eps_r, double sigma_min_G, double gamma,
               double alpha, double eps_g);

struct Tolerances {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// T₁ = (1/√σ̂)((1+2ν)/(1−2ν) + 1)ε_g,  T₂ = √((2ε_f + ε_R)/(γαν)).
/// Rejects ν ∉ (0, ½).
Tolerances tolerances(double eps_g, double eps_f, double eps_r,
                      double sigma_min_G, double gamma, double alpha,
                      double nu_k);

enum class NuRule {
  /// ν_k = max{ν, min{ν̂₁, ν̂₂}}
  Balanced,
  /// ν_k = ν
  Constant,
};

struct StopInputs {
  double alpha = 0.0;
  double scaled_grad = 0.0;
  double sigma_min_G = 0.0;
  double phi_x = 0.0;
  double phi_trial = 0.0;
  double mu = 0.0;
  const Vector* x = nullptr;
  const Vector* z = nullptr;
};

struct StopParameters {
  double nu = 1e-6;
  double eps_r = 0.0;
  double eps_f = 0.0;
  double eps_g = 0.0;
  double gamma = 0.99;
  double kappa_mu = 10.0;
  NuRule nu_rule = NuRule::Balanced;
};

struct StopReport {
  double t1 = 0.0;
  double t2 = 0.0;
  double nu_hat1 = 0.0;
  double nu_hat2 = 0.0;
  double nu_k = 0.0;
  double scaled_grad = 0.0;
  /// scaled_grad ≤ T₁
  bool cond_i = false;
  /// T₁ < scaled_grad ≤ T₂
  bool cond_ii = false;
  /// scaled_grad ≤ max{T₁, T₂} + κ_μ μ
  bool c1 = false;
  /// ‖Xz − μe‖_∞ ≤ κ_μ μ
  bool c2 = false;
  double compl_inf = 0.0;

  bool triggered() const { return cond_i || cond_ii; }
};

StopReport evaluate_stop(const StopInputs& in, const StopParameters& params);

/// β = ‖g̃ − g‖_{Ĝ⁻¹} / ‖∇φ^μ‖_{Ĝ⁻¹}, with +∞ for a vanishing denominator and
/// 0 when both vanish.
double noise_to_signal(const Vector& true_grad_phi, const Vector& grad_tilde,
                       const HessianModel& hm);

}  // namespace noisy_barrier

#include "noisy_barrier/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace noisy_barrier {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ν must stay strictly below ½ for T₁ to be finite.
constexpr double kNuCeiling = 0.5 - 1e-15;

}  // namespace

double nu_hat1(double phi_tilde_x, double phi_tilde_trial, double alpha,
               double scaled_grad, double eps_r) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("nu_hat1: alpha must be positive");
  }
  const double numerator = phi_tilde_x - phi_tilde_trial + eps_r;
  const double denominator = alpha * scaled_grad * scaled_grad;
  if (denominator == 0.0) return kInf;
  return numerator / denominator;
}

double nu_hat2(double eps_f, double eps_r, double sigma_min_G, double gamma,
               double alpha, double eps_g) {
  if (!(sigma_min_G > 0.0) || !(alpha > 0.0) || !(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("nu_hat2: invalid arguments");
  }
  const double a = (2.0 * eps_f + eps_r) * sigma_min_G;
  const double b = gamma * alpha * eps_g * eps_g;
  // ((a + b) − √(b² + 2ab)) / (2a) rationalized to a / (2((a + b) + √(b² + 2ab)))
  // so it does not cancel when b ≫ a.
  const double root = std::sqrt(b * b + 2.0 * a * b);
  return a / (2.0 * ((a + b) + root));
}

Tolerances tolerances(double eps_g, double eps_f, double eps_r,
                      double sigma_min_G, double gamma, double alpha,
                      double nu_k) {
  if (!(nu_k > 0.0 && nu_k < 0.5)) {
    throw std::invalid_argument("tolerances: nu_k must lie in (0, 1/2)");
  }
  if (!(sigma_min_G > 0.0) || !(alpha > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("tolerances: invalid arguments");
  }
  Tolerances t;
  t.t1 = ((1.0 + 2.0 * nu_k) / (1.0 - 2.0 * nu_k) + 1.0) * eps_g /
         std::sqrt(sigma_min_G);
  t.t2 = std::sqrt((2.0 * eps_f + eps_r) / (gamma * alpha * nu_k));
  return t;
}

StopReport evaluate_stop(const StopInputs& in, const StopParameters& params) {
  StopReport r;
  r.scaled_grad = in.scaled_grad;
  r.nu_hat1 =
      nu_hat1(in.phi_x, in.phi_trial, in.alpha, in.scaled_grad, params.eps_r);
  r.nu_hat2 = nu_hat2(params.eps_f, params.eps_r, in.sigma_min_G, params.gamma,
                      in.alpha, params.eps_g);
  if (params.nu_rule == NuRule::Balanced) {
    r.nu_k = std::max(params.nu, std::min(r.nu_hat1, r.nu_hat2));
  } else {
    r.nu_k = params.nu;
  }
  r.nu_k = std::min(r.nu_k, kNuCeiling);

  const Tolerances t = tolerances(params.eps_g, params.eps_f, params.eps_r,
                                  in.sigma_min_G, params.gamma, in.alpha, r.nu_k);
  r.t1 = t.t1;
  r.t2 = t.t2;
  r.cond_i = in.scaled_grad <= r.t1;
  r.cond_ii = in.scaled_grad > r.t1 && in.scaled_grad <= r.t2;
  r.c1 = in.scaled_grad <= std::max(r.t1, r.t2) + params.kappa_mu * in.mu;

  if (in.x != nullptr && in.z != nullptr) {
    r.compl_inf = (in.x->cwiseProduct(*in.z).array() - in.mu).abs().maxCoeff();
  }
  r.c2 = r.compl_inf <= params.kappa_mu * in.mu;
  return r;
}

double noise_to_signal(const Vector& true_grad_phi, const Vector& grad_tilde,
                       const HessianModel& hm) {
  const double noise = scaled_norm_inv(hm.factor(), grad_tilde - true_grad_phi);
  const double signal = scaled_norm_inv(hm.factor(), true_grad_phi);
  if (signal == 0.0) return noise == 0.0 ? 0.0 : kInf;
  return noise / signal;
}

}  // namespace noisy_barrier

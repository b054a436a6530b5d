#include "noisy_barrier/barrier.hpp"

#include <cmath>
#include <string>

namespace noisy_barrier {

void require_interior(const Vector& x, std::string_view where) {
  for (Index i = 0; i < x.size(); ++i) {
    if (!(x(i) > 0.0)) {
      throw NonInteriorPoint(std::string(where) + ": component " +
                             std::to_string(i) + " is not strictly positive");
    }
  }
}

double barrier_value(double f_value, double mu, const Vector& x) {
  return f_value - mu * x.array().log().sum();
}

Vector barrier_gradient(const Vector& g, double mu, const Vector& x) {
  return g - mu * x.cwiseInverse();
}

BarrierEval eval_barrier(NoisyOracle& oracle, double mu, const Vector& x) {
  require_interior(x, "eval_barrier");
  if (!(mu > 0.0)) {
    throw std::invalid_argument("eval_barrier: mu must be positive");
  }
  BarrierEval out;
  out.mu = mu;
  out.f_tilde = oracle.f(x);
  out.phi = barrier_value(out.f_tilde, mu, x);
  out.g_tilde = oracle.gradient(x);
  out.grad = barrier_gradient(out.g_tilde, mu, x);
  return out;
}

Vector true_barrier_gradient(const Problem& problem, double mu, const Vector& x) {
  require_interior(x, "true_barrier_gradient");
  return barrier_gradient(problem.gradient(x), mu, x);
}

std::string_view to_string(HessianMode mode) {
  switch (mode) {
    case HessianMode::Primal:
      return "primal";
    case HessianMode::PrimalDual:
      return "primal_dual";
    case HessianMode::NoisyNewtonPrimal:
      return "noisy_newton";
  }
  return "unknown";
}

HessianMode parse_hessian_mode(std::string_view text) {
  if (text == "primal") return HessianMode::Primal;
  if (text == "primal_dual") return HessianMode::PrimalDual;
  if (text == "noisy_newton") return HessianMode::NoisyNewtonPrimal;
  throw std::invalid_argument("unknown hessian mode: " + std::string(text));
}

double HessianModel::sigma_min() const {
  if (!sigma_min_) sigma_min_ = smallest_eigenvalue(factor_);
  return *sigma_min_;
}

HessianModel assemble_hessian_from(const SymMatrix& h_tilde, HessianMode mode,
                                   double mu, const Vector& x,
                                   const std::optional<Vector>& z,
                                   const RegularizationPolicy& policy) {
  require_interior(x, "assemble_hessian");
  if (h_tilde.n() != x.size()) {
    throw DimensionMismatch("assemble_hessian: Hessian/x size mismatch");
  }
  Vector curvature;
  if (mode == HessianMode::PrimalDual) {
    if (!z) {
      throw std::invalid_argument("assemble_hessian: primal-dual mode needs z");
    }
    if (z->size() != x.size()) {
      throw DimensionMismatch("assemble_hessian: z/x size mismatch");
    }
    require_interior(*z, "assemble_hessian (z)");
    curvature = z->cwiseQuotient(x);
  } else {
    if (z) {
      throw std::invalid_argument("assemble_hessian: z given in a primal mode");
    }
    curvature = mu * x.cwiseInverse().cwiseAbs2();
  }
  const SymMatrix base = h_tilde.plus_diagonal(curvature);

  auto attempt = cholesky(base);
  if (auto* factor = std::get_if<Factorization>(&attempt)) {
    return HessianModel(mode, base, 0.0, std::move(*factor));
  }
  double lambda =
      std::max(policy.lambda_floor, policy.lambda_relative * h_tilde.max_abs());
  while (lambda <= policy.lambda_max) {
    SymMatrix shifted = base.shifted(lambda);
    auto retry = cholesky(shifted);
    if (auto* factor = std::get_if<Factorization>(&retry)) {
      return HessianModel(mode, std::move(shifted), lambda, std::move(*factor));
    }
    lambda *= policy.growth;
  }
  throw RegularizationFailed("assemble_hessian: regularization exceeded " +
                             std::to_string(policy.lambda_max));
}

HessianModel assemble_hessian(NoisyOracle& oracle, HessianMode mode, double mu,
                              const Vector& x, const std::optional<Vector>& z,
                              const RegularizationPolicy& policy) {
  require_interior(x, "assemble_hessian");
  return assemble_hessian_from(oracle.hessian(x), mode, mu, x, z, policy);
}

}  // namespace noisy_barrier

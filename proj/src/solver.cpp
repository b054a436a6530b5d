#include "noisy_barrier/solver.hpp"

#include <cmath>

namespace noisy_barrier {

std::string_view to_string(MuStrategyKind kind) {
  switch (kind) {
    case MuStrategyKind::Heuristic:
      return "heuristic";
    case MuStrategyKind::Periodic:
      return "periodic";
    case MuStrategyKind::StoppingTestOnly:
      return "stopping_test";
    case MuStrategyKind::FixedMu:
      return "fixed";
  }
  return "unknown";
}

MuStrategyKind parse_mu_strategy(std::string_view text) {
  if (text == "heuristic") return MuStrategyKind::Heuristic;
  if (text == "periodic") return MuStrategyKind::Periodic;
  if (text == "stopping_test") return MuStrategyKind::StoppingTestOnly;
  if (text == "fixed") return MuStrategyKind::FixedMu;
  throw std::invalid_argument("unknown mu strategy: " + std::string(text));
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::MaxInner:
      return "max_inner";
    case TerminationReason::StopPredicate:
      return "stop_predicate";
    case TerminationReason::MuMinReached:
      return "mu_min_reached";
  }
  return "unknown";
}

double SolverConfig::resolved_eps_r(const NoiseSpec& noise) const {
  if (eps_r) return *eps_r;
  return noise.eps_f > 0.0 ? 2.05 * noise.eps_f : 1e-10;
}

void SolverConfig::validate(const NoiseSpec& noise) const {
  auto require = [](bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(std::string("SolverConfig: ") + message);
  };
  noise.validate();
  require(nu > 0.0 && nu < 0.5, "nu must lie in (0, 1/2)");
  require(resolved_eps_r(noise) > 2.0 * noise.eps_f, "eps_r must exceed 2*eps_f");
  require(tau > 0.0 && tau < 1.0, "tau must lie in (0, 1)");
  require(tau_min > 0.0 && tau_min < 1.0, "tau_min must lie in (0, 1)");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(kappa_sigma >= 1.0, "kappa_sigma must be at least 1");
  require(kappa_mu > 0.0, "kappa_mu must be positive");
  require(kappa_dec > 0.0 && kappa_dec < 1.0, "kappa_dec must lie in (0, 1)");
  require(n_mu >= 0, "n_mu must be non-negative");
  require(mu0 > 0.0 && std::isfinite(mu0), "mu0 must be positive");
  require(mu_min > 0.0, "mu_min must be positive");
  require(max_inner > 0, "max_inner must be positive");
  require(halving_cap > 0, "halving_cap must be positive");
  require(mu_strategy.kind != MuStrategyKind::Periodic || mu_strategy.period > 0,
          "periodic strategy needs a positive period");
}

SolveFailure::SolveFailure(const std::string& what, Trajectory partial)
    : std::runtime_error(what),
      partial_(std::make_shared<const Trajectory>(std::move(partial))) {}

Vector primal_direction(const HessianModel& hm, const Vector& grad_tilde) {
  return -hm.factor().solve(grad_tilde);
}

Vector dual_direction(const Vector& x, const Vector& z, double mu,
                      const Vector& d) {
  require_interior(x, "dual_direction");
  const Vector centered = (z.cwiseProduct(d).array() - mu).matrix();
  return -centered.cwiseQuotient(x) - z;
}

Vector project_duals(const Vector& x, const Vector& z, double mu,
                     double kappa_sigma) {
  require_interior(x, "project_duals");
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    const double upper = kappa_sigma * mu / x(i);
    const double lower = mu / (kappa_sigma * x(i));
    out(i) = std::max(std::min(z(i), upper), lower);
  }
  return out;
}

namespace {

struct StageState {
  Vector x;
  Vector z;
};

/// Runs inner iterations of one μ stage, appending to `records`. Returns true
/// when `stop` ended the stage.
bool run_stage(NoisyOracle& oracle, const SolverConfig& config, double mu,
               double tau, int outer, StageState& state,
               std::vector<IterateRecord>& records, const StopPredicate& stop) {
  const NoiseSpec& noise = oracle.spec();
  const bool primal_dual = config.hessian_mode == HessianMode::PrimalDual;
  const ArmijoParameters armijo{config.nu, config.resolved_eps_r(noise),
                                config.halving_cap};
  StopParameters stop_params;
  stop_params.nu = config.nu;
  stop_params.eps_r = armijo.eps_r;
  stop_params.eps_f = noise.eps_f;
  stop_params.eps_g = noise.eps_g;
  stop_params.gamma = config.gamma;
  stop_params.kappa_mu = config.kappa_mu;
  stop_params.nu_rule = config.nu_rule;

  Vector& x = state.x;
  Vector& z = state.z;
  for (int k = 0; k < config.max_inner; ++k) {
    if (!primal_dual) z = mu * x.cwiseInverse();

    const BarrierEval be = eval_barrier(oracle, mu, x);
    const HessianModel hm = assemble_hessian(
        oracle, config.hessian_mode, mu, x,
        primal_dual ? std::optional<Vector>(z) : std::nullopt,
        config.regularization);
    const Vector d = primal_direction(hm, be.grad);
    const double scaled_grad = scaled_norm_inv(hm.factor(), be.grad);
    const double alpha_max = fraction_to_boundary(x, d, tau);

    IterateRecord rec;
    rec.outer = outer;
    rec.inner = k;
    rec.mu = mu;
    rec.x = x;
    rec.z = z;
    rec.alpha_max = alpha_max;
    rec.lambda = hm.lambda();
    rec.grad_tilde_norm = be.grad.norm();
    rec.grad_tilde_scaled = scaled_grad;
    rec.sigma_min_G = hm.sigma_min();
    rec.phi = be.phi;
    rec.direction = d;
    rec.grad_tilde = be.grad;
    rec.true_grad = true_barrier_gradient(oracle.problem(), mu, x);
    rec.true_grad_norm = rec.true_grad.norm();
    rec.beta = noise_to_signal(rec.true_grad, be.grad, hm);

    Vector dz;
    if (primal_dual) {
      dz = dual_direction(x, z, mu, d);
      rec.alpha_dual = dual_fraction_to_boundary(z, dz, tau);
      // H̃ + λI = Ĝ − ZX⁻¹
      const Vector zx = z.cwiseQuotient(x);
      const Vector row1 =
          hm.matrix() * d - zx.cwiseProduct(d) - dz + be.g_tilde - z;
      const Vector row2 = (z.cwiseProduct(d) + x.cwiseProduct(dz) +
                           x.cwiseProduct(z) - Vector::Constant(x.size(), mu));
      rec.kkt_residual_primal = row1.norm();
      rec.kkt_residual_dual = row2.norm();
    }

    const LineSearchResult ls = relaxed_armijo_search(
        oracle, mu, be.phi, x, d, be.grad, alpha_max, armijo);
    rec.alpha = ls.alpha;
    rec.halvings = ls.halvings;
    rec.phi_trial = ls.phi_trial;
    rec.armijo_lhs = ls.armijo_lhs;
    rec.armijo_rhs = ls.armijo_rhs;
    rec.f_evals = oracle.counters().f;

    StopInputs in;
    in.alpha = ls.alpha;
    in.scaled_grad = scaled_grad;
    in.sigma_min_G = rec.sigma_min_G;
    in.phi_x = be.phi;
    in.phi_trial = ls.phi_trial;
    in.mu = mu;
    in.x = &x;
    in.z = &z;
    const StopReport report = evaluate_stop(in, stop_params);
    rec.t1 = report.t1;
    rec.t2 = report.t2;
    rec.nu_hat1 = report.nu_hat1;
    rec.nu_hat2 = report.nu_hat2;
    rec.nu_k = report.nu_k;
    rec.cond_i = report.cond_i;
    rec.cond_ii = report.cond_ii;
    rec.c1 = report.c1;
    rec.c2 = report.c2;
    rec.compl_inf = report.compl_inf;

    x = x + ls.alpha * d;
    if (primal_dual) {
      z = project_duals(x, z + rec.alpha_dual * dz, mu, config.kappa_sigma);
    } else {
      z = mu * x.cwiseInverse();
    }

    records.push_back(std::move(rec));
    if (stop && stop(records.back())) return true;
  }
  return false;
}

Trajectory finish(std::vector<IterateRecord> records, TerminationReason reason,
                  const StageState& state, double mu) {
  Trajectory t;
  t.records = std::move(records);
  t.reason = reason;
  t.x = state.x;
  t.z = state.z;
  t.mu = mu;
  return t;
}

template <typename Body>
Trajectory guarded(std::vector<IterateRecord>& records, const StageState& state,
                   const double& mu, Body&& body) {
  try {
    return body();
  } catch (const RegularizationFailed& e) {
    throw SolveFailure(e.what(), finish(std::move(records),
                                       TerminationReason::MaxInner, state, mu));
  } catch (const HalvingCapExceeded& e) {
    throw SolveFailure(e.what(), finish(std::move(records),
                                       TerminationReason::MaxInner, state, mu));
  }
}

/// Stage-ending rule for the continuation; fresh state per stage.
StopPredicate stage_predicate(const SolverConfig& config) {
  switch (config.mu_strategy.kind) {
    case MuStrategyKind::Heuristic: {
      auto c1_since = std::make_shared<int>(-1);
      const int n_mu = config.n_mu;
      return [c1_since, n_mu](const IterateRecord& r) {
        if (r.c1 && *c1_since < 0) *c1_since = r.inner;
        if (r.c1 && r.c2) return true;
        return *c1_since >= 0 && r.inner - *c1_since + 1 >= n_mu;
      };
    }
    case MuStrategyKind::Periodic: {
      const int period = config.mu_strategy.period;
      return [period](const IterateRecord& r) { return r.inner + 1 >= period; };
    }
    case MuStrategyKind::StoppingTestOnly:
      return [](const IterateRecord& r) { return r.triggered(); };
    case MuStrategyKind::FixedMu:
      return {};
  }
  return {};
}

}  // namespace

Trajectory solve_fixed_mu(NoisyOracle& oracle, const SolverConfig& config,
                          double mu, const Vector& x0, std::optional<Vector> z0,
                          const StopPredicate& stop) {
  config.validate(oracle.spec());
  if (!(mu > 0.0)) {
    throw std::invalid_argument("solve_fixed_mu: mu must be positive");
  }
  if (x0.size() != oracle.problem().n()) {
    throw DimensionMismatch("solve_fixed_mu: x0 has the wrong dimension");
  }
  require_interior(x0, "solve_fixed_mu");
  StageState state{x0, z0 ? *z0 : Vector(mu * x0.cwiseInverse())};
  require_interior(state.z, "solve_fixed_mu (z0)");

  std::vector<IterateRecord> records;
  return guarded(records, state, mu, [&] {
    const bool stopped =
        run_stage(oracle, config, mu, config.tau, 0, state, records, stop);
    return finish(std::move(records),
                  stopped ? TerminationReason::StopPredicate
                          : TerminationReason::MaxInner,
                  state, mu);
  });
}

Trajectory solve_continuation(NoisyOracle& oracle, const SolverConfig& config) {
  config.validate(oracle.spec());
  const Vector& x0 = oracle.problem().x0();
  double mu = config.mu0;
  StageState state{x0, Vector(mu * x0.cwiseInverse())};

  std::vector<IterateRecord> records;
  return guarded(records, state, mu, [&] {
    if (config.mu_strategy.kind == MuStrategyKind::FixedMu) {
      const double tau = std::max(config.tau_min, 1.0 - mu);
      run_stage(oracle, config, mu, tau, 0, state, records, {});
      return finish(std::move(records), TerminationReason::MaxInner, state, mu);
    }
    // μ_ℓ = μ₀κ^ℓ accumulates rounding; the relative slack keeps the last
    // stage from being skipped or repeated.
    const double mu_floor = config.mu_min * (1.0 + 1e-9);
    for (int outer = 0;; ++outer) {
      const double tau = std::max(config.tau_min, 1.0 - mu);
      run_stage(oracle, config, mu, tau, outer, state, records,
                stage_predicate(config));
      if (mu <= mu_floor) break;
      mu *= config.kappa_dec;
    }
    return finish(std::move(records), TerminationReason::MuMinReached, state,
                  mu);
  });
}

}  // namespace noisy_barrier

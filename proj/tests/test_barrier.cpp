#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "noisy_barrier/barrier.hpp"

using namespace noisy_barrier;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

ProblemPtr zero_function(Index n) {
  return std::make_shared<Problem>(
      "zero", [](const Vector&) { return 0.0; },
      [n](const Vector&) { return Vector(Vector::Zero(n)); },
      [n](const Vector&) { return SymMatrix::zero(n); }, Vector::Ones(n));
}

}  // namespace

TEST_CASE("barrier values") {
  NoisyOracle o(zero_function(2), NoiseSpec{});
  const BarrierEval be = eval_barrier(o, 1.0, vec({1, 1}));
  CHECK(be.phi == 0.0);
  CHECK(be.grad == vec({-1, -1}));
  CHECK(barrier_value(0.0, 1.0, Vector::Constant(1, std::exp(-1.0))) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(eval_barrier(o, 1.0, vec({1, 0})), NonInteriorPoint);
  CHECK_THROWS_AS(require_interior(vec({1, NAN}), "t"), NonInteriorPoint);
}

TEST_CASE("barrier gradient vanishes on the illustrative central path") {
  const auto p = illustrative();
  for (double mu : {1e-1, 1e-4, 1e-6}) {
    const Vector x = p->central_path()->x_of_mu(mu);
    CHECK(true_barrier_gradient(*p, mu, x).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("property: barrier gradient matches finite differences") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (const auto& e : registry()) {
    const auto p = e.make();
    NoisyOracle o(p, NoiseSpec{});
    for (double mu : {1e-1, 1e-3}) {
      Vector x(p->n());
      for (Index i = 0; i < x.size(); ++i) x(i) = u(rng);
      const Vector g = eval_barrier(o, mu, x).grad;
      for (Index i = 0; i < x.size(); ++i) {
        const double h = 1e-6 * (1.0 + x(i));
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        const double fd = (barrier_value(p->f(xp), mu, xp) -
                           barrier_value(p->f(xm), mu, xm)) / (2.0 * h);
        CHECK(std::abs(fd - g(i)) <= 1e-5 * std::max(1.0, std::abs(g(i))));
      }
    }
  }
}

TEST_CASE("hessian assembly examples") {
  const auto p = synthetic_quadratic(vec({1, 3}), vec({2, 2}));
  NoisyOracle o(p, NoiseSpec{});
  for (auto mode : {HessianMode::Primal, HessianMode::NoisyNewtonPrimal}) {
    CHECK(assemble_hessian(o, mode, 0.1, vec({0.5, 4.0}), std::nullopt, {}).lambda() ==
          0.0);
  }

  const HessianModel neg = assemble_hessian_from(SymMatrix::diagonal(vec({-1})),
                                                 HessianMode::Primal, 1e-8,
                                                 vec({1}), std::nullopt, {});
  // Ladder 1e-4, 1e-3, ..., 1 is the first rung with −1 + 1e-8 + λ > 0.
  CHECK(neg.lambda() == doctest::Approx(1.0));
  CHECK(neg.matrix()(0, 0) > 0.0);

  const HessianModel pd = assemble_hessian_from(SymMatrix::zero(1),
                                                HessianMode::PrimalDual, 0.1,
                                                vec({2}), vec({3}), {});
  CHECK(pd.matrix()(0, 0) == 1.5);
  CHECK(pd.lambda() == 0.0);

  CHECK_THROWS_AS(assemble_hessian_from(SymMatrix::zero(1), HessianMode::PrimalDual,
                                        0.1, vec({2}), std::nullopt, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(assemble_hessian_from(SymMatrix::zero(1), HessianMode::Primal, 0.1,
                                        vec({2}), vec({1}), {}),
                  std::invalid_argument);
  RegularizationPolicy tight;
  tight.lambda_max = 1e-6;
  CHECK_THROWS_AS(assemble_hessian_from(SymMatrix::diagonal(vec({-1})),
                                        HessianMode::Primal, 1e-8, vec({1}),
                                        std::nullopt, tight),
                  RegularizationFailed);
}

TEST_CASE("primal-dual matrix equals the primal one at centered duals") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  const auto p = harkerp2(5);
  NoisyOracle o(p, NoiseSpec{0.0, 0.0, 0.1, GradientNoiseModel::SphereSurface, 8});
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(5);
    for (Index i = 0; i < 5; ++i) x(i) = u(rng);
    const double mu = 0.3;
    const SymMatrix h = o.hessian(x);
    const Vector z = mu * x.cwiseInverse();
    const auto primal =
        assemble_hessian_from(h, HessianMode::Primal, mu, x, std::nullopt, {});
    const auto pd =
        assemble_hessian_from(h, HessianMode::PrimalDual, mu, x, z, {});
    CHECK((primal.matrix().dense() - pd.matrix().dense()).cwiseAbs().maxCoeff() <=
          1e-15 * primal.matrix().max_abs());
  }
}

TEST_CASE("no regularization near the illustrative barrier minimizer") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const auto p = illustrative();
  NoisyOracle o(p, NoiseSpec{});
  for (double mu : {1e-2, 1e-4, 1e-6}) {
    const Vector xs = p->central_path()->x_of_mu(mu);
    for (int trial = 0; trial < 20; ++trial) {
      // Componentwise relative offsets of at most 0.5/√2 keep the scaled error below 0.5.
      Vector x = xs;
      for (Index i = 0; i < 2; ++i) x(i) *= 1.0 + u(rng) / std::sqrt(2.0);
      const Vector z = mu * x.cwiseInverse();
      CHECK(assemble_hessian(o, HessianMode::Primal, mu, x, std::nullopt, {}).lambda() ==
            0.0);
      CHECK(assemble_hessian(o, HessianMode::PrimalDual, mu, x, z, {}).lambda() == 0.0);
    }
  }
}

TEST_CASE("hessian mode names round-trip") {
  for (auto m : {HessianMode::Primal, HessianMode::PrimalDual,
                 HessianMode::NoisyNewtonPrimal}) {
    CHECK(parse_hessian_mode(to_string(m)) == m);
  }
  CHECK_THROWS(parse_hessian_mode("dual"));
}

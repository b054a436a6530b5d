#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "noisy_barrier/linalg.hpp"

using namespace noisy_barrier;

namespace {

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = normal(rng);
  return 0.5 * (a + a.transpose());
}

SymMatrix random_spd(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = normal(rng);
  Eigen::MatrixXd m = a * a.transpose();
  m.diagonal().array() += 0.1;
  return SymMatrix(m);
}

// Cyclic Jacobi rotations, kept deliberately independent of Eigen's solvers.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Index p = 0; p < n; ++p)
      for (Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Index p = 0; p < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(n);
  for (Index i = 0; i < n; ++i) out[i] = a(i, i);
  std::sort(out.begin(), out.end());
  return out;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("SymMatrix mirrors the lower triangle and validates input") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 99, 2, 3;
  const SymMatrix s(m);
  CHECK(s(0, 1) == 2.0);
  CHECK(s(1, 0) == 2.0);
  CHECK_THROWS_AS(SymMatrix(Eigen::MatrixXd(2, 3)), std::invalid_argument);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(1, 1) = NAN;
  CHECK_THROWS_AS(SymMatrix{bad}, std::invalid_argument);
  CHECK(SymMatrix::identity(3).shifted(2.0)(2, 2) == 3.0);
  CHECK(SymMatrix::zero(2).plus_diagonal(vec({1, 2}))(1, 1) == 2.0);
  CHECK(SymMatrix::diagonal(vec({-4, 1})).max_abs() == 4.0);
}

TEST_CASE("cholesky examples") {
  auto f = cholesky_or_throw(SymMatrix::identity(3));
  CHECK((f.lower() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  f = cholesky_or_throw(SymMatrix::diagonal(vec({4, 9})));
  CHECK(f.lower()(0, 0) == 2.0);
  CHECK(f.lower()(1, 1) == 3.0);
  CHECK(f.lower()(1, 0) == 0.0);

  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  f = cholesky_or_throw(SymMatrix(m));
  CHECK(f.lower()(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(f.lower()(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(f.lower()(1, 1) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(f.lower()(0, 1) == 0.0);
  CHECK((f.lower() * f.lower().transpose() - m).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("cholesky reports the failing pivot") {
  Eigen::MatrixXd m(3, 3);
  m << 1, 0, 0, 0, 1, 2, 0, 2, 1;
  const auto r = cholesky(SymMatrix(m));
  REQUIRE_FALSE(factored(r));
  CHECK(std::get<NotPositiveDefinite>(r).pivot == 2);
  CHECK_THROWS_AS(cholesky_or_throw(SymMatrix(m)), NotPositiveDefiniteError);
  CHECK_FALSE(factored(cholesky(SymMatrix::zero(2))));
}

TEST_CASE("solve examples") {
  CHECK(solve(cholesky_or_throw(SymMatrix::identity(2)), vec({3, -1})) ==
        vec({3, -1}));
  CHECK(solve(cholesky_or_throw(SymMatrix::diagonal(vec({2, 4}))), vec({2, 4}))
            .isApprox(vec({1, 1}), 1e-15));
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const Vector x = solve(cholesky_or_throw(SymMatrix(m)), vec({3, 3}));
  CHECK(x(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(solve(cholesky_or_throw(SymMatrix::identity(2)), vec({1})),
                  DimensionMismatch);
}

TEST_CASE("smallest_eigenvalue examples") {
  CHECK(smallest_eigenvalue(SymMatrix::identity(5)) == doctest::Approx(1.0));
  CHECK(smallest_eigenvalue(SymMatrix::diagonal(vec({2, 5, 7}))) ==
        doctest::Approx(2.0));
  CHECK(smallest_eigenvalue(cholesky_or_throw(SymMatrix::diagonal(vec({2, 5, 7})))) ==
        doctest::Approx(2.0));
}

TEST_CASE("smallest_eigenvalue matches a Jacobi oracle on random symmetric matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd a = random_symmetric(rng, 10);
    const double expected = jacobi_eigenvalues(a).front();
    CHECK(smallest_eigenvalue(SymMatrix(a)) == doctest::Approx(expected).epsilon(1e-8));
  }
}

TEST_CASE("factor-based smallest eigenvalue keeps accuracy under huge diagonal entries") {
  // diag(1e18, 1) coupled weakly: the small eigenvalue is ≈ 1 − 1/1e18.
  Eigen::MatrixXd m(2, 2);
  m << 1e18, 1.0, 1.0, 1.0;
  const double sigma = smallest_eigenvalue(cholesky_or_throw(SymMatrix(m)));
  CHECK(sigma == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scaled norms") {
  CHECK(scaled_norm_inv(SymMatrix::identity(2), vec({3, 4})) == doctest::Approx(5.0));
  CHECK(scaled_norm_inv(SymMatrix::diagonal(vec({4})), vec({2})) == doctest::Approx(1.0));
  CHECK(scaled_norm_inv(SymMatrix::diagonal(vec({1, 4})), vec({1, 2})) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(scaled_norm_diag_inv_sq(vec({1, 1}), vec({3, 4})) == doctest::Approx(5.0));
  CHECK(scaled_norm_diag_inv_sq(vec({2, 1}), vec({2, 0})) == doctest::Approx(1.0));
  CHECK(scaled_norm_diag_inv_sq(vec({0.5, 2}), vec({1, 1})) ==
        doctest::Approx(std::sqrt(4.25)));
  CHECK_THROWS(scaled_norm_diag_inv_sq(vec({0, 1}), vec({1, 1})));
  CHECK_THROWS_AS(scaled_norm_inv(SymMatrix::diagonal(vec({1, -1})), vec({1, 1})),
                  NotPositiveDefiniteError);
}

TEST_CASE("property: cholesky round-trip on 1000 random SPD matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 50);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SymMatrix m = random_spd(rng, dim(rng));
    const Factorization f = cholesky_or_throw(m);
    const double err =
        (f.lower() * f.lower().transpose() - m.dense()).cwiseAbs().maxCoeff() /
        m.max_abs();
    worst = std::max(worst, err);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("property: scaled_norm_inv agrees with vᵀ m⁻¹ v through solve") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 200; ++trial) {
    const SymMatrix m = random_spd(rng, 1 + trial % 12);
    Vector v(m.n());
    for (Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    const double via_solve = v.dot(solve(cholesky_or_throw(m), v));
    const double s = scaled_norm_inv(m, v);
    CHECK(std::abs(s * s - via_solve) <= 1e-9 * std::max(1.0, via_solve));
  }
}

TEST_CASE("property: shifting moves the smallest eigenvalue by the shift") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix m(random_symmetric(rng, 1 + trial % 15));
    const double c = shift(rng);
    CHECK(smallest_eigenvalue(m.shifted(c)) ==
          doctest::Approx(smallest_eigenvalue(m) + c).epsilon(1e-8));
  }
}

#include "noisy_barrier/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace noisy_barrier {

SymMatrix::SymMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("SymMatrix: matrix is not square");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("SymMatrix: non-finite entry");
  }
  entries_.triangularView<Eigen::StrictlyUpper>() = entries_.transpose();
}

SymMatrix SymMatrix::zero(Index n) {
  return SymMatrix(Eigen::MatrixXd::Zero(n, n));
}

SymMatrix SymMatrix::identity(Index n) {
  return SymMatrix(Eigen::MatrixXd::Identity(n, n));
}

SymMatrix SymMatrix::diagonal(const Vector& diag) {
  return SymMatrix(Eigen::MatrixXd(diag.asDiagonal()));
}

SymMatrix SymMatrix::shifted(double shift) const {
  SymMatrix out = *this;
  out.entries_.diagonal().array() += shift;
  return out;
}

SymMatrix SymMatrix::plus_diagonal(const Vector& v) const {
  if (v.size() != n()) {
    throw DimensionMismatch("SymMatrix::plus_diagonal: size mismatch");
  }
  SymMatrix out = *this;
  out.entries_.diagonal() += v;
  return out;
}

double SymMatrix::max_abs() const {
  return entries_.size() == 0 ? 0.0 : entries_.cwiseAbs().maxCoeff();
}

Vector SymMatrix::operator*(const Vector& v) const {
  if (v.size() != n()) {
    throw DimensionMismatch("SymMatrix product: size mismatch");
  }
  return entries_ * v;
}

CholeskyResult cholesky(const SymMatrix& m) {
  const Index n = m.n();
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd& a = m.dense();
  for (Index j = 0; j < n; ++j) {
    double pivot = a(j, j) - lower.row(j).head(j).squaredNorm();
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      return NotPositiveDefinite{j};
    }
    const double diag = std::sqrt(pivot);
    lower(j, j) = diag;
    for (Index i = j + 1; i < n; ++i) {
      lower(i, j) =
          (a(i, j) - lower.row(i).head(j).dot(lower.row(j).head(j))) / diag;
    }
  }
  return Factorization(std::move(lower));
}

NotPositiveDefiniteError::NotPositiveDefiniteError(Index p)
    : std::runtime_error("matrix is not positive definite (pivot " +
                         std::to_string(p) + ")"),
      pivot(p) {}

Factorization cholesky_or_throw(const SymMatrix& m) {
  auto result = cholesky(m);
  if (auto* failure = std::get_if<NotPositiveDefinite>(&result)) {
    throw NotPositiveDefiniteError(failure->pivot);
  }
  return std::get<Factorization>(std::move(result));
}

Vector Factorization::solve(const Vector& rhs) const {
  if (rhs.size() != n()) {
    throw DimensionMismatch("Factorization::solve: size mismatch");
  }
  Vector y = lower_.triangularView<Eigen::Lower>().solve(rhs);
  return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Vector solve(const Factorization& f, const Vector& rhs) { return f.solve(rhs); }

double smallest_eigenvalue(const SymMatrix& m) {
  if (m.n() == 0) {
    throw std::invalid_argument("smallest_eigenvalue: empty matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(),
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double smallest_eigenvalue(const Factorization& f) {
  if (f.n() == 0) {
    throw std::invalid_argument("smallest_eigenvalue: empty matrix");
  }
  const Eigen::MatrixXd l_inv = f.lower().triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(f.n(), f.n()));
  const Eigen::MatrixXd g_inv = l_inv.transpose() * l_inv;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g_inv,
                                                        Eigen::EigenvaluesOnly);
  return 1.0 / solver.eigenvalues()(f.n() - 1);
}

double scaled_norm_inv(const Factorization& f, const Vector& v) {
  // ‖L⁻¹v‖ = sqrt(vᵀ (L Lᵀ)⁻¹ v)
  if (v.size() != f.n()) {
    throw DimensionMismatch("scaled_norm_inv: size mismatch");
  }
  return f.lower().triangularView<Eigen::Lower>().solve(v).norm();
}

double scaled_norm_inv(const SymMatrix& m, const Vector& v) {
  return scaled_norm_inv(cholesky_or_throw(m), v);
}

double scaled_norm_diag_inv_sq(const Vector& x_ref, const Vector& v) {
  if (x_ref.size() != v.size()) {
    throw DimensionMismatch("scaled_norm_diag_inv_sq: size mismatch");
  }
  if (x_ref.size() > 0 && !(x_ref.minCoeff() > 0.0)) {
    throw std::invalid_argument(
        "scaled_norm_diag_inv_sq: reference vector must be positive");
  }
  return v.cwiseQuotient(x_ref).norm();
}

}  // namespace noisy_barrier

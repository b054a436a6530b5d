#pragma once

#include <cstddef>
#include <stdexcept>
#include <variant>

#include <Eigen/Core>

namespace noisy_barrier {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised when two operands disagree on dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Dense symmetric matrix. The lower triangle of the input is authoritative;
 * the upper triangle is overwritten with its mirror on construction.
 */
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Throws std::invalid_argument for non-square or non-finite input.
  explicit SymMatrix(Eigen::MatrixXd entries);

  static SymMatrix zero(Index n);
  static SymMatrix identity(Index n);
  static SymMatrix diagonal(const Vector& diag);

  Index n() const { return entries_.rows(); }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  const Eigen::MatrixXd& dense() const { return entries_; }

  /// Returns this + shift·I.
  SymMatrix shifted(double shift) const;
  /// Returns this + diag(v).
  SymMatrix plus_diagonal(const Vector& v) const;

  /// max |entry|
  double max_abs() const;

  Vector operator*(const Vector& v) const;

 private:
  Eigen::MatrixXd entries_;
};

/// A non-positive (or non-finite) pivot was met at `pivot` during factorization.
struct NotPositiveDefinite {
  Index pivot;
};

/// Lower-triangular Cholesky factor L with L·Lᵀ = m.
class Factorization {
 public:
  Index n() const { return lower_.rows(); }
  const Eigen::MatrixXd& lower() const { return lower_; }

  /// Solves m·v = rhs with two triangular substitutions.
  Vector solve(const Vector& rhs) const;

 private:
  friend std::variant<Factorization, NotPositiveDefinite> cholesky(
      const SymMatrix& m);
  explicit Factorization(Eigen::MatrixXd lower) : lower_(std::move(lower)) {}

  Eigen::MatrixXd lower_;
};

using CholeskyResult = std::variant<Factorization, NotPositiveDefinite>;

/// Left-looking Cholesky. Failure is an ordinary result: callers probe
/// definiteness with it.
CholeskyResult cholesky(const SymMatrix& m);

inline bool factored(const CholeskyResult& r) {
  return std::holds_alternative<Factorization>(r);
}

/// Convenience wrapper throwing NotPositiveDefiniteError on failure.
class NotPositiveDefiniteError : public std::runtime_error {
 public:
  explicit NotPositiveDefiniteError(Index pivot);
  Index pivot;
};
Factorization cholesky_or_throw(const SymMatrix& m);

Vector solve(const Factorization& f, const Vector& rhs);

/// σ_min of a symmetric matrix via a full self-adjoint eigen-decomposition.
double smallest_eigenvalue(const SymMatrix& m);
/// σ_min of LLᵀ as 1/λ_max((LLᵀ)⁻¹). Keeps relative accuracy when the
/// matrix has a few huge diagonal entries, where the direct decomposition
/// loses σ_min to absolute rounding.
double smallest_eigenvalue(const Factorization& f);

/// sqrt(vᵀ m⁻¹ v) through a factor-solve; throws NotPositiveDefiniteError.
double scaled_norm_inv(const SymMatrix& m, const Vector& v);
double scaled_norm_inv(const Factorization& f, const Vector& v);

/// sqrt(Σ (v_i / x_ref_i)²); every x_ref_i must be positive.
double scaled_norm_diag_inv_sq(const Vector& x_ref, const Vector& v);

}  // namespace noisy_barrier

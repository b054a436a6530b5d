#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisy_barrier/linalg.hpp"

namespace noisy_barrier {

/// Largest dimension the dense kernels are budgeted for.
inline constexpr Index kMaxDenseDimension = 2000;

/**
 * Primal-dual solution of min f(x) s.t. x ≥ 0 with the index partition used
 * for active-set studies. Index sets are zero-based.
 */
struct KnownSolution {
  Vector x_star;
  Vector z_star;
  std::vector<Index> active_strict;      // x* = 0, z* > 0
  std::vector<Index> active_degenerate;  // x* = 0, z* = 0
  std::vector<Index> inactive_bounded;   // x* > 0
  std::vector<Index> free;               // no bound

  /// Throws std::logic_error if complementarity or the partition is broken.
  void validate() const;
};

/// Closed-form barrier minimizers (x(μ), z(μ)).
struct CentralPath {
  std::function<Vector(double)> x_of_mu;
  std::function<Vector(double)> z_of_mu;
};

/// Smooth bound-constrained instance with exact derivatives.
class Problem {
 public:
  using Objective = std::function<double(const Vector&)>;
  using Gradient = std::function<Vector(const Vector&)>;
  using Hessian = std::function<SymMatrix(const Vector&)>;

  Problem(std::string name, Objective f, Gradient g, Hessian h, Vector x0,
          std::optional<KnownSolution> solution = std::nullopt,
          std::optional<CentralPath> path = std::nullopt);

  const std::string& name() const { return name_; }
  Index n() const { return x0_.size(); }
  const Vector& x0() const { return x0_; }
  const std::optional<KnownSolution>& solution() const { return solution_; }
  const std::optional<CentralPath>& central_path() const { return path_; }

  double f(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  SymMatrix hessian(const Vector& x) const;

 private:
  std::string name_;
  Objective f_;
  Gradient g_;
  Hessian h_;
  Vector x0_;
  std::optional<KnownSolution> solution_;
  std::optional<CentralPath> path_;
};

using ProblemPtr = std::shared_ptr<const Problem>;

/// -Σ(x_i²/2 + x_i) + (Σx_i)² + 2 Σ_{j≥2} (Σ_{i≥j} x_i)², start x_i = i.
ProblemPtr harkerp2(Index n);

/// (c1/2)(x₁ − 1)² + c2·x₂ on x ≥ 0, start (2, 2), with closed-form central path.
ProblemPtr illustrative(double c1 = 1.0, double c2 = 1.0);

/// ½ Σ diag_i (x_i − shift_i)², start at all ones.
ProblemPtr synthetic_quadratic(const Vector& diag, const Vector& shift);

/// Positive root of diag·x(x − shift) = μ, i.e. the per-coordinate barrier
/// minimizer of a synthetic quadratic.
double synthetic_barrier_minimizer(double diag, double shift, double mu);

class UnknownProblem : public std::out_of_range {
 public:
  explicit UnknownProblem(const std::string& name);
};

struct RegistryEntry {
  std::string name;
  std::string description;
  std::function<ProblemPtr()> make;
};

/// Built-in suite in fixed order.
const std::vector<RegistryEntry>& registry();

/// Throws UnknownProblem.
ProblemPtr lookup(const std::string& name);

}  // namespace noisy_barrier

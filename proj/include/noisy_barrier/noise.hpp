#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "noisy_barrier/linalg.hpp"
#include "noisy_barrier/problems.hpp"

namespace noisy_barrier {

enum class GradientNoiseModel {
  /// ε_g·u with u uniform on the unit sphere; ‖g̃ − g‖ = ε_g exactly.
  SphereSurface,
  /// Componentwise uniform on [−ε_g/√n, ε_g/√n]; keeps ‖g̃ − g‖ ≤ ε_g.
  ElementwiseUniform,
  /// Componentwise uniform on [−ε_g, ε_g]. Breaks the ℓ₂ bound by up to √n;
  /// only meant for the scatter studies.
  ElementwiseUniformRaw,
};

std::string_view to_string(GradientNoiseModel model);
/// Accepts "sphere", "elementwise", "elementwise_raw".
GradientNoiseModel parse_gradient_noise_model(std::string_view text);

struct NoiseSpec {
  double eps_f = 0.0;
  double eps_g = 0.0;
  double eps_h = 0.0;
  GradientNoiseModel grad_model = GradientNoiseModel::SphereSurface;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on negative or non-finite magnitudes.
  void validate() const;
};

/// Evaluation counts of one oracle.
struct EvalCounters {
  std::uint64_t f = 0;
  std::uint64_t g = 0;
  std::uint64_t h = 0;
};

/**
 * Noisy f̃, g̃, H̃ around a noiseless Problem. Every call draws fresh noise,
 * so two evaluations at the same point generally differ.
 *
 * Owns a mutable random stream: one instance must not be shared between
 * threads. Use fork() to hand independent streams to concurrent work.
 */
class NoisyOracle {
 public:
  NoisyOracle(ProblemPtr problem, NoiseSpec spec);

  /// f(x) + s·ε_f, s = ±1 equiprobable.
  double f(const Vector& x);
  /// g(x) plus a draw from the configured gradient model.
  Vector gradient(const Vector& x);
  /// H(x) + ε_H·diag(s), s_i = ±1 independent; off-diagonals untouched.
  SymMatrix hessian(const Vector& x);

  /// Independent stream determined by (spec.seed, label) alone.
  NoisyOracle fork(std::string_view label) const;

  const Problem& problem() const { return *problem_; }
  const ProblemPtr& problem_ptr() const { return problem_; }
  const NoiseSpec& spec() const { return spec_; }
  const EvalCounters& counters() const { return counters_; }

  /// Raw uniform draw from the stream; exposed for reproducibility tests.
  std::uint64_t next_raw() { return engine_(); }

 private:
  NoisyOracle(ProblemPtr problem, NoiseSpec spec, std::uint64_t stream_seed);

  double random_sign();

  ProblemPtr problem_;
  NoiseSpec spec_;
  std::mt19937_64 engine_;
  EvalCounters counters_;
};

/// splitmix64 finalizer over (seed, label); distinct labels give unrelated
/// streams.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label);

}  // namespace noisy_barrier

#include "noisy_barrier/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace noisy_barrier {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

std::string_view to_string(GradientNoiseModel model) {
  switch (model) {
    case GradientNoiseModel::SphereSurface:
      return "sphere";
    case GradientNoiseModel::ElementwiseUniform:
      return "elementwise";
    case GradientNoiseModel::ElementwiseUniformRaw:
      return "elementwise_raw";
  }
  return "unknown";
}

GradientNoiseModel parse_gradient_noise_model(std::string_view text) {
  if (text == "sphere") return GradientNoiseModel::SphereSurface;
  if (text == "elementwise") return GradientNoiseModel::ElementwiseUniform;
  if (text == "elementwise_raw") return GradientNoiseModel::ElementwiseUniformRaw;
  throw std::invalid_argument("unknown gradient noise model: " +
                              std::string(text));
}

void NoiseSpec::validate() const {
  for (double eps : {eps_f, eps_g, eps_h}) {
    if (!std::isfinite(eps) || eps < 0.0) {
      throw std::invalid_argument(
          "NoiseSpec: magnitudes must be finite and non-negative");
    }
  }
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::string_view label) {
  return splitmix64(splitmix64(seed) ^ fnv1a(label));
}

NoisyOracle::NoisyOracle(ProblemPtr problem, NoiseSpec spec)
    : NoisyOracle(std::move(problem), spec, derive_stream_seed(spec.seed, "")) {}

NoisyOracle::NoisyOracle(ProblemPtr problem, NoiseSpec spec,
                         std::uint64_t stream_seed)
    : problem_(std::move(problem)), spec_(spec), engine_(stream_seed) {
  if (!problem_) {
    throw std::invalid_argument("NoisyOracle: null problem");
  }
  spec_.validate();
}

NoisyOracle NoisyOracle::fork(std::string_view label) const {
  return NoisyOracle(problem_, spec_, derive_stream_seed(spec_.seed, label));
}

double NoisyOracle::random_sign() {
  return (engine_() >> 63) != 0 ? 1.0 : -1.0;
}

double NoisyOracle::f(const Vector& x) {
  ++counters_.f;
  const double value = problem_->f(x);
  if (spec_.eps_f == 0.0) return value;
  return value + random_sign() * spec_.eps_f;
}

Vector NoisyOracle::gradient(const Vector& x) {
  ++counters_.g;
  Vector g = problem_->gradient(x);
  if (spec_.eps_g == 0.0) return g;
  const Index n = g.size();
  switch (spec_.grad_model) {
    case GradientNoiseModel::SphereSurface: {
      std::normal_distribution<double> normal(0.0, 1.0);
      Vector u(n);
      double norm = 0.0;
      while (norm == 0.0) {
        for (Index i = 0; i < n; ++i) u(i) = normal(engine_);
        norm = u.norm();
      }
      g += (spec_.eps_g / norm) * u;
      break;
    }
    case GradientNoiseModel::ElementwiseUniform:
    case GradientNoiseModel::ElementwiseUniformRaw: {
      const double half_width =
          spec_.grad_model == GradientNoiseModel::ElementwiseUniform
              ? spec_.eps_g / std::sqrt(static_cast<double>(n))
              : spec_.eps_g;
      std::uniform_real_distribution<double> uniform(-half_width, half_width);
      for (Index i = 0; i < n; ++i) g(i) += uniform(engine_);
      break;
    }
  }
  return g;
}

SymMatrix NoisyOracle::hessian(const Vector& x) {
  ++counters_.h;
  SymMatrix h = problem_->hessian(x);
  if (spec_.eps_h == 0.0) return h;
  Vector shift(h.n());
  for (Index i = 0; i < shift.size(); ++i) {
    shift(i) = random_sign() * spec_.eps_h;
  }
  return h.plus_diagonal(shift);
}

}  // namespace noisy_barrier

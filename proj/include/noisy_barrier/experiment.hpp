#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "noisy_barrier/analysis.hpp"
#include "noisy_barrier/noise.hpp"
#include "noisy_barrier/problems.hpp"
#include "noisy_barrier/solver.hpp"

namespace noisy_barrier {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Solve, StopTest, ActiveSet, Radii, Scatter };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct RadiiSettings {
  /// "illustrative" or "generic".
  std::string constants = "illustrative";
  double mu = 1e-6;
  GenericConstantInputs generic;
  double grid_lo = 1e-3;
  double grid_hi = 0.999;
  int grid_count = 999;
  std::vector<double> grid_eps_g;
  std::vector<double> grid_eps_h;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Solve;
  std::string problem;
  std::map<std::string, double> problem_params;
  NoiseSpec noise;
  SolverConfig solver;
  std::vector<std::uint64_t> seeds;
  std::string output_prefix;

  int stoptest_iterations = 1000;
  std::vector<double> activeset_mus{1e-4, 1e-8};
  int activeset_iterations = 5000;
  int activeset_window = 10;
  int scatter_iterations = 1000;
  int scatter_last = 200;
  RadiiSettings radii;

  /// Seeds to run: `seeds` or, when empty, the single noise.seed.
  std::vector<std::uint64_t> effective_seeds() const;
  /// Throws ConfigError on anything the run would reject.
  void validate() const;
};

/// Flat `key = value` lines with dotted keys; '#' starts a comment. Unknown
/// keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Registry name, or a family name ("harkerp2", "illustrative") completed by
/// problem.n / problem.c1 / problem.c2. Refuses n above kMaxDenseDimension.
ProblemPtr resolve_problem(const std::string& name,
                           const std::map<std::string, double>& params);

struct Artifact {
  std::string name;
  std::string content;
};

struct ExperimentResult {
  std::vector<Artifact> artifacts;
  /// Human-readable summary lines.
  std::vector<std::string> summary;
};

/// Runs every seed and renders the CSV artifacts in memory.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes artifacts under `dir` with the config's prefix. On failure nothing
/// written by this call is left behind. Returns the written paths.
std::vector<std::filesystem::path> write_artifacts(
    const ExperimentResult& result, const std::filesystem::path& dir,
    const std::string& prefix);

/// Geometric mean of positive values; 0 when any value is 0.
double geometric_mean(const std::vector<double>& values);

}  // namespace noisy_barrier

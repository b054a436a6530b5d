#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "noisy_barrier/experiment.hpp"

namespace nb = noisy_barrier;

namespace {

int list_problems() {
  for (const auto& entry : nb::registry()) {
    const nb::ProblemPtr p = entry.make();
    std::cout << entry.name << "  n=" << p->n()
              << "  solution=" << (p->solution() ? "yes" : "no")
              << "  central_path=" << (p->central_path() ? "yes" : "no") << "  "
              << entry.description << '\n';
  }
  return 0;
}

int run(const std::string& config_path, const std::string& out_dir,
        std::optional<std::int64_t> seed_override) {
  nb::ExperimentConfig config = nb::load_config(config_path);
  if (seed_override) {
    if (*seed_override < 0) throw nb::ConfigError("--seed-override must be >= 0");
    config.seeds = {static_cast<std::uint64_t>(*seed_override)};
  }
  const nb::ExperimentResult result = nb::run_experiment(config);
  const auto written =
      nb::write_artifacts(result, out_dir, config.output_prefix);
  for (const auto& line : result.summary) std::cout << line << '\n';
  for (const auto& path : written) std::cout << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise-tolerant log-barrier interior-point experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::int64_t> seed_override;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("config", config_path, "Experiment config file")
      ->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--seed-override", seed_override,
                      "Run this single seed instead of the configured ones");

  app.add_subcommand("list", "List built-in problems");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return run(config_path, out_dir, seed_override);
    return list_problems();
  } catch (const nb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

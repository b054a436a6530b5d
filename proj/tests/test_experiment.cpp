#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "noisy_barrier/csv.hpp"
#include "noisy_barrier/experiment.hpp"

using namespace noisy_barrier;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

const Artifact& artifact(const ExperimentResult& r, const std::string& name) {
  for (const auto& a : r.artifacts) {
    if (a.name == name) return a;
  }
  FAIL("missing artifact " << name);
  throw std::logic_error("unreachable");
}

CsvTable table(const Artifact& a) {
  std::istringstream in(a.content);
  return read_csv(in);
}

std::size_t column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("noisy_barrier_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* kRadii = R"(# radii map for the illustrative example
kind = radii
noise.eps_g = 0.02
noise.eps_h = 0.01
radii.mu = 1e-6
radii.grid_eps_g = 0, 0.01, 0.02
radii.grid_eps_h = 0, 0.01
)";

const char* kPeriodic = R"(kind = solve
problem = harkerp2
problem.n = 4
noise.eps_f = 1e-2
noise.eps_g = 1e-1
noise.eps_h = 1e-1
solver.mu_strategy = periodic
solver.period = 40
solver.mu0 = 1e-1
solver.mu_min = 1e-7
seeds = 1..2
output.prefix = periodic_
)";

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig c = parse(kPeriodic);
  CHECK(c.kind == ExperimentKind::Solve);
  CHECK(c.problem == "harkerp2");
  CHECK(c.problem_params.at("n") == 4.0);
  CHECK(c.noise.eps_g == 0.1);
  CHECK(c.solver.mu_strategy.kind == MuStrategyKind::Periodic);
  CHECK(c.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(c.output_prefix == "periodic_");
  CHECK_NOTHROW(c.validate());

  CHECK(parse("seeds = 3, 7, 9..10\n").seeds == std::vector<std::uint64_t>{3, 7, 9, 10});
  CHECK(parse("noise.seed = 4\n").effective_seeds() == std::vector<std::uint64_t>{4});

  CHECK_THROWS_AS(parse("solver.bogus = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("noise.eps_f = abc\n"), ConfigError);
  CHECK_THROWS_AS(parse("kind = optimize\n"), ConfigError);
  CHECK_THROWS_AS(parse("just text\n"), ConfigError);
  CHECK_THROWS_AS(parse("solver.max_inner = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse("solver.hessian_mode = exact\n"), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse("kind = solve\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("kind = solve\nproblem = nosuch\n").validate(), ConfigError);
  CHECK_THROWS_AS(parse("kind = solve\nproblem = harkerp2\nproblem.n = 2001\n").validate(),
                  ConfigError);
  CHECK_NOTHROW(parse("kind = solve\nproblem = harkerp2\nproblem.n = 2000\n").validate());
  CHECK_THROWS_AS(
      parse("kind = solve\nproblem = illustrative\nnoise.eps_f = 1\nsolver.eps_r = 1\n")
          .validate(),
      ConfigError);
  CHECK_THROWS_AS(parse("kind = solve\nproblem = illustrative\nnoise.eps_g = -1\n").validate(),
                  ConfigError);
}

TEST_CASE("resolve_problem") {
  CHECK(resolve_problem("harkerp2", {{"n", 7}})->n() == 7);
  CHECK(resolve_problem("illustrative", {{"c1", 1000}, {"c2", 1000}})->name() ==
        "illustrative-c1000-1000");
  CHECK(resolve_problem("harkerp2-4", {})->n() == 4);
  CHECK_THROWS_AS(resolve_problem("harkerp2-4", {{"n", 7}}), ConfigError);
  CHECK_THROWS_AS(resolve_problem("harkerp2", {{"n", 2.5}}), ConfigError);
}

TEST_CASE("radii experiment") {
  const ExperimentResult r = run_experiment(parse(kRadii));
  const CsvTable summary = table(artifact(r, "radii_summary.csv"));
  REQUIRE(summary.rows.size() == 1);
  CHECK(std::abs(std::stod(summary.rows[0][column(summary, "delta1_min")]) - 0.05) <= 0.01);
  CHECK(std::abs(std::stod(summary.rows[0][column(summary, "delta2_max")]) - 0.24) <= 0.01);

  const CsvTable grid = table(artifact(r, "radii_grid.csv"));
  CHECK(grid.rows.size() == 6);
  CHECK(std::stod(grid.rows[0][column(grid, "delta1_min")]) == 0.0);

  const CsvTable sweep = table(artifact(r, "radii_sweep.csv"));
  CHECK(sweep.rows.size() == 999);
}

TEST_CASE("solve experiment reports 280 periodic iterations") {
  const ExperimentResult r = run_experiment(parse(kPeriodic));
  const CsvTable summary = table(artifact(r, "summary.csv"));
  REQUIRE(summary.rows.size() == 2);
  for (const auto& row : summary.rows) CHECK(row[column(summary, "ter")] == "280");
  const CsvTable traj = table(artifact(r, "trajectory_seed1.csv"));
  CHECK(traj.rows.size() == 280);
  CHECK(traj.header == trajectory_columns(4));
}

TEST_CASE("stoptest and activeset experiments") {
  const ExperimentResult st = run_experiment(parse(R"(kind = stoptest
problem = illustrative
noise.eps_f = 1e-2
noise.eps_g = 1e-1
noise.eps_h = 1e-1
solver.mu0 = 0.1
seeds = 1..3
stoptest.iterations = 200
)"));
  const CsvTable t = table(artifact(st, "stoptest.csv"));
  CHECK(t.rows.size() == 3);
  for (const auto& row : t.rows) CHECK(std::stoi(row[column(t, "trigger")]) >= 1);

  const ExperimentResult as = run_experiment(parse(R"(kind = activeset
problem = harkerp2-4
noise.eps_f = 1e-2
noise.eps_g = 1e-1
noise.eps_h = 1e-1
seeds = 1..2
activeset.mus = 1e-4
activeset.iterations = 500
)"));
  const CsvTable a = table(artifact(as, "activeset.csv"));
  CHECK(a.rows.size() == 2);
  const CsvTable at = table(artifact(as, "activeset_table.csv"));
  CHECK(at.rows.size() == 1);
}

TEST_CASE("scatter emits gradients at exact noise distance") {
  const ExperimentResult r = run_experiment(parse(R"(kind = scatter
problem = illustrative
noise.eps_f = 1e-2
noise.eps_g = 1e-1
noise.eps_h = 1e-1
noise.grad_model = sphere
solver.mu0 = 1e-8
seeds = 4
)"));
  const CsvTable noisy = table(artifact(r, "scatter_noisy_grad_seed4.csv"));
  const CsvTable exact = table(artifact(r, "scatter_true_grad_seed4.csv"));
  const CsvTable iterates = table(artifact(r, "scatter_iterates_seed4.csv"));
  REQUIRE(noisy.rows.size() == 200);
  REQUIRE(exact.rows.size() == 200);
  CHECK(iterates.rows.size() == 200);
  for (std::size_t k = 0; k < noisy.rows.size(); ++k) {
    const double d1 = std::stod(noisy.rows[k][1]) - std::stod(exact.rows[k][1]);
    const double d2 = std::stod(noisy.rows[k][2]) - std::stod(exact.rows[k][2]);
    CHECK(std::hypot(d1, d2) == doctest::Approx(0.1).epsilon(1e-6));
  }
}

TEST_CASE("property: emitted CSVs are deterministic and parse back") {
  for (const char* text : {kRadii, kPeriodic}) {
    const ExperimentConfig c = parse(text);
    const ExperimentResult a = run_experiment(c);
    const ExperimentResult b = run_experiment(c);
    REQUIRE(a.artifacts.size() == b.artifacts.size());
    for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
      CHECK(a.artifacts[i].content == b.artifacts[i].content);
      CHECK(a.artifacts[i].content.find('\r') == std::string::npos);
      const CsvTable t = table(a.artifacts[i]);
      for (const auto& row : t.rows) {
        for (const auto& cell : row) {
          if (cell == "nan" || cell == "inf" || cell == "-inf") continue;
          if (cell.find_first_not_of("0123456789+-.e") != std::string::npos) continue;
          CHECK(std::isfinite(std::stod(cell)));
        }
      }
    }
  }
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(280) == "280");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("write_artifacts removes partial output on failure") {
  const fs::path dir = scratch_dir("partial");
  fs::create_directories(dir / "p_b.csv");  // a directory blocks the second file
  ExperimentResult r;
  r.artifacts = {{"a.csv", "x\n1\n"}, {"b.csv", "y\n2\n"}};
  CHECK_THROWS(write_artifacts(r, dir, "p_"));
  CHECK_FALSE(fs::exists(dir / "p_a.csv"));
  fs::remove_all(dir);
}

TEST_CASE("command line") {
  const fs::path dir = scratch_dir("cli");
  const std::string cli = NOISY_BARRIER_CLI;
  {
    std::ofstream(dir / "radii.cfg") << kRadii;
    std::ofstream(dir / "bad.cfg") << "kind = solve\nproblem = nosuch\n";
  }
  auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " > " + (dir / "stdout.txt").string() +
                        " 2>&1")
                           .c_str());
  };

  CHECK(run("list") == 0);
  const std::string listing = slurp(dir / "stdout.txt");
  CHECK(listing.find("harkerp2-4") != std::string::npos);
  CHECK(listing.find("illustrative") != std::string::npos);
  CHECK(listing.find("harkerp2-4") < listing.find("illustrative"));

  CHECK(run("run " + (dir / "radii.cfg").string() + " --out " + (dir / "out").string()) ==
        0);
  CHECK(slurp(dir / "stdout.txt").find("delta1_min=") != std::string::npos);
  const std::string first = slurp(dir / "out" / "radii_summary.csv");
  CHECK_FALSE(first.empty());
  CHECK(run("run " + (dir / "radii.cfg").string() + " --out " + (dir / "out").string() +
            " --seed-override 5") == 0);
  CHECK(slurp(dir / "out" / "radii_summary.csv") == first);

  CHECK(run("run " + (dir / "bad.cfg").string() + " --out " + (dir / "bad").string()) != 0);
  CHECK_FALSE(fs::exists(dir / "bad"));
  CHECK(run("run " + (dir / "missing.cfg").string()) != 0);
  CHECK(run("") != 0);
  fs::remove_all(dir);
}

#include "noisy_barrier/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "noisy_barrier/csv.hpp"

namespace noisy_barrier {

namespace fs = std::filesystem;

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Solve:
      return "solve";
    case ExperimentKind::StopTest:
      return "stoptest";
    case ExperimentKind::ActiveSet:
      return "activeset";
    case ExperimentKind::Radii:
      return "radii";
    case ExperimentKind::Scatter:
      return "scatter";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "solve") return ExperimentKind::Solve;
  if (text == "stoptest") return ExperimentKind::StopTest;
  if (text == "activeset") return ExperimentKind::ActiveSet;
  if (text == "radii") return ExperimentKind::Radii;
  if (text == "scatter") return ExperimentKind::Scatter;
  throw ConfigError("unknown experiment kind: " + std::string(text));
}

std::vector<std::uint64_t> ExperimentConfig::effective_seeds() const {
  if (!seeds.empty()) return seeds;
  return {noise.seed};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& v) {
  const long long out = to_integer(key, v);
  if (out < -2147483647LL || out > 2147483647LL) {
    throw ConfigError(key + ": out of range");
  }
  return static_cast<int>(out);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_double_list(const std::string& key,
                                   const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(key, item));
  return out;
}

/// "1, 2, 5..8" → 1 2 5 6 7 8
std::vector<std::uint64_t> to_seed_list(const std::string& key,
                                        const std::string& v) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(v)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      const long long s = to_integer(key, item);
      if (s < 0) throw ConfigError(key + ": seeds must be non-negative");
      out.push_back(static_cast<std::uint64_t>(s));
      continue;
    }
    const long long lo = to_integer(key, trim(item.substr(0, dots)));
    const long long hi = to_integer(key, trim(item.substr(dots + 2)));
    if (lo < 0 || hi < lo || hi - lo > 100000) {
      throw ConfigError(key + ": bad seed range '" + item + "'");
    }
    for (long long s = lo; s <= hi; ++s) out.push_back(static_cast<std::uint64_t>(s));
  }
  return out;
}

template <typename E, typename Parse>
E parse_enum(const std::string& key, const std::string& v, Parse parse) {
  try {
    return parse(v);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

using Setter = std::function<void(ExperimentConfig&, const std::string&,
                                  const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [&t](const std::string& key, auto field) {
      t[key] = [field](ExperimentConfig& c, const std::string& k,
                       const std::string& v) { field(c) = to_double(k, v); };
    };
    auto integer = [&t](const std::string& key, auto field) {
      t[key] = [field](ExperimentConfig& c, const std::string& k,
                       const std::string& v) { field(c) = to_int(k, v); };
    };

    t["kind"] = [](ExperimentConfig& c, const std::string&, const std::string& v) {
      c.kind = parse_experiment_kind(v);
    };
    t["problem"] = [](ExperimentConfig& c, const std::string&,
                      const std::string& v) { c.problem = v; };
    for (const char* p : {"problem.n", "problem.c1", "problem.c2"}) {
      t[p] = [](ExperimentConfig& c, const std::string& k, const std::string& v) {
        c.problem_params[k.substr(8)] = to_double(k, v);
      };
    }

    num("noise.eps_f", [](ExperimentConfig& c) -> double& { return c.noise.eps_f; });
    num("noise.eps_g", [](ExperimentConfig& c) -> double& { return c.noise.eps_g; });
    num("noise.eps_h", [](ExperimentConfig& c) -> double& { return c.noise.eps_h; });
    t["noise.grad_model"] = [](ExperimentConfig& c, const std::string& k,
                               const std::string& v) {
      c.noise.grad_model =
          parse_enum<GradientNoiseModel>(k, v, parse_gradient_noise_model);
    };
    t["noise.seed"] = [](ExperimentConfig& c, const std::string& k,
                         const std::string& v) {
      const auto s = to_seed_list(k, v);
      if (s.size() != 1) throw ConfigError(k + ": expected one seed");
      c.noise.seed = s.front();
    };
    t["seeds"] = [](ExperimentConfig& c, const std::string& k,
                    const std::string& v) { c.seeds = to_seed_list(k, v); };
    t["output.prefix"] = [](ExperimentConfig& c, const std::string&,
                            const std::string& v) { c.output_prefix = v; };

    num("solver.nu", [](ExperimentConfig& c) -> double& { return c.solver.nu; });
    t["solver.eps_r"] = [](ExperimentConfig& c, const std::string& k,
                           const std::string& v) {
      c.solver.eps_r = to_double(k, v);
    };
    num("solver.tau", [](ExperimentConfig& c) -> double& { return c.solver.tau; });
    num("solver.tau_min",
        [](ExperimentConfig& c) -> double& { return c.solver.tau_min; });
    num("solver.gamma", [](ExperimentConfig& c) -> double& { return c.solver.gamma; });
    num("solver.kappa_sigma",
        [](ExperimentConfig& c) -> double& { return c.solver.kappa_sigma; });
    num("solver.kappa_mu",
        [](ExperimentConfig& c) -> double& { return c.solver.kappa_mu; });
    num("solver.kappa_dec",
        [](ExperimentConfig& c) -> double& { return c.solver.kappa_dec; });
    num("solver.mu0", [](ExperimentConfig& c) -> double& { return c.solver.mu0; });
    num("solver.mu_min",
        [](ExperimentConfig& c) -> double& { return c.solver.mu_min; });
    integer("solver.n_mu", [](ExperimentConfig& c) -> int& { return c.solver.n_mu; });
    integer("solver.max_inner",
            [](ExperimentConfig& c) -> int& { return c.solver.max_inner; });
    integer("solver.halving_cap",
            [](ExperimentConfig& c) -> int& { return c.solver.halving_cap; });
    integer("solver.period",
            [](ExperimentConfig& c) -> int& { return c.solver.mu_strategy.period; });
    t["solver.hessian_mode"] = [](ExperimentConfig& c, const std::string& k,
                                  const std::string& v) {
      c.solver.hessian_mode = parse_enum<HessianMode>(k, v, parse_hessian_mode);
    };
    t["solver.mu_strategy"] = [](ExperimentConfig& c, const std::string& k,
                                 const std::string& v) {
      c.solver.mu_strategy.kind =
          parse_enum<MuStrategyKind>(k, v, parse_mu_strategy);
    };
    t["solver.nu_rule"] = [](ExperimentConfig& c, const std::string& k,
                             const std::string& v) {
      if (v == "balanced") {
        c.solver.nu_rule = NuRule::Balanced;
      } else if (v == "constant") {
        c.solver.nu_rule = NuRule::Constant;
      } else {
        throw ConfigError(k + ": expected balanced or constant");
      }
    };

    integer("stoptest.iterations",
            [](ExperimentConfig& c) -> int& { return c.stoptest_iterations; });
    t["activeset.mus"] = [](ExperimentConfig& c, const std::string& k,
                            const std::string& v) {
      c.activeset_mus = to_double_list(k, v);
    };
    integer("activeset.iterations",
            [](ExperimentConfig& c) -> int& { return c.activeset_iterations; });
    integer("activeset.window",
            [](ExperimentConfig& c) -> int& { return c.activeset_window; });
    integer("scatter.iterations",
            [](ExperimentConfig& c) -> int& { return c.scatter_iterations; });
    integer("scatter.last", [](ExperimentConfig& c) -> int& { return c.scatter_last; });

    t["radii.constants"] = [](ExperimentConfig& c, const std::string& k,
                              const std::string& v) {
      if (v != "illustrative" && v != "generic") {
        throw ConfigError(k + ": expected illustrative or generic");
      }
      c.radii.constants = v;
    };
    num("radii.mu", [](ExperimentConfig& c) -> double& { return c.radii.mu; });
    num("radii.l_g", [](ExperimentConfig& c) -> double& { return c.radii.generic.l_g; });
    num("radii.l_h", [](ExperimentConfig& c) -> double& { return c.radii.generic.l_h; });
    num("radii.norm_gamma_inv",
        [](ExperimentConfig& c) -> double& { return c.radii.generic.norm_gamma_inv; });
    num("radii.x_star_inf",
        [](ExperimentConfig& c) -> double& { return c.radii.generic.x_star_inf; });
    num("radii.z_star_inf",
        [](ExperimentConfig& c) -> double& { return c.radii.generic.z_star_inf; });
    num("radii.xi_m", [](ExperimentConfig& c) -> double& { return c.radii.generic.xi_m; });
    num("radii.grid_lo", [](ExperimentConfig& c) -> double& { return c.radii.grid_lo; });
    num("radii.grid_hi", [](ExperimentConfig& c) -> double& { return c.radii.grid_hi; });
    integer("radii.grid_count",
            [](ExperimentConfig& c) -> int& { return c.radii.grid_count; });
    t["radii.grid_eps_g"] = [](ExperimentConfig& c, const std::string& k,
                               const std::string& v) {
      c.radii.grid_eps_g = to_double_list(k, v);
    };
    t["radii.grid_eps_h"] = [](ExperimentConfig& c, const std::string& k,
                               const std::string& v) {
      c.radii.grid_eps_h = to_double_list(k, v);
    };
    return t;
  }();
  return table;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        key + "'");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" +
                        key + "'");
    }
    it->second(config, key, value);
  }
  return config;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  return parse_config(in);
}

ProblemPtr resolve_problem(const std::string& name,
                           const std::map<std::string, double>& params) {
  auto param = [&params](const std::string& key, double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "harkerp2") {
    const double n = param("n", 4.0);
    if (n != std::floor(n) || n < 1.0) {
      throw ConfigError("problem.n must be a positive integer");
    }
    if (n > static_cast<double>(kMaxDenseDimension)) {
      throw ConfigError("problem.n = " + std::to_string(static_cast<long long>(n)) +
                        " exceeds the dense limit of " +
                        std::to_string(kMaxDenseDimension));
    }
    return harkerp2(static_cast<Index>(n));
  }
  if (name == "illustrative") {
    return illustrative(param("c1", 1.0), param("c2", 1.0));
  }
  if (!params.empty()) {
    throw ConfigError("problem parameters only apply to harkerp2 and illustrative");
  }
  try {
    return lookup(name);
  } catch (const UnknownProblem& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  try {
    noise.validate();
    if (kind != ExperimentKind::Radii) solver.validate(noise);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (kind != ExperimentKind::Radii) {
    if (problem.empty()) fail("problem is required");
    resolve_problem(problem, problem_params);
  }
  if (stoptest_iterations < 10) fail("stoptest.iterations must be at least 10");
  if (activeset_mus.empty()) fail("activeset.mus must not be empty");
  for (double mu : activeset_mus) {
    if (!(mu > 0.0)) fail("activeset.mus must be positive");
  }
  if (activeset_window < 1 || activeset_iterations < activeset_window) {
    fail("activeset.window must lie in [1, activeset.iterations]");
  }
  if (scatter_last < 1 || scatter_iterations < scatter_last) {
    fail("scatter.last must lie in [1, scatter.iterations]");
  }
  if (kind == ExperimentKind::Radii) {
    if (!(radii.mu > 0.0)) fail("radii.mu must be positive");
    if (radii.grid_count < 2 || !(radii.grid_lo > 0.0) ||
        !(radii.grid_hi < 1.0) || !(radii.grid_lo < radii.grid_hi)) {
      fail("radii grid must satisfy 0 < grid_lo < grid_hi < 1, grid_count >= 2");
    }
    if (radii.constants == "generic" && !(radii.generic.xi_m > 1.0)) {
      fail("radii.xi_m must exceed 1");
    }
  }
}

double geometric_mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double log_sum = 0.0;
  for (double v : values) {
    if (v == 0.0) return 0.0;
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

namespace {

std::string seed_suffix(std::uint64_t seed) {
  return "_seed" + std::to_string(seed);
}

NoisyOracle make_oracle(const ExperimentConfig& config, std::uint64_t seed) {
  NoiseSpec spec = config.noise;
  spec.seed = seed;
  return NoisyOracle(resolve_problem(config.problem, config.problem_params), spec);
}

SolverConfig fixed_mu_config(const ExperimentConfig& config, double mu,
                             int iterations) {
  SolverConfig s = config.solver;
  s.mu_strategy.kind = MuStrategyKind::FixedMu;
  s.mu0 = mu;
  s.max_inner = iterations;
  return s;
}

std::string render(const std::function<void(std::ostream&)>& body) {
  std::ostringstream out;
  body(out);
  return out.str();
}

void run_solve(const ExperimentConfig& config, ExperimentResult& result) {
  std::ostringstream summary;
  CsvWriter w(summary);
  w.header({"seed", "ter", "f_evals", "grad0", "grad_ter", "scaled_grad0",
            "scaled_grad_ter", "t1", "t2", "reason"});
  for (std::uint64_t seed : config.effective_seeds()) {
    NoisyOracle oracle = make_oracle(config, seed);
    const Trajectory t = solve_continuation(oracle, config.solver);
    result.artifacts.push_back(
        {"trajectory" + seed_suffix(seed) + ".csv",
         render([&](std::ostream& o) { write_trajectory(o, t); })});
    const IterateRecord& first = t.records.front();
    const IterateRecord& last = t.records.back();
    w.cell(seed).cell(static_cast<long long>(t.records.size()))
        .cell(last.f_evals).cell(first.grad_tilde_norm).cell(last.grad_tilde_norm)
        .cell(first.grad_tilde_scaled).cell(last.grad_tilde_scaled)
        .cell(last.t1).cell(last.t2).cell(std::string(to_string(t.reason)));
    w.end_row();
    result.summary.push_back(
        "seed=" + std::to_string(seed) + " ter=" + std::to_string(t.records.size()) +
        " f_evals=" + std::to_string(last.f_evals) +
        " grad0=" + format_double(first.grad_tilde_norm) +
        " grad_ter=" + format_double(last.grad_tilde_norm) +
        " scaled0=" + format_double(first.grad_tilde_scaled) +
        " scaled_ter=" + format_double(last.grad_tilde_scaled) +
        " T1=" + format_double(last.t1) + " T2=" + format_double(last.t2));
  }
  result.artifacts.push_back({"summary.csv", summary.str()});
}

void run_stoptest(const ExperimentConfig& config, ExperimentResult& result) {
  const SolverConfig s =
      fixed_mu_config(config, config.solver.mu0, config.stoptest_iterations);
  std::ostringstream table;
  CsvWriter w(table);
  w.header({"seed", "trigger", "f_evals", "grad_trigger", "scaled_grad_trigger",
            "t1", "t2", "nu_k", "nu_hat2", "cond_i", "cond_ii", "grad_geomean",
            "scaled_grad_geomean"});
  for (std::uint64_t seed : config.effective_seeds()) {
    NoisyOracle oracle = make_oracle(config, seed);
    const Trajectory t = solve_continuation(oracle, s);
    const auto hit = std::find_if(t.records.begin(), t.records.end(),
                                  [](const IterateRecord& r) { return r.triggered(); });
    std::vector<double> grads, scaled;
    for (std::size_t k = t.records.size() - 10; k < t.records.size(); ++k) {
      grads.push_back(t.records[k].grad_tilde_norm);
      scaled.push_back(t.records[k].grad_tilde_scaled);
    }
    w.cell(seed);
    if (hit == t.records.end()) {
      w.cell(-1LL);
      for (int i = 0; i < 9; ++i) w.cell(std::string("nan"));
    } else {
      w.cell(static_cast<long long>(hit - t.records.begin()) + 1)
          .cell(hit->f_evals).cell(hit->grad_tilde_norm).cell(hit->grad_tilde_scaled)
          .cell(hit->t1).cell(hit->t2).cell(hit->nu_k).cell(hit->nu_hat2)
          .cell(hit->cond_i).cell(hit->cond_ii);
    }
    w.cell(geometric_mean(grads)).cell(geometric_mean(scaled));
    w.end_row();
    result.summary.push_back(
        "seed=" + std::to_string(seed) + " trigger=" +
        (hit == t.records.end()
             ? std::string("none")
             : std::to_string(hit - t.records.begin() + 1)) +
        " grad_geomean=" + format_double(geometric_mean(grads)));
  }
  result.artifacts.push_back({"stoptest.csv", table.str()});
}

void run_activeset(const ExperimentConfig& config, ExperimentResult& result) {
  const ProblemPtr problem = resolve_problem(config.problem, config.problem_params);
  if (!problem->solution()) {
    throw ConfigError("activeset needs a problem with a known solution");
  }
  std::ostringstream rows, table;
  CsvWriter w(rows);
  CsvWriter tw(table);
  w.header({"problem", "mu", "seed", "window", "window_max", "empty_active_set"});
  tw.header({"problem", "mu", "seeds", "window_max_geomean", "window_max_min",
             "window_max_max"});
  for (double mu : config.activeset_mus) {
    const SolverConfig s = fixed_mu_config(config, mu, config.activeset_iterations);
    std::vector<double> maxima;
    for (std::uint64_t seed : config.effective_seeds()) {
      NoisyOracle oracle = make_oracle(config, seed);
      const Trajectory t = solve_continuation(oracle, s);
      const ActiveSetReport r =
          active_set_report(t, *problem->solution(), config.activeset_window);
      maxima.push_back(r.window_max);
      w.cell(problem->name()).cell(mu).cell(seed).cell(r.window)
          .cell(r.window_max).cell(r.empty_active_set);
      w.end_row();
    }
    const auto [lo, hi] = std::minmax_element(maxima.begin(), maxima.end());
    tw.cell(problem->name()).cell(mu).cell(static_cast<long long>(maxima.size()))
        .cell(geometric_mean(maxima)).cell(*lo).cell(*hi);
    tw.end_row();
    result.summary.push_back("mu=" + format_double(mu) + " window_max_geomean=" +
                             format_double(geometric_mean(maxima)));
  }
  result.artifacts.push_back({"activeset.csv", rows.str()});
  result.artifacts.push_back({"activeset_table.csv", table.str()});
}

void run_radii(const ExperimentConfig& config, ExperimentResult& result) {
  const RadiiSettings& rs = config.radii;
  ConstantsFn constants;
  if (rs.constants == "illustrative") {
    constants = [mu = rs.mu](double d) { return constants_illustrative(mu, d); };
  } else {
    constants = [g = rs.generic](double d) {
      GenericConstantInputs in = g;
      in.bar_delta = d;
      return constants_generic(in);
    };
  }
  const auto grid = linear_grid(rs.grid_lo, rs.grid_hi, rs.grid_count);
  const RadiiSweep sweep =
      radii_sweep(constants, config.noise.eps_g, config.noise.eps_h, grid);

  std::ostringstream curve;
  CsvWriter cw(curve);
  cw.header({"bar_delta", "discriminant", "delta_minus", "delta_plus", "delta1",
             "delta2", "feasible"});
  for (const RadiiReport& r : sweep.points) {
    cw.cell(r.bar_delta).cell(r.delta).cell(r.delta_minus).cell(r.delta_plus)
        .cell(r.delta1).cell(r.delta2).cell(r.feasible);
    cw.end_row();
  }

  std::ostringstream summary;
  CsvWriter sw(summary);
  sw.header({"eps_g", "eps_h", "delta1_min", "delta2_max"});
  sw.cell(config.noise.eps_g).cell(config.noise.eps_h).cell(sweep.delta1_min)
      .cell(sweep.delta2_max);
  sw.end_row();

  std::ostringstream grid_out;
  CsvWriter gw(grid_out);
  gw.header({"eps_g", "eps_h", "delta1_min", "delta2_max", "found"});
  for (double eg : rs.grid_eps_g) {
    for (double eh : rs.grid_eps_h) {
      gw.cell(eg).cell(eh);
      try {
        const RadiiSweep s = radii_sweep(constants, eg, eh, grid);
        gw.cell(s.delta1_min).cell(s.delta2_max).cell(true);
      } catch (const NoCrossing&) {
        gw.cell(std::string("nan")).cell(std::string("nan")).cell(false);
      }
      gw.end_row();
    }
  }

  result.artifacts.push_back({"radii_sweep.csv", curve.str()});
  result.artifacts.push_back({"radii_summary.csv", summary.str()});
  result.artifacts.push_back({"radii_grid.csv", grid_out.str()});
  result.summary.push_back("delta1_min=" + format_double(sweep.delta1_min) +
                           " delta2_max=" + format_double(sweep.delta2_max));
}

void run_scatter(const ExperimentConfig& config, ExperimentResult& result) {
  const SolverConfig s =
      fixed_mu_config(config, config.solver.mu0, config.scatter_iterations);
  for (std::uint64_t seed : config.effective_seeds()) {
    NoisyOracle oracle = make_oracle(config, seed);
    const Trajectory t = solve_continuation(oracle, s);
    const Index n = t.x.size();
    auto emit = [&](const std::string& stem, const std::string& col,
                    auto member) {
      std::ostringstream out;
      CsvWriter w(out);
      std::vector<std::string> header{"k"};
      for (Index i = 1; i <= n; ++i) header.push_back(col + "_" + std::to_string(i));
      w.header(header);
      for (std::size_t k = t.records.size() - config.scatter_last;
           k < t.records.size(); ++k) {
        w.cell(static_cast<long long>(k)).cell(t.records[k].*member);
        w.end_row();
      }
      result.artifacts.push_back({stem + seed_suffix(seed) + ".csv", out.str()});
    };
    emit("scatter_iterates", "x", &IterateRecord::x);
    emit("scatter_noisy_grad", "grad_tilde", &IterateRecord::grad_tilde);
    emit("scatter_true_grad", "true_grad", &IterateRecord::true_grad);
  }
  result.summary.push_back("scatter rows per seed=" +
                           std::to_string(config.scatter_last));
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  switch (config.kind) {
    case ExperimentKind::Solve:
      run_solve(config, result);
      break;
    case ExperimentKind::StopTest:
      run_stoptest(config, result);
      break;
    case ExperimentKind::ActiveSet:
      run_activeset(config, result);
      break;
    case ExperimentKind::Radii:
      run_radii(config, result);
      break;
    case ExperimentKind::Scatter:
      run_scatter(config, result);
      break;
  }
  return result;
}

std::vector<fs::path> write_artifacts(const ExperimentResult& result,
                                      const fs::path& dir,
                                      const std::string& prefix) {
  std::vector<fs::path> written;
  try {
    fs::create_directories(dir);
    for (const Artifact& a : result.artifacts) {
      const fs::path path = dir / (prefix + a.name);
      written.push_back(path);
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << a.content;
      out.close();
      if (!out) throw std::runtime_error("failed to write " + path.string());
    }
  } catch (...) {
    std::error_code ignored;
    for (const auto& p : written) fs::remove(p, ignored);
    throw;
  }
  return written;
}

}  // namespace noisy_barrier

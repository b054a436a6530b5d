#include "noisy_barrier/problems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace noisy_barrier {

namespace {

std::string short_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

void KnownSolution::validate() const {
  const Index n = x_star.size();
  if (z_star.size() != n) {
    throw std::logic_error("KnownSolution: x*/z* size mismatch");
  }
  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (const auto* set :
       {&active_strict, &active_degenerate, &inactive_bounded, &free}) {
    for (Index i : *set) {
      if (i < 0 || i >= n) {
        throw std::logic_error("KnownSolution: index out of range");
      }
      ++seen[static_cast<std::size_t>(i)];
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw std::logic_error("KnownSolution: index sets do not partition [n]");
  }
  for (Index i = 0; i < n; ++i) {
    if (x_star(i) < 0.0 || z_star(i) < 0.0 || x_star(i) * z_star(i) != 0.0) {
      throw std::logic_error("KnownSolution: complementarity violated");
    }
  }
  for (Index i : active_strict) {
    if (!(x_star(i) == 0.0 && z_star(i) > 0.0)) {
      throw std::logic_error("KnownSolution: strict active index mislabeled");
    }
  }
}

Problem::Problem(std::string name, Objective f, Gradient g, Hessian h, Vector x0,
                 std::optional<KnownSolution> solution,
                 std::optional<CentralPath> path)
    : name_(std::move(name)),
      f_(std::move(f)),
      g_(std::move(g)),
      h_(std::move(h)),
      x0_(std::move(x0)),
      solution_(std::move(solution)),
      path_(std::move(path)) {
  if (x0_.size() == 0 || !(x0_.minCoeff() > 0.0)) {
    throw std::invalid_argument("Problem: start point must be strictly positive");
  }
  if (solution_) {
    solution_->validate();
  }
}

double Problem::f(const Vector& x) const {
  if (x.size() != n()) throw DimensionMismatch("Problem::f: size mismatch");
  return f_(x);
}

Vector Problem::gradient(const Vector& x) const {
  if (x.size() != n()) throw DimensionMismatch("Problem::gradient: size mismatch");
  return g_(x);
}

SymMatrix Problem::hessian(const Vector& x) const {
  if (x.size() != n()) throw DimensionMismatch("Problem::hessian: size mismatch");
  return h_(x);
}

ProblemPtr harkerp2(Index n) {
  if (n < 2) {
    throw std::invalid_argument("harkerp2: n must be at least 2");
  }
  // Tail sums T_j = Σ_{i≥j} x_i (zero-based j), so the objective reads
  // -Σ(x²/2 + x) + T_0² + 2 Σ_{j≥1} T_j².
  auto tail_sums = [](const Vector& x) {
    Vector t(x.size());
    double acc = 0.0;
    for (Index j = x.size() - 1; j >= 0; --j) {
      acc += x(j);
      t(j) = acc;
    }
    return t;
  };
  auto f = [tail_sums](const Vector& x) {
    const Vector t = tail_sums(x);
    return -(0.5 * x.squaredNorm() + x.sum()) + t(0) * t(0) +
           2.0 * t.tail(x.size() - 1).squaredNorm();
  };
  auto g = [tail_sums](const Vector& x) {
    const Vector t = tail_sums(x);
    Vector grad(x.size());
    double prefix = 0.0;  // Σ_{1≤j≤k} T_j
    for (Index k = 0; k < x.size(); ++k) {
      if (k >= 1) prefix += t(k);
      grad(k) = -(x(k) + 1.0) + 2.0 * t(0) + 4.0 * prefix;
    }
    return grad;
  };
  auto h = [](const Vector& x) {
    const Index dim = x.size();
    Eigen::MatrixXd m(dim, dim);
    for (Index k = 0; k < dim; ++k) {
      for (Index l = 0; l < dim; ++l) {
        m(k, l) = 2.0 + 4.0 * static_cast<double>(std::min(k, l));
      }
      m(k, k) -= 1.0;
    }
    return SymMatrix(std::move(m));
  };

  Vector x0 = Vector::LinSpaced(n, 1.0, static_cast<double>(n));

  KnownSolution sol;
  sol.x_star = Vector::Zero(n);
  sol.x_star(0) = 1.0;
  sol.z_star = Vector::Ones(n);
  sol.z_star(0) = 0.0;
  sol.inactive_bounded = {0};
  for (Index i = 1; i < n; ++i) sol.active_strict.push_back(i);

  return std::make_shared<Problem>("harkerp2-" + std::to_string(n), f, g, h,
                                   std::move(x0), std::move(sol));
}

ProblemPtr illustrative(double c1, double c2) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw std::invalid_argument("illustrative: coefficients must be positive");
  }
  auto f = [c1, c2](const Vector& x) {
    return 0.5 * c1 * (x(0) - 1.0) * (x(0) - 1.0) + c2 * x(1);
  };
  auto g = [c1, c2](const Vector& x) {
    Vector grad(2);
    grad << c1 * (x(0) - 1.0), c2;
    return grad;
  };
  auto h = [c1](const Vector&) {
    Vector d(2);
    d << c1, 0.0;
    return SymMatrix::diagonal(d);
  };

  // c1(x₁ − 1) = μ/x₁ and c2 = μ/x₂.
  CentralPath path;
  path.x_of_mu = [c1, c2](double mu) {
    Vector x(2);
    x << 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * mu / c1)), mu / c2;
    return x;
  };
  path.z_of_mu = [c1, c2](double mu) {
    Vector z(2);
    z << 2.0 * mu / (1.0 + std::sqrt(1.0 + 4.0 * mu / c1)), c2;
    return z;
  };

  KnownSolution sol;
  sol.x_star = Vector(2);
  sol.x_star << 1.0, 0.0;
  sol.z_star = Vector(2);
  sol.z_star << 0.0, c2;
  sol.inactive_bounded = {0};
  sol.active_strict = {1};

  std::string name = (c1 == 1.0 && c2 == 1.0)
                         ? std::string("illustrative")
                         : "illustrative-c" + short_number(c1) + "-" +
                               short_number(c2);
  Vector x0(2);
  x0 << 2.0, 2.0;
  return std::make_shared<Problem>(std::move(name), f, g, h, std::move(x0),
                                   std::move(sol), std::move(path));
}

double synthetic_barrier_minimizer(double diag, double shift, double mu) {
  // x² − shift·x − μ/diag = 0, positive root in cancellation-free form.
  const double c = mu / diag;
  const double disc = std::sqrt(shift * shift + 4.0 * c);
  if (shift >= 0.0) return 0.5 * (shift + disc);
  return 2.0 * c / (disc - shift);
}

ProblemPtr synthetic_quadratic(const Vector& diag, const Vector& shift) {
  if (diag.size() != shift.size() || diag.size() == 0) {
    throw DimensionMismatch("synthetic_quadratic: diag/shift size mismatch");
  }
  if (!(diag.minCoeff() > 0.0)) {
    throw std::invalid_argument("synthetic_quadratic: diag must be positive");
  }
  const Index n = diag.size();
  auto f = [diag, shift](const Vector& x) {
    return 0.5 * (diag.array() * (x - shift).array().square()).sum();
  };
  auto g = [diag, shift](const Vector& x) {
    return Vector(diag.array() * (x - shift).array());
  };
  auto h = [diag](const Vector&) { return SymMatrix::diagonal(diag); };

  CentralPath path;
  path.x_of_mu = [diag, shift](double mu) {
    Vector x(diag.size());
    for (Index i = 0; i < diag.size(); ++i) {
      x(i) = synthetic_barrier_minimizer(diag(i), shift(i), mu);
    }
    return x;
  };
  path.z_of_mu = [x_of_mu = path.x_of_mu](double mu) {
    const Vector x = x_of_mu(mu);
    return Vector(mu * x.cwiseInverse());
  };

  KnownSolution sol;
  sol.x_star = shift.cwiseMax(0.0);
  sol.z_star = (diag.array() * (-shift).cwiseMax(0.0).array()).matrix();
  for (Index i = 0; i < n; ++i) {
    if (shift(i) > 0.0) {
      sol.inactive_bounded.push_back(i);
    } else if (shift(i) < 0.0) {
      sol.active_strict.push_back(i);
    } else {
      sol.active_degenerate.push_back(i);
    }
  }

  return std::make_shared<Problem>(
      "synthetic-quadratic-" + std::to_string(n), f, g, h, Vector::Ones(n),
      std::move(sol), std::move(path));
}

UnknownProblem::UnknownProblem(const std::string& name)
    : std::out_of_range("unknown problem: " + name) {}

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = [] {
    std::vector<RegistryEntry> e;
    e.push_back({"harkerp2-4", "harkerp2, n=4", [] { return harkerp2(4); }});
    e.push_back(
        {"harkerp2-100", "harkerp2, n=100", [] { return harkerp2(100); }});
    e.push_back({"illustrative", "(x1-1)^2/2 + x2, closed-form central path",
                 [] { return illustrative(1.0, 1.0); }});
    e.push_back({"illustrative-c1000-1000",
                 "1000(x1-1)^2/2 + 1000 x2, scaled scatter-study instance",
                 [] { return illustrative(1000.0, 1000.0); }});
    e.push_back({"synthetic-quadratic-1", "(x-2)^2/2, one inactive bound", [] {
                   return synthetic_quadratic(Vector::Ones(1),
                                              Vector::Constant(1, 2.0));
                 }});
    e.push_back({"synthetic-quadratic-3",
                 "diag(1,4,2) quadratic with shifts (2,-1,0.5)", [] {
                   Vector d(3), s(3);
                   d << 1.0, 4.0, 2.0;
                   s << 2.0, -1.0, 0.5;
                   return synthetic_quadratic(d, s);
                 }});
    return e;
  }();
  return entries;
}

ProblemPtr lookup(const std::string& name) {
  for (const auto& entry : registry()) {
    if (entry.name == name) return entry.make();
  }
  throw UnknownProblem(name);
}

}  // namespace noisy_barrier

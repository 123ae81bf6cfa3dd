#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace randrk {

using Vec = std::vector<double>;

/// Right-hand side f(t, y) writing the field value into dy (same dimension).
using Rhs = std::function<void(double t, const Vec& y, Vec& dy)>;
using ExactSolution = std::function<Vec(double t)>;

/// 1-norm: sum of absolute component values.  Throws std::invalid_argument
/// on an empty vector.
double norm1(const Vec& v);

/// First-order initial value problem y' = f(t, y), y(a) = eta, on [a, b].
struct IVProblem {
  std::string name;
  /// Parameter fingerprint distinguishing same-named instances (set by
  /// make_problem; used for reference-solution caching and reports).
  std::string params;
  double a = 0.0;
  double b = 1.0;
  int dimension = 1;
  Vec eta;
  Rhs rhs;
  /// Temporal Hölder exponent of f in (0, 1], when known.
  std::optional<double> holder_rho;
  std::optional<ExactSolution> exact;
};

/// Uniform mesh t_j = a + j h, j = 0..n, with t_n pinned to b exactly.
struct Mesh {
  double a = 0.0;
  double b = 1.0;
  int n = 1;

  double h() const { return (b - a) / n; }
  double point(int j) const { return j == n ? b : a + j * h(); }
};

/// Optional parameters for the built-in problems.
struct ProblemOptions {
  double gamma = 2.0;              // example1 smoothness parameter (> 0)
  double beta = 1.0 / 768.0;       // sir contact rate
  double recovery = 1.0 / 120.0;   // sir recovery rate
  Vec sir_eta = {50.0, 1.0, 0.0};
  double sir_t_end = 30.0;
  double lambda = -1.0;            // linear coefficient (real)
  double linear_eta = 1.0;         // linear initial value (nonzero)
  double linear_t_end = 1.0;
};

/// Builds one of the registered problems: "example1", "sir", "linear".
/// Throws std::invalid_argument on unknown names or invalid parameters.
IVProblem make_problem(const std::string& name, const ProblemOptions& opts = {});

}  // namespace randrk

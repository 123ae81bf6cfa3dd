#pragma once

#include <cstdint>
#include <vector>

#include "randrk/noise.hpp"
#include "randrk/problem.hpp"
#include "randrk/solver.hpp"

namespace randrk {

enum class ErrorMode { terminal, uniform };

/// Monte-Carlo L^p error estimate at one mesh size.
struct ErrorEstimate {
  int n = 0;
  double h = 0.0;
  double delta = 0.0;
  double p = 2.0;
  ErrorMode mode = ErrorMode::terminal;
  double value = 0.0;
  int reps = 0;
};

/// Error-versus-n table with the log-log regression line.
struct ConvergenceTable {
  std::vector<ErrorEstimate> rows;  // sorted by n ascending
  double slope = 0.0;               // NaN when undefined (some error is 0)
  double intercept = 0.0;
  bool slope_defined = false;
};

/// Noise level policy for convergence studies: either a fixed delta or
/// delta = c * h^q recomputed per mesh size.
struct DeltaPolicy {
  bool power_law = false;
  double fixed = 0.0;
  double c = 1.0;
  double q = 1.0;

  static DeltaPolicy constant(double delta) { return {false, delta, 0.0, 0.0}; }
  static DeltaPolicy power(double q, double c) { return {true, 0.0, c, q}; }
  double operator()(double h) const;
};

enum class WorstCaseProtocol { const_pair, random_reps };

/// L^p error over M independent replicates (stream_id = replicate index):
/// e_i = norm1 deviation from the reference at the terminal point, or the
/// max over mesh points and midpoints in uniform mode; returns
/// (mean e_i^p)^(1/p).  Replicates may be evaluated concurrently; the
/// reduction order is fixed, so results depend only on master_seed.
ErrorEstimate lp_error(const IVProblem& problem, Scheme scheme, int n,
                       const NoiseSpec& noise, double p, int M, ErrorMode mode,
                       std::uint64_t master_seed, int threads = 1);

/// Worst-case-over-noise error at level delta.  const_pair takes the max of
/// the two constant-noise runs (+delta e1, -delta e1); random_reps takes the
/// max over 100 independent uniform-noise realizations.  Both protocols
/// model noise on the right-hand-side oracle only and keep the initial value
/// exact (the zero initial perturbation is admissible at every level, and it
/// is the choice under which the constant-noise runs realize the lower-bound
/// error (b-a)*delta exactly).
ErrorEstimate worst_case_error(const IVProblem& problem, Scheme scheme, int n,
                               double delta, WorstCaseProtocol protocol,
                               double p, int M, ErrorMode mode,
                               std::uint64_t master_seed, int threads = 1);

/// One lp_error row per mesh size plus the least-squares slope/intercept of
/// log10(error) against log10(n).
ConvergenceTable convergence_study(const IVProblem& problem, Scheme scheme,
                                   const std::vector<int>& n_list,
                                   NoiseKind kind, const DeltaPolicy& policy,
                                   double p, int M, ErrorMode mode,
                                   std::uint64_t master_seed, int threads = 1);

/// Localization-radius diagnostic
///   R = max{ K(1+b-a)(1+e^{K(b-a)}(1+K(b-a))),
///            K+(b-a)(1+K)+(1/K+1)(1+K(b-a))(e^{K(b-a)(1+K(b-a))}(1+K)-1) }.
/// Requires a < b, K > 0.
double compute_rbar(double a, double b, double K);

}  // namespace randrk

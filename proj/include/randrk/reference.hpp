#pragma once

#include <memory>
#include <vector>

#include "randrk/problem.hpp"

namespace randrk {

/// High-accuracy reference solution used as ground truth by the error
/// estimators.  Problems with a closed-form solution evaluate it directly;
/// otherwise the classical fourth-order one-step method is run once on a
/// fixed fine mesh (n_ref = 2^20) and queried through cubic Hermite
/// interpolation on the reference steps (node derivatives recomputed from the
/// right-hand side on demand).
class ReferenceSolution {
 public:
  explicit ReferenceSolution(const IVProblem& problem);

  /// Value at t in [a, b]; throws std::domain_error outside.
  Vec operator()(double t) const;

  static constexpr int kRefSteps = 1 << 20;

 private:
  IVProblem problem_;
  std::vector<double> states_;  // flat (kRefSteps + 1) x dimension, empty when exact
  bool use_exact_ = false;
};

/// Convenience one-shot evaluation.  For the named built-in problems the
/// underlying fine-mesh integration is cached process-wide; anonymous
/// problems are integrated per call (construct a ReferenceSolution directly
/// for repeated queries).
Vec reference_solution(const IVProblem& problem, double t);

/// Shared cached reference for a problem (cache key: name and data ranges;
/// anonymous problems are not cached).
std::shared_ptr<const ReferenceSolution> reference_for(const IVProblem& problem);

}  // namespace randrk

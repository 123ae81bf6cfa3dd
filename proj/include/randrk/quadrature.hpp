#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace randrk {

/// Requested absolute tolerance could not be certified; carries the best
/// available estimate.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double estimate_, double error_)
      : std::runtime_error(what), estimate(estimate_), error_estimate(error_) {}
  double estimate;
  double error_estimate;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod 7/15 integration of f over [lo, hi] to an absolute
/// tolerance.  Bisects until the local Kronrod-Gauss discrepancy is within
/// the local tolerance share; throws QuadratureError when the recursion depth
/// limit is reached first.
double integrate(const Integrand& f, double lo, double hi, double abs_tol);

/// Integrates f over [lo, hi] when f has an integrable (logarithmic-type)
/// singularity at one endpoint.  The interval is cut into geometrically
/// shrinking segments toward the singular endpoint, each integrated
/// adaptively, until the remaining tail is provably below the tolerance.
double integrate_endpoint_singular(const Integrand& f, double lo, double hi,
                                   bool singular_at_lo, double abs_tol);

}  // namespace randrk

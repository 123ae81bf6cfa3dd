#pragma once

#include "randrk/problem.hpp"
#include "randrk/rng.hpp"

namespace randrk {

enum class NoiseKind { none, const_plus, const_minus, uniform, relative };

/// Description of the information noise: every realized perturbation p
/// satisfies norm1(p) <= delta, so the perturbed oracle stays within the
/// admissible class at precision level delta.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double delta = 0.0;        // in [0, 1]
  double alpha_bound = 1.0;  // relative kind only: |alpha| <= alpha_bound
};

/// Returns value + p.  Perturbations by kind:
///   none:        p = 0
///   const_plus:  p = +delta * e1
///   const_minus: p = -delta * e1
///   uniform:     each coordinate of p drawn uniformly from [-delta/d, delta/d]
///   relative:    (d = 1 only) p = delta * alpha * value, alpha uniform on
///                [-alpha_bound, alpha_bound], clamped so |p| <= delta
/// A zero noise level consumes no draws, so delta = 0 behaves exactly like
/// kind none, stream for stream.
/// Throws std::invalid_argument for relative noise in dimension > 1.
Vec perturb(const Vec& value, const NoiseSpec& spec, RngStream& stream);

/// Perturbs an initial value with the same kind semantics as perturb.
Vec perturb_initial(const Vec& eta, const NoiseSpec& spec, RngStream& stream);

namespace detail {
/// In-place perturbation core shared by perturb and the solver hot loop.
void add_noise(Vec& value, const NoiseSpec& spec, RngStream& stream);
}  // namespace detail

}  // namespace randrk

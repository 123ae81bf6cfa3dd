#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "randrk/noise.hpp"
#include "randrk/problem.hpp"
#include "randrk/rng.hpp"

namespace randrk {

enum class Scheme { rrk2, euler, midpoint };

/// A state became non-finite during time stepping.
struct SolverOverflowError : std::runtime_error {
  SolverOverflowError(const std::string& what, std::size_t step_index)
      : std::runtime_error(what), step(step_index) {}
  std::size_t step;  // 1-based index of the failing step
};

/// Discrete solution V^0..V^n on a uniform mesh plus the realized tau draws
/// (empty for the deterministic schemes).
struct Trajectory {
  Mesh mesh;
  std::vector<Vec> states;
  std::vector<double> taus;
  Scheme scheme = Scheme::rrk2;
};

/// One randomized two-stage step:
///   v_tau  = v_prev + h * tau * f~(t_prev, v_prev)
///   v_next = v_prev + h * f~(t_prev + tau * h, v_tau)
/// using two noisy oracle evaluations.  Returns (v_next, v_tau).
/// Throws SolverOverflowError (step index 1) on non-finite values.
std::pair<Vec, Vec> rrk2_step(const Vec& v_prev, double t_prev, double h,
                              double tau, const IVProblem& problem,
                              const NoiseSpec& noise, RngStream& stream);

/// Randomized two-stage trajectory.  Starts from perturb_initial(eta); per
/// step the stream is consumed in the fixed order (tau_j, first-stage noise,
/// second-stage noise), so runs whose noise kinds consume no draws (none,
/// const) share the tau sequence when given the same stream address.
Trajectory rrk2_trajectory(const IVProblem& problem, int n,
                           const NoiseSpec& noise, RngStream stream);

/// Explicit Euler baseline: one noisy evaluation per step.
Trajectory euler_trajectory(const IVProblem& problem, int n,
                            const NoiseSpec& noise, RngStream stream);

/// Deterministic midpoint baseline: the two-stage step with tau forced to
/// 1/2; consumes no tau draws.
Trajectory midpoint_trajectory(const IVProblem& problem, int n,
                               const NoiseSpec& noise, RngStream stream);

/// Piecewise-linear interpolant through the trajectory states; exact at the
/// mesh points.  Throws std::domain_error for t outside [a, b].
Vec interpolate(const Trajectory& traj, double t);

namespace detail {
/// Workhorse shared by the public trajectory functions and the experiment
/// protocols.  When noisy_initial is false the initial value is taken
/// exactly (the zero perturbation, admissible at every noise level); the
/// worst-case protocols use this to model oracle noise alone.  Reuses the
/// storage already present in traj.
void solve_trajectory(Trajectory& traj, const IVProblem& problem, int n,
                      const NoiseSpec& noise, RngStream& stream, Scheme scheme,
                      bool noisy_initial);
}  // namespace detail

}  // namespace randrk

#include "randrk/solver.hpp"

#include <cmath>
#include <string>

namespace randrk {

namespace {

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

[[noreturn]] void throw_overflow(std::size_t step) {
  throw SolverOverflowError(
      "trajectory overflow: non-finite state at step " + std::to_string(step),
      step);
}

}  // namespace

namespace detail {

void solve_trajectory(Trajectory& traj, const IVProblem& problem, int n,
                      const NoiseSpec& noise, RngStream& stream, Scheme scheme,
                      bool noisy_initial) {
  if (n < 1) throw std::invalid_argument("trajectory: n must be >= 1");
  const std::size_t d = problem.eta.size();
  traj.mesh = Mesh{problem.a, problem.b, n};
  traj.scheme = scheme;
  traj.states.resize(static_cast<std::size_t>(n) + 1);
  for (auto& s : traj.states) s.resize(d);
  traj.taus.clear();
  if (scheme == Scheme::rrk2) traj.taus.reserve(n);

  traj.states[0] = problem.eta;
  if (noisy_initial) detail::add_noise(traj.states[0], noise, stream);

  const double h = traj.mesh.h();
  Vec k(d), v_tau(d);
  for (int j = 1; j <= n; ++j) {
    const Vec& prev = traj.states[j - 1];
    Vec& next = traj.states[j];
    const double t_prev = traj.mesh.point(j - 1);
    switch (scheme) {
      case Scheme::euler: {
        problem.rhs(t_prev, prev, k);
        detail::add_noise(k, noise, stream);
        for (std::size_t i = 0; i < d; ++i) next[i] = prev[i] + h * k[i];
        break;
      }
      case Scheme::rrk2:
      case Scheme::midpoint: {
        const double tau =
            scheme == Scheme::rrk2 ? stream.next_u01() : 0.5;
        if (scheme == Scheme::rrk2) traj.taus.push_back(tau);
        problem.rhs(t_prev, prev, k);
        detail::add_noise(k, noise, stream);
        for (std::size_t i = 0; i < d; ++i) v_tau[i] = prev[i] + h * tau * k[i];
        if (!all_finite(v_tau)) throw_overflow(static_cast<std::size_t>(j));
        problem.rhs(t_prev + tau * h, v_tau, k);
        detail::add_noise(k, noise, stream);
        for (std::size_t i = 0; i < d; ++i) next[i] = prev[i] + h * k[i];
        break;
      }
    }
    if (!all_finite(next)) throw_overflow(static_cast<std::size_t>(j));
  }
}

}  // namespace detail

std::pair<Vec, Vec> rrk2_step(const Vec& v_prev, double t_prev, double h,
                              double tau, const IVProblem& problem,
                              const NoiseSpec& noise, RngStream& stream) {
  if (!(h > 0.0)) throw std::invalid_argument("rrk2_step: h must be > 0");
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("rrk2_step: tau must lie in [0,1]");
  const std::size_t d = v_prev.size();
  Vec k(d), v_tau(d), v_next(d);
  problem.rhs(t_prev, v_prev, k);
  detail::add_noise(k, noise, stream);
  for (std::size_t i = 0; i < d; ++i) v_tau[i] = v_prev[i] + h * tau * k[i];
  if (!all_finite(v_tau)) throw_overflow(1);
  problem.rhs(t_prev + tau * h, v_tau, k);
  detail::add_noise(k, noise, stream);
  for (std::size_t i = 0; i < d; ++i) v_next[i] = v_prev[i] + h * k[i];
  if (!all_finite(v_next)) throw_overflow(1);
  return {std::move(v_next), std::move(v_tau)};
}

Trajectory rrk2_trajectory(const IVProblem& problem, int n,
                           const NoiseSpec& noise, RngStream stream) {
  Trajectory traj;
  detail::solve_trajectory(traj, problem, n, noise, stream, Scheme::rrk2, true);
  return traj;
}

Trajectory euler_trajectory(const IVProblem& problem, int n,
                            const NoiseSpec& noise, RngStream stream) {
  Trajectory traj;
  detail::solve_trajectory(traj, problem, n, noise, stream, Scheme::euler, true);
  return traj;
}

Trajectory midpoint_trajectory(const IVProblem& problem, int n,
                               const NoiseSpec& noise, RngStream stream) {
  Trajectory traj;
  detail::solve_trajectory(traj, problem, n, noise, stream, Scheme::midpoint,
                           true);
  return traj;
}

Vec interpolate(const Trajectory& traj, double t) {
  const Mesh& mesh = traj.mesh;
  if (!(t >= mesh.a && t <= mesh.b))
    throw std::domain_error("interpolate: t outside [a, b]");
  if (t == mesh.b) return traj.states.back();
  const double h = mesh.h();
  int j = static_cast<int>(std::floor((t - mesh.a) / h));
  j = std::min(std::max(j, 0), mesh.n - 1);
  if (t == mesh.point(j)) return traj.states[j];
  const double w = (t - mesh.point(j)) / h;
  const Vec& lo = traj.states[j];
  const Vec& hi = traj.states[j + 1];
  Vec out(lo.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = lo[i] + w * (hi[i] - lo[i]);
  return out;
}

}  // namespace randrk

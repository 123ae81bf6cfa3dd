// Acceptance gate: every release-blocking behavior of the library verified
// end to end, one verdict line per criterion.  Exit code = number of
// failures.  All tolerances are pinned here, not computed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "randrk/csv.hpp"
#include "randrk/experiments.hpp"
#include "randrk/noise.hpp"
#include "randrk/problem.hpp"
#include "randrk/reference.hpp"
#include "randrk/rng.hpp"
#include "randrk/solver.hpp"
#include "randrk/stability.hpp"

using namespace randrk;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int num, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", num, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Quasi-random van der Corput / Halton sequence for property sampling.
double halton(std::uint64_t index, unsigned base) {
  double f = 1.0, r = 0.0;
  for (std::uint64_t i = index + 1; i > 0; i /= base) {
    f /= base;
    r += f * static_cast<double>(i % base);
  }
  return r;
}

IVProblem zero_field() {
  IVProblem p;
  p.a = 0.0;
  p.b = 2.0;
  p.dimension = 1;
  p.eta = {0.0};
  p.rhs = [](double, const Vec&, Vec& dy) { dy[0] = 0.0; };
  p.exact = [](double) { return Vec{0.0}; };
  return p;
}

std::vector<int> doubling_sizes() {
  std::vector<int> sizes;
  for (int k = 0; k < 8; ++k) sizes.push_back(100 << k);
  return sizes;
}

// ---------------------------------------------------------------------------

void criterion1() {
  // The scheme applied to dz = -z on [0, 1] must reproduce the closed
  // per-step product eta * prod_j (tau_j (h lambda)^2 + h lambda + 1) at
  // every node, across mesh sizes and seeds, in under a second.
  constexpr double kRelTol = 1e-12;
  Timer timer;
  const IVProblem p = make_problem("linear");  // lambda = -1, [0,1], eta = 1
  double worst = 0.0;
  for (const int n : {10, 100, 1000}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Trajectory traj =
          rrk2_trajectory(p, n, NoiseSpec{}, RngStream(seed, 0));
      const double z = traj.mesh.h() * -1.0;
      double v = 1.0;
      for (int j = 0; j < n; ++j) {
        v *= traj.taus[j] * z * z + z + 1.0;
        const double rel =
            std::fabs(traj.states[j + 1][0] - v) / std::fabs(v);
        if (rel > worst) worst = rel;
      }
    }
  }
  const double t = timer.seconds();
  report(1, "closed-form linear recurrence", worst <= kRelTol && t < 1.0,
         "max rel err " + fmt(worst) + ", " + fmt(t) + " s");
}

void criterion2() {
  // Epidemic benchmark, exact oracle: terminal L2 error must decay like
  // n^{-3/2} (slope within [-1.65, -1.35]).
  Timer timer;
  const IVProblem p = make_problem("sir");
  const ConvergenceTable table = convergence_study(
      p, Scheme::rrk2, doubling_sizes(), NoiseKind::none,
      DeltaPolicy::constant(0.0), 2.0, 500, ErrorMode::terminal, 1);
  const bool ok = table.slope_defined && table.slope >= -1.65 &&
                  table.slope <= -1.35;
  report(2, "three-halves order on the epidemic benchmark", ok,
         "slope " + fmt(table.slope) + ", " + fmt(timer.seconds()) + " s");
}

void criterion3() {
  // Oscillatory problem with limited time regularity: the convergence order
  // tracks the regularity exponent (rho + 1/2), never falling below it.
  Timer timer;
  ProblemOptions opts;
  opts.gamma = 2.0;  // rho = 1/2, expected order >= 1
  const ConvergenceTable rough = convergence_study(
      make_problem("example1", opts), Scheme::rrk2, doubling_sizes(),
      NoiseKind::none, DeltaPolicy::constant(0.0), 2.0, 500,
      ErrorMode::terminal, 2);
  opts.gamma = 10.0;  // rho = 1/10, expected order >= 0.6
  const ConvergenceTable rougher = convergence_study(
      make_problem("example1", opts), Scheme::rrk2, doubling_sizes(),
      NoiseKind::none, DeltaPolicy::constant(0.0), 2.0, 500,
      ErrorMode::terminal, 2);
  const bool ok = rough.slope_defined && rough.slope <= -0.95 &&
                  rougher.slope_defined && rougher.slope <= -0.55;
  report(3, "order under reduced time regularity", ok,
         "slopes " + fmt(rough.slope) + " / " + fmt(rougher.slope) + ", " +
             fmt(timer.seconds()) + " s");
}

void criterion4() {
  // Noise response: with the level coupled to the mesh as delta = h^{3/2}
  // the error still decays at the three-halves rate and stays proportional
  // to delta (one constant, factor-3 band); at fixed n the worst-case error
  // scales linearly in delta (decade ratio inside [3, 30]).
  Timer timer;
  const IVProblem p = make_problem("sir");
  const ConvergenceTable table = convergence_study(
      p, Scheme::rrk2, doubling_sizes(), NoiseKind::const_plus,
      DeltaPolicy::power(1.5, 1.0), 2.0, 100, ErrorMode::terminal, 3);
  bool ok = table.slope_defined && table.slope >= -1.65 && table.slope <= -1.35;

  double log_mean = 0.0;
  for (const auto& row : table.rows)
    log_mean += std::log(row.value / row.delta);
  const double constant = std::exp(log_mean / table.rows.size());
  double band = 1.0;
  for (const auto& row : table.rows) {
    const double ratio = row.value / row.delta / constant;
    band = std::max(band, std::max(ratio, 1.0 / ratio));
  }
  ok = ok && band <= 3.0;

  const ErrorEstimate lo =
      worst_case_error(p, Scheme::rrk2, 10000, 1e-3,
                       WorstCaseProtocol::const_pair, 2.0, 50,
                       ErrorMode::terminal, 3);
  const ErrorEstimate hi =
      worst_case_error(p, Scheme::rrk2, 10000, 1e-2,
                       WorstCaseProtocol::const_pair, 2.0, 50,
                       ErrorMode::terminal, 3);
  const double decade = hi.value / lo.value;
  ok = ok && decade >= 3.0 && decade <= 30.0;
  report(4, "error tracks the noise level", ok,
         "slope " + fmt(table.slope) + ", band x" + fmt(band) + ", decade x" +
             fmt(decade) + ", " + fmt(timer.seconds()) + " s");
}

void criterion5() {
  // The zero right-hand side is the worst-case witness: constant noise
  // integrates to exactly (b - a) * delta.
  constexpr double kTol = 1e-12;
  Timer timer;
  const IVProblem p = zero_field();
  bool ok = true;
  double worst = 0.0;
  for (const double delta : {0.25, 1e-3}) {
    const ErrorEstimate est =
        worst_case_error(p, Scheme::rrk2, 16, delta,
                         WorstCaseProtocol::const_pair, 2.0, 4,
                         ErrorMode::terminal, 4);
    const double diff = std::fabs(est.value - 2.0 * delta);
    worst = std::max(worst, diff);
    ok = ok && diff <= kTol;
  }
  report(5, "zero-field noise floor is exact", ok,
         "max |err - (b-a)d| " + fmt(worst) + ", " + fmt(timer.seconds()) +
             " s");
}

void criterion6() {
  // Perturbation boundedness: coupled clean/noisy runs sharing one tau
  // stream respond linearly in delta (ratio constant to 1%) with a constant
  // that does not drift with the mesh (10% across a decade of n).
  Timer timer;
  const IVProblem p = make_problem("sir");
  double ratio[2][2];
  const int ns[2] = {1000, 10000};
  const double deltas[2] = {1e-3, 1e-6};
  for (int i = 0; i < 2; ++i) {
    const Trajectory clean =
        rrk2_trajectory(p, ns[i], NoiseSpec{}, RngStream(6, 0));
    for (int j = 0; j < 2; ++j) {
      NoiseSpec noise;
      noise.kind = NoiseKind::const_plus;
      noise.delta = deltas[j];
      const Trajectory noisy =
          rrk2_trajectory(p, ns[i], noise, RngStream(6, 0));
      double maxdiff = 0.0;
      for (std::size_t k = 0; k < clean.states.size(); ++k) {
        double d = 0.0;
        for (int c = 0; c < 3; ++c)
          d += std::fabs(noisy.states[k][c] - clean.states[k][c]);
        maxdiff = std::max(maxdiff, d);
      }
      ratio[i][j] = maxdiff / deltas[j];
    }
  }
  bool ok = true;
  for (int i = 0; i < 2; ++i)
    ok = ok && std::fabs(ratio[i][0] / ratio[i][1] - 1.0) <= 0.01;
  for (int j = 0; j < 2; ++j)
    ok = ok && std::fabs(ratio[0][j] / ratio[1][j] - 1.0) <= 0.10;
  report(6, "linear perturbation response, mesh independent", ok,
         "maxdiff/delta " + fmt(ratio[0][0]) + " / " + fmt(ratio[1][0]) +
             ", " + fmt(timer.seconds()) + " s");
}

void criterion7() {
  const bool exact = F_value(0.0, 0.0) == 0.0 && F_value(-1.0, 0.0) == -1.0 &&
                     F_value(-0.5, std::sqrt(3.0) / 2.0) == -1.0 &&
                     F_value(-0.5, -std::sqrt(3.0) / 2.0) == -1.0;
  const double d2 = std::fabs(F_value(-2.0, 0.0) - (0.75 * std::log(3.0) - 1.0));
  report(7, "special values of the stability functional",
         exact && d2 <= 1e-12, "corner diff " + fmt(d2));
}

void criterion8() {
  // The closed forms and blind quadrature must agree on a large generic
  // sample, and the second-moment formula must match simulation.
  Timer timer;
  RngStream s(2718, 0);
  double worst = 0.0;
  int tested = 0;
  while (tested < 10000) {
    const double a = -3.0 + 4.0 * s.next_u01();
    const double b = -3.0 + 6.0 * s.next_u01();
    const double resid = a * a + b * b + 2.0 * a;
    if (std::fabs(b) < 1e-5 || std::fabs(resid) < 1e-5) continue;
    worst = std::max(worst, std::fabs(F_value(a, b) - F_quadrature(a, b)));
    ++tested;
  }
  bool ok = worst < 1e-8;

  double worst_sigmas = 0.0;
  RngStream zs(3141, 0);
  for (int k = 0; k < 100; ++k) {
    const double a = -3.0 + 4.0 * zs.next_u01();
    const double b = -3.0 + 6.0 * zs.next_u01();
    RngStream draw(3141, 1 + k);
    constexpr int N = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < N; ++i) {
      const double fsq = std::norm(p_eval({a, b}, draw.next_u01()));
      sum += fsq;
      sumsq += fsq * fsq;
    }
    const double mean = sum / N;
    const double sigma = std::sqrt(std::max(0.0, sumsq / N - mean * mean));
    const double sigmas = std::fabs(ms_moment({a, b}) - mean) /
                          (sigma / std::sqrt(static_cast<double>(N)));
    worst_sigmas = std::max(worst_sigmas, sigmas);
    if (sigmas >= 5.0) ok = false;
  }
  report(8, "closed forms agree with quadrature and simulation", ok,
         "max |F diff| " + fmt(worst) + ", worst z-score " + fmt(worst_sigmas) +
             ", " + fmt(timer.seconds()) + " s");
}

void criterion9() {
  const auto [x0, ms_hi] = interval_endpoints(RegionKind::ms);
  const double cubic = x0 * x0 * x0 + 3.0 * x0 * x0 + 6.0 * x0 + 6.0;
  const double c = std::cbrt(std::sqrt(2.0) - 1.0);
  const double formula = -1.0 - 1.0 / c + c;
  const auto [xas, as_hi] = interval_endpoints(RegionKind::as);
  const bool ok = interval_endpoints(RegionKind::mid) == std::pair{-2.0, 0.0} &&
                  ms_hi == 0.0 && std::fabs(cubic) <= 1e-12 &&
                  std::fabs(x0 - formula) <= 1e-14 && as_hi == 0.0 &&
                  std::fabs(F_value(xas, 0.0)) <= 1e-10 &&
                  xas >= -std::sqrt(2.0 * std::exp(1.0)) && xas <= -2.0;
  report(9, "real-axis interval endpoints", ok,
         "x0 " + fmt(x0) + " (cubic " + fmt(cubic) + "), x_as " + fmt(xas));
}

void criterion10() {
  Timer timer;
  const AreaEstimate ms = region_area(RegionKind::ms, 1000);
  const AreaEstimate as = region_area(RegionKind::as, 1000);
  const AreaEstimate mid = region_area(RegionKind::mid, 1000);
  const double t = timer.seconds();
  const bool ok = std::fabs(ms.area - 3.92) <= 0.05 &&
                  std::fabs(as.area - 5.38) <= 0.05 &&
                  std::fabs(mid.area - 5.87) <= 0.05 &&
                  ms.area <= as.area && as.area <= mid.area && t < 120.0;
  report(10, "region areas at one-millipixel resolution", ok,
         fmt(ms.area) + " / " + fmt(as.area) + " / " + fmt(mid.area) + ", " +
             fmt(t) + " s");
}

void criterion11() {
  Timer timer;
  int violations = 0;

  // Inclusion chain on quasi-random points of the enclosing box.
  for (int k = 0; k < 100000; ++k) {
    const double a = -3.3 + 3.8 * halton(k, 2);
    const double b = -3.3 + 6.6 * halton(k, 3);
    const double pm = phi_ms({a, b});
    const double pd = phi_mid({a, b});
    const double F = F_value(a, b);
    const double mod = std::hypot(a, b);
    if (pm < 0.0 && !(pd < 0.0)) ++violations;
    if (pd < 0.0 && !(a < 0.0 && mod < 1.0 + std::sqrt(5.0))) ++violations;
    if (pm < 0.0 && !(F < 0.0)) ++violations;
    if (F < 0.0 && !(a < 0.0)) ++violations;
  }

  // Real-axis intervals, sampled strictly inside / outside.
  const double x0 = interval_endpoints(RegionKind::ms).first;
  for (int k = 0; k < 1000; ++k) {
    const double u = (k + 0.5) / 1000.0;
    if (!(phi_ms({x0 * (1.0 - u), 0.0}) < 0.0)) ++violations;
    const double xm = -2.0 * (1.0 - u);
    if (!(phi_mid({xm, 0.0}) < 0.0)) ++violations;
    if (!(F_value(xm, 0.0) < 0.0)) ++violations;
    const double far = -std::sqrt(2.0 * std::exp(1.0)) - 2.7 * u;
    if (!(F_value(far, 0.0) >= 0.0)) ++violations;
  }
  if (!(F_value(-2.0, 0.0) < 0.0)) ++violations;  // closed left end

  // Mirror symmetry, exact as computed.
  RngStream sym(8, 0);
  for (int k = 0; k < 1000; ++k) {
    const double a = -4.0 + 5.0 * sym.next_u01();
    const double b = 4.0 * sym.next_u01();
    if (F_value(a, b) != F_value(a, -b)) ++violations;
    if (phi_ms({a, b}) != phi_ms({a, -b})) ++violations;
    if (phi_mid({a, b}) != phi_mid({a, -b})) ++violations;
  }

  // Pointwise sign properties of the quadratic form.
  RngStream fs(9, 0);
  for (int k = 0; k < 1000000; ++k) {
    const double a = -4.0 + 5.0 * fs.next_u01();
    const double b = -4.0 + 8.0 * fs.next_u01();
    if (!(f_ab(a, b, fs.next_u01()) >= 0.0)) ++violations;
    if (!(discriminant(a, b) <= 0.0)) ++violations;
  }

  // Continuity at the exact special points and across the dispatch loci.
  const double specials[3][3] = {
      {0.0, 0.0, 0.0}, {-1.0, 0.0, -1.0}, {-0.5, std::sqrt(3.0) / 2.0, -1.0}};
  for (const auto& sp : specials) {
    for (int k = 0; k < 64; ++k) {
      const double ang = 2.0 * std::numbers::pi_v<double> * k / 64.0;
      const double v =
          F_value(sp[0] + 1e-4 * std::cos(ang), sp[1] + 1e-4 * std::sin(ang));
      if (!(std::fabs(v - sp[2]) < 1e-2)) ++violations;
    }
  }
  RngStream cs(10, 0);
  for (int k = 0; k < 1000; ++k) {
    const double a = -3.3 + 3.8 * cs.next_u01();
    if (!(std::fabs(F_value(a, 0.9e-6) - F_value(a, 0.0)) < 1e-4))
      ++violations;
    const double ac = -2.0 + 2.0 * cs.next_u01();
    const double bc = std::sqrt(std::max(0.0, -ac * ac - 2.0 * ac));
    const double on = F_value(ac, bc);
    if (!(std::fabs(F_value(ac, bc + 0.9e-6) - on) < 1e-4)) ++violations;
    if (bc > 1e-3 &&
        !(std::fabs(F_value(ac, bc - 0.9e-6) - on) < 1e-4))
      ++violations;
  }

  report(11, "region inclusion and continuity property sweep", violations == 0,
         std::to_string(violations) + " violations, " + fmt(timer.seconds()) +
             " s");
}

void criterion12() {
  Timer timer;
  const ComplexPoint zs[] = {
      {-1.0, 0.0}, {-2.0, 0.0}, {-2.5, 0.0}, {-0.5, 0.5}, {0.5, 0.0}};
  const RegionKind kinds[] = {RegionKind::ms, RegionKind::as, RegionKind::sp,
                              RegionKind::mid};
  int disagreements = 0, checked = 0;
  for (const RegionKind kind : kinds) {
    for (const ComplexPoint z : zs) {
      if (kind == RegionKind::mid && z.a == -2.0 && z.b == 0.0)
        continue;  // |p(1/2)| = 1 exactly: boundary point, no verdict possible
      const StabilityVerdict v = mc_verify(z, kind, 2000, 200, 12);
      ++checked;
      if (v.outcome != StabilityVerdict::Outcome::agree) ++disagreements;
    }
  }
  report(12, "simulated paths confirm closed-form membership",
         disagreements == 0 && checked == 19,
         std::to_string(checked) + " verdicts, " +
             std::to_string(disagreements) + " disagreements, " +
             fmt(timer.seconds()) + " s");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  std::printf("%d of 12 criteria passed\n", 12 - failures);
  return failures;
}

#include "randrk/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "randrk/parallel.hpp"
#include "randrk/quadrature.hpp"
#include "randrk/rng.hpp"

namespace randrk {

namespace {

constexpr double kTinyFloor = std::numeric_limits<double>::min();

// Coefficients of f_{a,b}(t) = A t^2 + B t + C.
struct FQuadratic {
  double A, B, C;
};

FQuadratic f_coeffs(double a, double b) {
  const double s = a * a + b * b;
  return {s * s, 2.0 * (a * a + a * a * a + a * b * b - b * b),
          (a + 1.0) * (a + 1.0) + b * b};
}

double circle_residual(double a, double b) { return a * a + b * b + 2.0 * a; }

// G(x) = int_0^x (ln u)^2 du = x ((ln x)^2 - 2 ln x + 2), G(0) = 0.
double G(double x) {
  if (x <= 0.0) return 0.0;
  const double lx = std::log(x);
  return x * (lx * lx - 2.0 * lx + 2.0);
}

// F on the axis b = 0, a not in {0, -1}: the quadratic factors over the reals.
double F_axis(double a) {
  const double q = a * a + a + 1.0;  // > 0 for all real a
  const double w = a + 1.0;
  const double qa = a * (1.0 + a);  // q - 1, conditioning for small |a|
  const double lnq = std::fabs(qa) < 0.5 ? std::log1p(qa) : std::log(q);
  const double lnw = std::fabs(a) < 0.5 ? std::log1p(a) : std::log(std::fabs(w));
  return (q * lnq - w * lnw) / (a * a) - 1.0;
}

// F on the circle b^2 = -a^2 - 2a, a in (-2, 0), a != -1/2.
double F_circle(double a) {
  const double u = 2.0 * a + 1.0;
  return (u / (2.0 * a)) * std::log(std::fabs(u)) - 1.0;
}

// F at a generic point (b > 0, off both loci).  The arctangent scale is
// computed from sqrt(Q)/A = |b (a^2 + b^2 + 2a)| / (a^2 + b^2)^2, which is
// free of the cancellation in Q = A C - B^2/4 itself.
double F_general(double a, double b) {
  const auto [A, B, C] = f_coeffs(a, b);
  const double P = -B / (2.0 * A);
  const double r = std::fabs(b * circle_residual(a, b));
  const double X = A / r;  // sqrt(A / Q)
  const double abc = A + B + C;
  return 0.5 * ((1.0 - P) * std::log(abc) + P * std::log(C)) - 1.0 +
         (r / A) * (std::atan((1.0 - P) * X) - std::atan(-P * X));
}

double log_f(double a, double b, double t) {
  // |t z^2 + z + 1|^2 evaluated from real and imaginary parts; better
  // conditioned near the roots than the expanded quadratic.
  const double re = t * (a * a - b * b) + a + 1.0;
  const double im = t * (2.0 * a * b) + b;
  const double f = re * re + im * im;
  return std::log(std::max(f, kTinyFloor));
}

// Integrates g over [0,1] splitting at the parabola vertex when it lies
// inside; for use when f has no root in [0,1].  When f nearly vanishes at
// the vertex the integrand spikes there and plain bisection stalls (each
// level halves the panel tolerance as fast as the error shrinks), so both
// sides are handled with the geometric endpoint refinement instead.
double integrate_smooth01(const Integrand& g, double a, double b,
                          double abs_tol) {
  const auto [A, B, C] = f_coeffs(a, b);
  (void)C;
  if (A > 0.0) {
    const double P = std::clamp(-B / (2.0 * A), 0.0, 1.0);
    if (f_ab(a, b, P) < 1e-3) {
      double total = 0.0;
      if (P > 0.0)
        total += integrate_endpoint_singular(g, 0.0, P, false, 0.5 * abs_tol);
      if (P < 1.0)
        total += integrate_endpoint_singular(g, P, 1.0, true, 0.5 * abs_tol);
      return total;
    }
    if (P > 0.0 && P < 1.0)
      return integrate(g, 0.0, P, 0.5 * abs_tol) +
             integrate(g, P, 1.0, 0.5 * abs_tol);
  }
  return integrate(g, 0.0, 1.0, abs_tol);
}

double F_eval(double x, double y) { return F_value(x, y); }

double grid_value(RegionKind kind, double x, double y) {
  switch (kind) {
    case RegionKind::ms:
      return phi_ms({x, y});
    case RegionKind::mid:
      return phi_mid({x, y});
    case RegionKind::as:
    case RegionKind::sp:
      return F_eval(x, y);
  }
  return 0.0;
}

double logsumexp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

}  // namespace

std::complex<double> p_eval(ComplexPoint z, double tau) {
  const std::complex<double> zc(z.a, z.b);
  return tau * zc * zc + zc + 1.0;
}

double ms_moment(ComplexPoint z) {
  const double s = z.a * z.a + z.b * z.b;
  return 1.0 + 2.0 * z.a * (1.0 + 0.5 * s) + 2.0 * z.a * z.a + s * s / 3.0;
}

double phi_ms(ComplexPoint z) { return ms_moment(z) - 1.0; }

double phi_mid(ComplexPoint z) {
  const double s = z.a * z.a + z.b * z.b;
  return 2.0 * z.a * (1.0 + 0.5 * s) + 2.0 * z.a * z.a + s * s / 4.0;
}

double f_ab(double a, double b, double t) {
  const auto [A, B, C] = f_coeffs(a, b);
  return std::max((A * t + B) * t + C, 0.0);  // squared modulus, >= 0
}

double discriminant(double a, double b) {
  const double r = circle_residual(a, b);
  return -4.0 * b * b * r * r;
}

SingularCase singular_case(double a, double b) {
  if (b == 0.0) {
    if (a <= -1.0) return SingularCase::case1;
    return SingularCase::off_unit_special;
  }
  const double s = a * a + b * b;
  const double resid = circle_residual(a, b);
  if (std::fabs(resid) <= 1e-12 * std::max(1.0, s)) {
    if (a <= -0.5) return SingularCase::case2;
    return SingularCase::off_unit_special;
  }
  return SingularCase::regular;
}

double F_value(double a, double b) {
  const double bb = std::fabs(b);
  if (a == 0.0 && bb == 0.0) return 0.0;
  if (bb == 0.0) {
    if (a == -1.0) return -1.0;
    return F_axis(a);
  }
  const double s = a * a + bb * bb;
  const double resid = circle_residual(a, bb);
  if (std::fabs(resid) <= 1e-12 * std::max(1.0, s)) {
    if (std::fabs(2.0 * a + 1.0) <= 1e-12) return -1.0;  // (-1/2, +-sqrt(3)/2)
    return F_circle(a);
  }
  if (bb < 1e-6 || std::fabs(resid) < 1e-6) return F_quadrature(a, bb);
  return F_general(a, bb);
}

double F_quadrature(double a, double b) {
  const double bb = std::fabs(b);
  const Integrand lnf = [a, bb](double t) { return log_f(a, bb, t); };
  const SingularCase sc = singular_case(a, bb);
  double integral = 0.0;
  if (sc == SingularCase::case1 || sc == SingularCase::case2) {
    double t0 = sc == SingularCase::case1 ? -(a + 1.0) / (a * a) : -1.0 / (2.0 * a);
    t0 = std::clamp(t0, 0.0, 1.0);
    if (t0 > 0.0)
      integral += integrate_endpoint_singular(lnf, 0.0, t0, false, 1e-10);
    if (t0 < 1.0)
      integral += integrate_endpoint_singular(lnf, t0, 1.0, true, 1e-10);
  } else {
    integral = integrate_smooth01(lnf, a, bb, 2e-10);
  }
  return 0.5 * integral;
}

double ln_moment2(double a, double b) {
  const double bb = std::fabs(b);
  if (a == 0.0 && bb == 0.0) return 0.0;
  switch (singular_case(a, bb)) {
    case SingularCase::case1:
      return 4.0 / (a * a) * (G(-a - 1.0) + G(a * a + a + 1.0));
    case SingularCase::case2:
      return -2.0 / a * (G(1.0) + G(-2.0 * a - 1.0));
    default:
      break;
  }
  const Integrand sq = [a, bb](double t) {
    const double L = log_f(a, bb, t);
    return L * L;
  };
  return integrate_smooth01(sq, a, bb, 1e-10);
}

bool in_region(ComplexPoint z, RegionKind kind) {
  return grid_value(kind, z.a, z.b) < 0.0;
}

std::pair<double, double> interval_endpoints(RegionKind kind) {
  switch (kind) {
    case RegionKind::ms: {
      const double c = std::cbrt(std::numbers::sqrt2 - 1.0);
      return {-1.0 - 1.0 / c + c, 0.0};
    }
    case RegionKind::mid:
      return {-2.0, 0.0};
    case RegionKind::as:
    case RegionKind::sp: {
      double lo = -std::sqrt(2.0 * std::numbers::e);
      double hi = -2.0;
      if (!(F_value(lo, 0.0) > 0.0) || !(F_value(hi, 0.0) < 0.0))
        throw std::logic_error("interval_endpoints: bisection bracket failed");
      for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (F_value(mid, 0.0) < 0.0 ? hi : lo) = mid;
      }
      return {0.5 * (lo + hi), 0.0};
    }
  }
  throw std::invalid_argument("interval_endpoints: unknown kind");
}

RegionGrid region_grid(RegionKind kind, const RegionBox& box, int nx, int ny,
                       int threads) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("region_grid: nx, ny must be >= 2");
  if (!(box.xmax > box.xmin) || !(box.ymax > box.ymin))
    throw std::invalid_argument("region_grid: degenerate box");
  RegionGrid grid;
  grid.kind = kind;
  grid.box = box;
  grid.nx = nx;
  grid.ny = ny;
  grid.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  grid.member.assign(static_cast<std::size_t>(nx) * ny, false);

  const double dx = (box.xmax - box.xmin) / nx;
  const double dy = (box.ymax - box.ymin) / ny;
  const bool mirror = box.ymin == -box.ymax && ny % 2 == 0;
  const int row0 = mirror ? ny / 2 : 0;
  const int nrows = ny - row0;

  parallel_for(static_cast<std::size_t>(nrows), threads, [&](std::size_t idx) {
    const int j = row0 + static_cast<int>(idx);
    const double y = box.ymin + (j + 0.5) * dy;
    double* row = grid.values.data() + static_cast<std::size_t>(j) * nx;
    for (int i = 0; i < nx; ++i)
      row[i] = grid_value(kind, box.xmin + (i + 0.5) * dx, y);
  });

  if (mirror) {
    for (int j = 0; j < row0; ++j) {
      const double* src = grid.values.data() + static_cast<std::size_t>(ny - 1 - j) * nx;
      double* dst = grid.values.data() + static_cast<std::size_t>(j) * nx;
      std::copy(src, src + nx, dst);
    }
  }

  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    const double v = grid.values[k];
    if (!std::isfinite(v)) {
      ++grid.singular_pixels;
      grid.member[k] = true;
    } else {
      grid.member[k] = v < 0.0;
    }
  }
  return grid;
}

AreaEstimate region_area(RegionKind kind, int resolution, int threads) {
  if (resolution < 100)
    throw std::invalid_argument("region_area: resolution must be >= 100");
  const double H = 1.0 + std::sqrt(5.0);
  const double px = 1.0 / resolution;
  const int ncols = static_cast<int>(std::ceil(H * resolution));
  const int nrows = ncols;  // upper half y in (0, ~H], lower half by symmetry

  std::vector<std::uint8_t> memb(static_cast<std::size_t>(ncols) * nrows, 0);
  parallel_for(static_cast<std::size_t>(nrows), threads, [&](std::size_t j) {
    const double y = (static_cast<double>(j) + 0.5) * px;
    std::uint8_t* row = memb.data() + j * ncols;
    for (int i = 0; i < ncols; ++i) {
      const double x = -(i + 0.5) * px;
      const double v = grid_value(kind, x, y);
      row[i] = !std::isfinite(v) || v < 0.0;
    }
  });

  std::size_t count = 0;
  for (std::uint8_t m : memb) count += m;

  auto at = [&](int i, int j) -> bool {
    if (i < 0 || i >= ncols) return false;       // beyond x = 0 or x = -H
    if (j >= nrows) return false;                // beyond y = H
    if (j < 0) j = 0;                            // mirror row across the axis
    return memb[static_cast<std::size_t>(j) * ncols + i] != 0;
  };
  std::size_t boundary = 0;
  for (int j = 0; j < nrows; ++j)
    for (int i = 0; i < ncols; ++i) {
      const bool m = at(i, j);
      if (m != at(i - 1, j) || m != at(i + 1, j) || m != at(i, j - 1) ||
          m != at(i, j + 1))
        ++boundary;
    }

  AreaEstimate est;
  est.kind = kind;
  est.resolution = resolution;
  est.area = 2.0 * static_cast<double>(count) * px * px;
  est.uncertainty = static_cast<double>(boundary) * px * px;  // half of both halves
  return est;
}

StabilityVerdict mc_verify(ComplexPoint z, RegionKind kind, int k_max, int reps,
                           std::uint64_t seed) {
  if (k_max < 1 || reps < 1)
    throw std::invalid_argument("mc_verify: k_max and reps must be >= 1");

  StabilityVerdict v;
  v.z = z;
  v.kind = kind;
  v.member = in_region(z, kind);

  if (kind == RegionKind::mid) {
    v.drift = std::log(std::abs(p_eval(z, 0.5)));
    v.ci_low = v.ci_high = v.trend = v.drift;
  } else {
    const int k_half = k_max / 2;
    std::vector<double> halfs(reps, 0.0), fulls(reps, 0.0);
    double sum_ln = 0.0, sum_sq = 0.0, sum_sq2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      RngStream stream(seed, static_cast<std::uint64_t>(r));
      double logv = 0.0;
      for (int j = 1; j <= k_max; ++j) {
        const double tau = stream.next_u01();
        const double fsq = std::norm(p_eval(z, tau));
        const double lnf = std::log(std::max(fsq, kTinyFloor));
        sum_ln += 0.5 * lnf;
        sum_sq += fsq;
        sum_sq2 += fsq * fsq;
        logv += 0.5 * lnf;
        if (j == k_half) halfs[r] = logv;
      }
      fulls[r] = logv;
    }
    const double N = static_cast<double>(k_max) * reps;
    const int dk = k_max - k_half;
    if (kind == RegionKind::ms) {
      const double m = sum_sq / N;
      v.drift = m - 1.0;
      const double var = std::max(0.0, sum_sq2 / N - m * m);
      const double se = std::sqrt(var / N);
      v.ci_low = v.drift - 3.0 * se;
      v.ci_high = v.drift + 3.0 * se;
      // log of the path-mean squared-magnitude growth per step (second half).
      std::vector<double> h2(reps), f2(reps);
      for (int r = 0; r < reps; ++r) {
        h2[r] = 2.0 * halfs[r];
        f2[r] = 2.0 * fulls[r];
      }
      v.trend = (logsumexp(f2) - logsumexp(h2)) / dk;
    } else {
      v.drift = sum_ln / N;
      const double second = 0.25 * ln_moment2(z.a, z.b);
      const double F = F_value(z.a, z.b);
      const double var = std::max(0.0, second - F * F);
      const double se = std::sqrt(var / N);
      v.ci_low = v.drift - 3.0 * se;
      v.ci_high = v.drift + 3.0 * se;
      double t = 0.0;
      for (int r = 0; r < reps; ++r) t += (fulls[r] - halfs[r]) / dk;
      v.trend = t / reps;
    }
  }

  if (v.ci_high < 0.0)
    v.outcome = v.member ? StabilityVerdict::Outcome::agree
                         : StabilityVerdict::Outcome::disagree;
  else if (v.ci_low > 0.0)
    v.outcome = v.member ? StabilityVerdict::Outcome::disagree
                         : StabilityVerdict::Outcome::agree;
  else
    v.outcome = StabilityVerdict::Outcome::inconclusive;
  return v;
}

}  // namespace randrk

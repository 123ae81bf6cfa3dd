#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace randrk {

/// Point z = a + bi of the complex step-scaled spectrum (z = h * lambda).
struct ComplexPoint {
  double a = 0.0;
  double b = 0.0;
};

/// Stability notions for the randomized two-stage scheme on z' = lambda z:
///   ms  - mean-square:    E|p1(z)|^2 < 1
///   as  - asymptotic:     E ln|p1(z)| < 0 (almost-sure decay)
///   sp  - in-probability: identical set to as
///   mid - deterministic midpoint reference: |z^2/2 + z + 1| < 1
enum class RegionKind { ms, as, sp, mid };

/// One-step amplification polynomial p(z) = tau z^2 + z + 1.
std::complex<double> p_eval(ComplexPoint z, double tau);

/// E|p1(z)|^2 = 1 + 2Re(z)(1 + |z|^2/2) + 2(Re z)^2 + |z|^4/3.
double ms_moment(ComplexPoint z);

/// Region indicator functionals; membership is value < 0.
double phi_ms(ComplexPoint z);
double phi_mid(ComplexPoint z);

/// f_{a,b}(t) = |t(a+bi)^2 + (a+bi) + 1|^2 as a real quadratic in t.
double f_ab(double a, double b, double t);

/// Discriminant of f_{a,b}: -4 b^2 (2a + a^2 + b^2)^2, always <= 0.
double discriminant(double a, double b);

/// Where ln f_{a,b} has an integrable singularity on [0,1]:
///   case1: b = 0 and a <= -1 (root t0 = -(a+1)/a^2 in [0, 1/4])
///   case2: b^2 = -a^2 - 2a and a in (-2, -1/2] (root t0 = -1/(2a) in [0,1])
///   off_unit_special: on one of the two loci but the root lies outside [0,1]
///   regular: everywhere else
enum class SingularCase { regular, case1, case2, off_unit_special };
SingularCase singular_case(double a, double b);

/// F(a, b) = (1/2) E ln f_{a,b}(tau), tau uniform on [0,1].  Total and
/// continuous on the plane; asymptotic stability of z = a + bi is F < 0.
/// Evaluated by closed forms away from the singular loci of the general
/// formula (axis b = 0 and circle b^2 = -a^2 - 2a), by exact special values
/// at (0,0), (-1,0), (-1/2, +-sqrt(3)/2), and by adaptive quadrature within
/// distance-like tolerance 1e-6 of the loci where the general closed form
/// loses precision.  Symmetric: F(a, b) = F(a, -b).
double F_value(double a, double b);

/// Same quantity by adaptive quadrature of (1/2) ln f_{a,b} over [0,1] to
/// absolute tolerance 1e-10, splitting at the root of f when one exists in
/// [0,1]; independent of the closed forms (mutual oracle).  Throws
/// QuadratureError when the tolerance cannot be certified.
double F_quadrature(double a, double b);

/// E (ln f_{a,b}(tau))^2, always finite.  Closed G-function forms on the two
/// singular loci, adaptive quadrature elsewhere.
double ln_moment2(double a, double b);

/// Strict membership (boundary points, indicator exactly 0, are outside).
bool in_region(ComplexPoint z, RegionKind kind);

/// Real-axis stability interval (left, right):
///   ms:  (x0, 0) with x0 = -1 - (sqrt(2)-1)^{-1/3} + (sqrt(2)-1)^{1/3}
///   mid: (-2, 0)
///   as/sp: (x_as, 0), x_as located by bisection of F(., 0) on
///          [-sqrt(2e), -2]; throws std::logic_error if the bracket fails.
std::pair<double, double> interval_endpoints(RegionKind kind);

struct RegionBox {
  double xmin, xmax, ymin, ymax;
};

/// Raster of the indicator functional at pixel centers.  values is row-major
/// with y ascending in the outer index and x ascending inner.  For boxes
/// symmetric about the real axis only the upper half is evaluated and
/// mirrored.  Non-finite values (none occur for the implemented functionals,
/// kept defensively) are flagged, counted, and classified as members.
struct RegionGrid {
  RegionKind kind = RegionKind::ms;
  RegionBox box{};
  int nx = 0;
  int ny = 0;
  std::vector<double> values;
  std::vector<bool> member;
  int singular_pixels = 0;
};

RegionGrid region_grid(RegionKind kind, const RegionBox& box, int nx, int ny,
                       int threads = 1);

/// Pixel-counting area over the enclosing box
/// [-(1+sqrt 5), 0] x [-(1+sqrt 5), 1+sqrt 5] at the given resolution
/// (pixels per unit, >= 100); uncertainty is half the total area of pixels
/// adjacent to the membership boundary.
struct AreaEstimate {
  RegionKind kind = RegionKind::ms;
  double area = 0.0;
  double uncertainty = 0.0;
  int resolution = 0;
};

AreaEstimate region_area(RegionKind kind, int resolution, int threads = 1);

/// Monte-Carlo cross-check of a membership verdict from simulated products
/// prod_j |p_j(z)| (eta = 1, reps independent paths of k_max steps, path
/// magnitudes kept in log space).
///
/// drift is the decisive statistic: for as/sp the sample mean of ln|p_1(z)|
/// over all k_max*reps draws; for ms the sample mean of |p_1(z)|^2 minus 1
/// (the per-step second-moment balance; the path-mean trend at feasible
/// sample sizes cannot witness moment growth carried by rare paths and is
/// reported in trend as evidence only); for mid the deterministic ln|p(1/2)|.
/// The confidence interval is drift +- 3 sigma / sqrt(N) with the as/sp
/// variance taken from the closed second moment (ln_moment2/4 - F^2) and the
/// ms variance from the sample.
struct StabilityVerdict {
  ComplexPoint z{};
  RegionKind kind = RegionKind::as;
  double drift = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double trend = 0.0;
  bool member = false;  // closed-form membership
  enum class Outcome { agree, disagree, inconclusive } outcome = Outcome::inconclusive;
};

StabilityVerdict mc_verify(ComplexPoint z, RegionKind kind, int k_max,
                           int reps, std::uint64_t seed);

}  // namespace randrk

#include "randrk/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace randrk {

namespace {

std::string fingerprint(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& [key, value] : kv) {
    if (!first) out << ',';
    out << key << '=' << value;
    first = false;
  }
  return out.str();
}

}  // namespace

double norm1(const Vec& v) {
  if (v.empty()) throw std::invalid_argument("norm1: empty vector");
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

namespace {

IVProblem make_example1(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("example1: gamma must be > 0");
  IVProblem p;
  p.name = "example1";
  p.params = fingerprint({{"gamma", gamma}});
  p.a = 0.0;
  p.b = 2.0;
  p.dimension = 1;
  p.eta = {-1.0};
  p.holder_rho = std::min(1.0, 1.0 / gamma);
  p.rhs = [gamma](double t, const Vec& y, Vec& dy) {
    const double u = std::max(2.0 - t, 0.0);  // clamp rounding past the endpoint
    const double z = y[0];
    dy[0] = 1.0 + z * std::cos(10.0 * std::pow(u, 1.0 / gamma) *
                               std::pow(std::fabs(z), 1.5));
  };
  return p;
}

IVProblem make_sir(const ProblemOptions& o) {
  if (o.sir_eta.size() != 3) throw std::invalid_argument("sir: initial state must have 3 components");
  if (!(o.beta > 0.0) || !(o.recovery > 0.0)) throw std::invalid_argument("sir: rates must be > 0");
  IVProblem p;
  p.name = "sir";
  p.params = fingerprint({{"beta", o.beta}, {"recovery", o.recovery}});
  p.a = 0.0;
  p.b = o.sir_t_end;
  p.dimension = 3;
  p.eta = o.sir_eta;
  p.holder_rho = 1.0;
  const double beta = o.beta;
  const double rec = o.recovery;
  p.rhs = [beta, rec](double, const Vec& y, Vec& dy) {
    const double infections = beta * y[0] * y[1];
    const double recoveries = rec * y[1];
    dy[0] = -infections;
    dy[1] = infections - recoveries;
    dy[2] = recoveries;
  };
  return p;
}

IVProblem make_linear(const ProblemOptions& o) {
  if (!std::isfinite(o.lambda)) throw std::invalid_argument("linear: lambda must be finite");
  if (o.linear_eta == 0.0) throw std::invalid_argument("linear: eta must be nonzero");
  IVProblem p;
  p.name = "linear";
  p.params = fingerprint({{"lambda", o.lambda}, {"eta", o.linear_eta}});
  p.a = 0.0;
  p.b = o.linear_t_end;
  p.dimension = 1;
  p.eta = {o.linear_eta};
  p.holder_rho = 1.0;
  const double lambda = o.lambda;
  p.rhs = [lambda](double, const Vec& y, Vec& dy) { dy[0] = lambda * y[0]; };
  const double eta = o.linear_eta;
  p.exact = [lambda, eta](double t) { return Vec{eta * std::exp(lambda * t)}; };
  return p;
}

}  // namespace

IVProblem make_problem(const std::string& name, const ProblemOptions& opts) {
  if (name == "example1") return make_example1(opts.gamma);
  if (name == "sir") return make_sir(opts);
  if (name == "linear") return make_linear(opts);
  throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

}  // namespace randrk

#include "randrk/reference.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace randrk {

namespace {

std::string cache_key(const IVProblem& p) {
  if (p.name.empty()) return {};
  std::ostringstream key;
  key.precision(17);
  key << p.name << '|' << p.params << '|' << p.a << '|' << p.b << '|' << p.dimension;
  for (double x : p.eta) key << '|' << x;
  return key.str();
}

}  // namespace

ReferenceSolution::ReferenceSolution(const IVProblem& problem)
    : problem_(problem), use_exact_(problem.exact.has_value()) {
  if (use_exact_) return;
  const std::size_t d = problem_.eta.size();
  const int n = kRefSteps;
  const double h = (problem_.b - problem_.a) / n;
  states_.resize(static_cast<std::size_t>(n + 1) * d);
  Vec y = problem_.eta;
  Vec k1(d), k2(d), k3(d), k4(d), tmp(d);
  for (std::size_t i = 0; i < d; ++i) states_[i] = y[i];
  for (int j = 0; j < n; ++j) {
    const double t = problem_.a + j * h;
    problem_.rhs(t, y, k1);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    problem_.rhs(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    problem_.rhs(t + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * k3[i];
    problem_.rhs(t + h, tmp, k4);
    for (std::size_t i = 0; i < d; ++i)
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    double* out = states_.data() + static_cast<std::size_t>(j + 1) * d;
    for (std::size_t i = 0; i < d; ++i) out[i] = y[i];
  }
}

Vec ReferenceSolution::operator()(double t) const {
  if (!(t >= problem_.a && t <= problem_.b))
    throw std::domain_error("reference_solution: t outside [a, b]");
  if (use_exact_) return (*problem_.exact)(t);

  const std::size_t d = problem_.eta.size();
  const int n = kRefSteps;
  const double h = (problem_.b - problem_.a) / n;
  auto node = [&](int j) { return states_.data() + static_cast<std::size_t>(j) * d; };

  if (t == problem_.b) return Vec(node(n), node(n) + d);
  int j = static_cast<int>(std::floor((t - problem_.a) / h));
  j = std::min(std::max(j, 0), n - 1);
  const double tj = problem_.a + j * h;
  if (t == tj) return Vec(node(j), node(j) + d);

  // Cubic Hermite on the reference step, derivatives from the field.
  const Vec y0(node(j), node(j) + d);
  const Vec y1(node(j + 1), node(j + 1) + d);
  Vec m0(d), m1(d);
  problem_.rhs(tj, y0, m0);
  problem_.rhs(tj + h, y1, m1);
  const double s = (t - tj) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  Vec out(d);
  for (std::size_t i = 0; i < d; ++i)
    out[i] = h00 * y0[i] + h10 * h * m0[i] + h01 * y1[i] + h11 * h * m1[i];
  return out;
}

std::shared_ptr<const ReferenceSolution> reference_for(const IVProblem& problem) {
  const std::string key = cache_key(problem);
  if (key.empty()) return std::make_shared<ReferenceSolution>(problem);

  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const ReferenceSolution>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto ref = std::make_shared<const ReferenceSolution>(problem);
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(ref));
  return it->second;
}

Vec reference_solution(const IVProblem& problem, double t) {
  return (*reference_for(problem))(t);
}

}  // namespace randrk

#include "randrk/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randrk {

namespace detail {

void add_noise(Vec& value, const NoiseSpec& spec, RngStream& stream) {
  if (spec.delta == 0.0) return;  // zero level consumes no draws
  switch (spec.kind) {
    case NoiseKind::none:
      return;
    case NoiseKind::const_plus:
      value[0] += spec.delta;
      return;
    case NoiseKind::const_minus:
      value[0] -= spec.delta;
      return;
    case NoiseKind::uniform: {
      const double bound = spec.delta / static_cast<double>(value.size());
      for (double& x : value) x += (2.0 * stream.next_u01() - 1.0) * bound;
      return;
    }
    case NoiseKind::relative: {
      if (value.size() != 1)
        throw std::invalid_argument("relative noise requires dimension 1");
      const double alpha =
          (2.0 * stream.next_u01() - 1.0) * spec.alpha_bound;
      const double p =
          std::clamp(spec.delta * alpha * value[0], -spec.delta, spec.delta);
      value[0] += p;
      return;
    }
  }
}

}  // namespace detail

Vec perturb(const Vec& value, const NoiseSpec& spec, RngStream& stream) {
  if (value.empty()) throw std::invalid_argument("perturb: empty vector");
  Vec out = value;
  detail::add_noise(out, spec, stream);
  return out;
}

Vec perturb_initial(const Vec& eta, const NoiseSpec& spec, RngStream& stream) {
  return perturb(eta, spec, stream);
}

}  // namespace randrk

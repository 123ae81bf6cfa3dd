// Python bindings for the randomized two-stage solver, the Monte-Carlo error
// harness, and the stability-region engine.  Enums travel as strings and
// results as plain dicts/lists so the module has no numpy dependency.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "randrk/csv.hpp"
#include "randrk/experiments.hpp"
#include "randrk/problem.hpp"
#include "randrk/reference.hpp"
#include "randrk/solver.hpp"
#include "randrk/stability.hpp"

namespace py = pybind11;

namespace {

using namespace randrk;

Scheme scheme_from(const std::string& s) {
  if (s == "rrk2") return Scheme::rrk2;
  if (s == "euler") return Scheme::euler;
  if (s == "midpoint") return Scheme::midpoint;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

NoiseKind noise_from(const std::string& s) {
  if (s == "none") return NoiseKind::none;
  if (s == "const+" || s == "const_plus") return NoiseKind::const_plus;
  if (s == "const-" || s == "const_minus") return NoiseKind::const_minus;
  if (s == "uniform") return NoiseKind::uniform;
  if (s == "relative") return NoiseKind::relative;
  throw std::invalid_argument("unknown noise kind '" + s + "'");
}

ErrorMode mode_from(const std::string& s) {
  if (s == "terminal") return ErrorMode::terminal;
  if (s == "uniform") return ErrorMode::uniform;
  throw std::invalid_argument("unknown error mode '" + s + "'");
}

RegionKind kind_from(const std::string& s) {
  if (s == "ms") return RegionKind::ms;
  if (s == "as") return RegionKind::as;
  if (s == "sp") return RegionKind::sp;
  if (s == "mid") return RegionKind::mid;
  throw std::invalid_argument("unknown region kind '" + s + "'");
}

NoiseSpec noise_spec(const std::string& kind, double delta) {
  NoiseSpec spec;
  spec.kind = noise_from(kind);
  spec.delta = delta;
  return spec;
}

py::dict estimate_dict(const ErrorEstimate& e) {
  py::dict d;
  d["n"] = e.n;
  d["h"] = e.h;
  d["delta"] = e.delta;
  d["p"] = e.p;
  d["mode"] = to_string(e.mode);
  d["value"] = e.value;
  d["reps"] = e.reps;
  return d;
}

py::dict trajectory_dict(const Trajectory& t) {
  py::list times, states;
  for (int j = 0; j <= t.mesh.n; ++j) {
    times.append(t.mesh.point(j));
    states.append(py::cast(t.states[j]));
  }
  py::dict d;
  d["times"] = times;
  d["states"] = states;
  d["taus"] = py::cast(t.taus);
  return d;
}

py::dict verdict_dict(const StabilityVerdict& v) {
  py::dict d;
  d["z"] = py::make_tuple(v.z.a, v.z.b);
  d["kind"] = to_string(v.kind);
  d["member"] = v.member;
  d["drift"] = v.drift;
  d["ci"] = py::make_tuple(v.ci_low, v.ci_high);
  d["trend"] = v.trend;
  switch (v.outcome) {
    case StabilityVerdict::Outcome::agree:
      d["outcome"] = "agree";
      break;
    case StabilityVerdict::Outcome::disagree:
      d["outcome"] = "disagree";
      break;
    case StabilityVerdict::Outcome::inconclusive:
      d["outcome"] = "inconclusive";
      break;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_randrk, m) {
  m.doc() =
      "Randomized two-stage one-step method for initial value problems under "
      "noisy right-hand-side information, with Monte-Carlo error estimation "
      "and stability-region computations.";

  py::class_<IVProblem>(m, "Problem", "Initial value problem handle.")
      .def_readonly("name", &IVProblem::name)
      .def_readonly("params", &IVProblem::params)
      .def_readonly("a", &IVProblem::a)
      .def_readonly("b", &IVProblem::b)
      .def_readonly("dimension", &IVProblem::dimension)
      .def_readonly("eta", &IVProblem::eta)
      .def_property_readonly("holder_rho", [](const IVProblem& p) -> py::object {
        return p.holder_rho ? py::cast(*p.holder_rho) : py::none();
      });

  m.def(
      "make_problem",
      [](const std::string& name, double gamma, double lam, double eta) {
        ProblemOptions opts;
        opts.gamma = gamma;
        opts.lambda = lam;
        opts.linear_eta = eta;
        return make_problem(name, opts);
      },
      py::arg("name"), py::arg("gamma") = 2.0, py::arg("lam") = -1.0,
      py::arg("eta") = 1.0,
      "Builds one of the registered problems: 'example1', 'sir', 'linear'.");

  m.def(
      "solve",
      [](const IVProblem& problem, int n, const std::string& scheme,
         const std::string& noise, double delta, std::uint64_t seed,
         std::uint64_t stream) {
        const NoiseSpec spec = noise_spec(noise, delta);
        const RngStream rng(seed, stream);
        switch (scheme_from(scheme)) {
          case Scheme::rrk2:
            return trajectory_dict(rrk2_trajectory(problem, n, spec, rng));
          case Scheme::euler:
            return trajectory_dict(euler_trajectory(problem, n, spec, rng));
          case Scheme::midpoint:
            return trajectory_dict(midpoint_trajectory(problem, n, spec, rng));
        }
        throw std::invalid_argument("unknown scheme");
      },
      py::arg("problem"), py::arg("n"), py::arg("scheme") = "rrk2",
      py::arg("noise") = "none", py::arg("delta") = 0.0, py::arg("seed") = 0,
      py::arg("stream") = 0,
      "One trajectory on a uniform n-step mesh; returns times/states/taus.");

  m.def(
      "reference",
      [](const IVProblem& problem, double t) {
        return reference_solution(problem, t);
      },
      py::arg("problem"), py::arg("t"),
      "High-accuracy reference value at t (exact solution when available).");

  m.def(
      "lp_error",
      [](const IVProblem& problem, int n, const std::string& scheme,
         const std::string& noise, double delta, double p, int reps,
         const std::string& mode, std::uint64_t seed, int threads) {
        return estimate_dict(lp_error(problem, scheme_from(scheme), n,
                                      noise_spec(noise, delta), p, reps,
                                      mode_from(mode), seed, threads));
      },
      py::arg("problem"), py::arg("n"), py::arg("scheme") = "rrk2",
      py::arg("noise") = "none", py::arg("delta") = 0.0, py::arg("p") = 2.0,
      py::arg("reps") = 100, py::arg("mode") = "terminal", py::arg("seed") = 0,
      py::arg("threads") = 1, "Monte-Carlo L^p error estimate.");

  m.def(
      "worst_case_error",
      [](const IVProblem& problem, int n, double delta,
         const std::string& protocol, const std::string& scheme, double p,
         int reps, const std::string& mode, std::uint64_t seed, int threads) {
        WorstCaseProtocol proto;
        if (protocol == "const_pair")
          proto = WorstCaseProtocol::const_pair;
        else if (protocol == "random_reps")
          proto = WorstCaseProtocol::random_reps;
        else
          throw std::invalid_argument("unknown protocol '" + protocol + "'");
        return estimate_dict(worst_case_error(problem, scheme_from(scheme), n,
                                              delta, proto, p, reps,
                                              mode_from(mode), seed, threads));
      },
      py::arg("problem"), py::arg("n"), py::arg("delta"),
      py::arg("protocol") = "const_pair", py::arg("scheme") = "rrk2",
      py::arg("p") = 2.0, py::arg("reps") = 1000, py::arg("mode") = "terminal",
      py::arg("seed") = 0, py::arg("threads") = 1,
      "Worst-case-over-noise error at level delta.");

  m.def(
      "convergence_study",
      [](const IVProblem& problem, const std::vector<int>& n_list,
         const std::string& scheme, const std::string& noise, double delta,
         py::object delta_policy, double p, int reps, const std::string& mode,
         std::uint64_t seed, int threads) {
        DeltaPolicy policy = DeltaPolicy::constant(delta);
        if (!delta_policy.is_none()) {
          const auto qc = delta_policy.cast<std::pair<double, double>>();
          policy = DeltaPolicy::power(qc.first, qc.second);
        }
        const ConvergenceTable table = convergence_study(
            problem, scheme_from(scheme), n_list, noise_from(noise), policy, p,
            reps, mode_from(mode), seed, threads);
        py::list rows;
        for (const auto& row : table.rows) rows.append(estimate_dict(row));
        py::dict d;
        d["rows"] = rows;
        d["slope"] = table.slope;
        d["intercept"] = table.intercept;
        d["slope_defined"] = table.slope_defined;
        return d;
      },
      py::arg("problem"), py::arg("n_list"), py::arg("scheme") = "rrk2",
      py::arg("noise") = "none", py::arg("delta") = 0.0,
      py::arg("delta_policy") = py::none(), py::arg("p") = 2.0,
      py::arg("reps") = 500, py::arg("mode") = "terminal", py::arg("seed") = 0,
      py::arg("threads") = 1,
      "Error table over n_list with log10-log10 regression; delta_policy is "
      "an optional (q, c) pair meaning delta = c * h^q.");

  m.def("compute_rbar", &compute_rbar, py::arg("a"), py::arg("b"),
        py::arg("k"), "Localization-radius diagnostic.");

  m.def(
      "F_value", [](double a, double b) { return F_value(a, b); }, py::arg("a"),
      py::arg("b"),
      "Mean log amplification (1/2) E ln f_{a,b}(tau); negative inside the "
      "asymptotic stability region.");
  m.def(
      "F_quadrature", [](double a, double b) { return F_quadrature(a, b); },
      py::arg("a"), py::arg("b"),
      "Same quantity by adaptive quadrature (independent cross-check).");
  m.def(
      "ln_moment2", [](double a, double b) { return ln_moment2(a, b); },
      py::arg("a"), py::arg("b"), "E (ln f_{a,b}(tau))^2.");
  m.def(
      "phi_ms", [](double a, double b) { return phi_ms({a, b}); }, py::arg("a"),
      py::arg("b"), "Mean-square indicator; negative inside the region.");
  m.def(
      "phi_mid", [](double a, double b) { return phi_mid({a, b}); },
      py::arg("a"), py::arg("b"),
      "Deterministic midpoint indicator; negative inside the region.");
  m.def(
      "ms_moment", [](double a, double b) { return ms_moment({a, b}); },
      py::arg("a"), py::arg("b"), "E |p_1(z)|^2.");
  m.def(
      "in_region",
      [](double a, double b, const std::string& kind) {
        return in_region({a, b}, kind_from(kind));
      },
      py::arg("a"), py::arg("b"), py::arg("kind"),
      "Strict membership of z = a + bi in the given stability region.");
  m.def(
      "interval_endpoints",
      [](const std::string& kind) { return interval_endpoints(kind_from(kind)); },
      py::arg("kind"), "Real-axis stability interval as a (left, right) pair.");
  m.def(
      "region_area",
      [](const std::string& kind, int resolution, int threads) {
        const AreaEstimate est = region_area(kind_from(kind), resolution, threads);
        py::dict d;
        d["kind"] = to_string(est.kind);
        d["area"] = est.area;
        d["uncertainty"] = est.uncertainty;
        d["resolution"] = est.resolution;
        return d;
      },
      py::arg("kind"), py::arg("resolution") = 1000, py::arg("threads") = 1,
      "Pixel-counting region area with a boundary-pixel uncertainty bound.");
  m.def(
      "region_grid",
      [](const std::string& kind, double xmin, double xmax, double ymin,
         double ymax, int nx, int ny, int threads) {
        const RegionGrid grid =
            region_grid(kind_from(kind), {xmin, xmax, ymin, ymax}, nx, ny, threads);
        py::dict d;
        d["kind"] = to_string(grid.kind);
        d["nx"] = grid.nx;
        d["ny"] = grid.ny;
        d["values"] = py::cast(grid.values);
        py::list member;
        for (bool b : grid.member) member.append(b);
        d["member"] = member;
        d["singular_pixels"] = grid.singular_pixels;
        return d;
      },
      py::arg("kind"), py::arg("xmin"), py::arg("xmax"), py::arg("ymin"),
      py::arg("ymax"), py::arg("nx"), py::arg("ny"), py::arg("threads") = 1,
      "Indicator raster at pixel centers (row-major, y outer ascending).");
  m.def(
      "mc_verify",
      [](double a, double b, const std::string& kind, int k_max, int reps,
         std::uint64_t seed) {
        return verdict_dict(mc_verify({a, b}, kind_from(kind), k_max, reps, seed));
      },
      py::arg("a"), py::arg("b"), py::arg("kind"), py::arg("k_max") = 2000,
      py::arg("reps") = 200, py::arg("seed") = 0,
      "Monte-Carlo cross-check of closed-form membership.");

  m.attr("__version__") = "0.1.0";
}

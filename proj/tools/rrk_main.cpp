// rrk: command-line front end for the randomized two-stage solver
// experiments and the stability-region engine.  Emits CSV; exit codes are
// 0 success, 2 usage error, 1 numerical failure.
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "randrk/csv.hpp"
#include "randrk/experiments.hpp"
#include "randrk/problem.hpp"
#include "randrk/stability.hpp"

namespace {

using namespace randrk;

int default_threads() {
  if (const char* env = std::getenv("RANDRK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "rrk2") return Scheme::rrk2;
  if (s == "euler") return Scheme::euler;
  if (s == "midpoint") return Scheme::midpoint;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

NoiseKind parse_noise(const std::string& s) {
  if (s == "none") return NoiseKind::none;
  if (s == "const+" || s == "const_plus") return NoiseKind::const_plus;
  if (s == "const-" || s == "const_minus") return NoiseKind::const_minus;
  if (s == "uniform") return NoiseKind::uniform;
  if (s == "relative") return NoiseKind::relative;
  throw std::invalid_argument("unknown noise kind '" + s + "'");
}

ErrorMode parse_mode(const std::string& s) {
  if (s == "terminal") return ErrorMode::terminal;
  if (s == "uniform") return ErrorMode::uniform;
  throw std::invalid_argument("unknown error mode '" + s + "'");
}

RegionKind parse_kind(const std::string& s) {
  if (s == "ms") return RegionKind::ms;
  if (s == "as") return RegionKind::as;
  if (s == "sp") return RegionKind::sp;
  if (s == "mid") return RegionKind::mid;
  throw std::invalid_argument("unknown region kind '" + s + "'");
}

// "h^q:c" -> delta = c * h^q
DeltaPolicy parse_policy(const std::string& text) {
  const auto fail = [&]() -> DeltaPolicy {
    throw std::invalid_argument("bad --delta-policy '" + text +
                                "' (expected \"h^q:c\")");
  };
  if (text.rfind("h^", 0) != 0) return fail();
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon <= 2) return fail();
  double q = 0.0, c = 0.0;
  try {
    std::size_t used = 0;
    q = std::stod(text.substr(2, colon - 2), &used);
    if (used != colon - 2) return fail();
    const std::string ctext = text.substr(colon + 1);
    c = std::stod(ctext, &used);
    if (used != ctext.size()) return fail();
  } catch (const std::exception&) {
    return fail();
  }
  if (!(c >= 0.0)) return fail();
  return DeltaPolicy::power(q, c);
}

int write_output(const std::string& out, const std::string& payload) {
  if (out == "-") {
    std::cout << payload;
    return std::cout ? 0 : 1;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file '" << out << "'\n";
    return 1;
  }
  file << payload;
  return file ? 0 : 1;
}

struct ConvergenceFlags {
  std::string problem = "sir";
  std::string scheme = "rrk2";
  std::vector<int> n_list = {100, 200, 400, 800, 1600, 3200, 6400, 12800};
  double p = 2.0;
  int reps = 500;
  std::string mode = "terminal";
  std::string noise = "const+";
  double delta = 0.0;
  std::string policy_text;
  double gamma = 2.0;
  double lambda = -1.0;
  double eta = 1.0;
};

int run_convergence(const ConvergenceFlags& f, std::uint64_t seed, int threads,
                    const std::string& out) {
  ProblemOptions opts;
  opts.gamma = f.gamma;
  opts.lambda = f.lambda;
  opts.linear_eta = f.eta;
  const IVProblem problem = make_problem(f.problem, opts);
  const DeltaPolicy policy = f.policy_text.empty()
                                 ? DeltaPolicy::constant(f.delta)
                                 : parse_policy(f.policy_text);
  const ConvergenceTable table = convergence_study(
      problem, parse_scheme(f.scheme), f.n_list, parse_noise(f.noise), policy,
      f.p, f.reps, parse_mode(f.mode), seed, threads);
  return write_output(out, convergence_table_csv(table));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized two-stage one-step method under noisy information:"
               " convergence experiments and stability regions"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out = "-";
  int threads = default_threads();
  app.add_option("--seed", seed, "master seed (default 0)");
  app.add_option("--out", out, "output file, '-' for stdout (default)");
  app.add_option("--threads", threads,
                 "worker threads (default: RANDRK_THREADS or hardware)");

  int rc = 0;

  // ---- convergence ----
  ConvergenceFlags conv;
  auto* conv_cmd = app.add_subcommand(
      "convergence", "Monte-Carlo error vs mesh size with log-log slope");
  conv_cmd->fallthrough();
  conv_cmd->add_option("--problem", conv.problem, "example1 | sir | linear");
  conv_cmd->add_option("--scheme", conv.scheme, "rrk2 | euler | midpoint");
  conv_cmd->add_option("--n-list", conv.n_list, "comma-separated mesh sizes")
      ->delimiter(',');
  conv_cmd->add_option("--p", conv.p, "error moment, >= 2 (default 2)");
  conv_cmd->add_option("--reps", conv.reps, "Monte-Carlo replicates (default 500)");
  conv_cmd->add_option("--mode", conv.mode, "terminal | uniform");
  conv_cmd->add_option("--noise", conv.noise,
                       "none | const+ | const- | uniform | relative");
  auto* delta_opt =
      conv_cmd->add_option("--delta", conv.delta, "fixed noise level in [0,1]");
  auto* policy_opt = conv_cmd->add_option(
      "--delta-policy", conv.policy_text, "per-mesh level \"h^q:c\" (delta = c h^q)");
  delta_opt->excludes(policy_opt);
  policy_opt->excludes(delta_opt);
  conv_cmd->add_option("--gamma", conv.gamma, "example1 smoothness parameter");
  conv_cmd->add_option("--lambda", conv.lambda, "linear problem coefficient");
  conv_cmd->add_option("--eta", conv.eta, "linear problem initial value");
  conv_cmd->callback(
      [&] { rc = run_convergence(conv, seed, threads, out); });

  // ---- stability ----
  auto* stab_cmd = app.add_subcommand("stability", "stability-region engine");
  stab_cmd->fallthrough();
  stab_cmd->require_subcommand(1);

  const double H = 1.0 + std::sqrt(5.0);
  std::string kind_text = "ms";
  std::vector<double> box = {-H, 0.0, -H, H};
  int nx = 200, ny = 400;
  auto* region_cmd =
      stab_cmd->add_subcommand("region", "indicator raster as x,y,value,member");
  region_cmd->fallthrough();
  region_cmd->add_option("--kind", kind_text, "ms | as | sp | mid");
  region_cmd->add_option("--box", box, "xmin,xmax,ymin,ymax")
      ->delimiter(',')
      ->expected(4);
  region_cmd->add_option("--nx", nx, "pixels in x (default 200)");
  region_cmd->add_option("--ny", ny, "pixels in y (default 400)");
  region_cmd->callback([&] {
    const RegionGrid grid =
        region_grid(parse_kind(kind_text), {box[0], box[1], box[2], box[3]},
                    nx, ny, threads);
    rc = write_output(out, region_grid_csv(grid));
  });

  int resolution = 1000;
  auto* area_cmd = stab_cmd->add_subcommand(
      "area", "pixel-counting area as kind,area,uncertainty,resolution");
  area_cmd->fallthrough();
  area_cmd->add_option("--kind", kind_text, "ms | as | sp | mid");
  area_cmd->add_option("--resolution", resolution,
                       "pixels per unit, >= 100 (default 1000)");
  area_cmd->callback([&] {
    rc = write_output(
        out, area_csv(region_area(parse_kind(kind_text), resolution, threads)));
  });

  auto* interval_cmd = stab_cmd->add_subcommand(
      "interval", "real-axis stability interval as left,right");
  interval_cmd->fallthrough();
  interval_cmd->add_option("--kind", kind_text, "ms | as | sp | mid");
  interval_cmd->callback([&] {
    const auto [left, right] = interval_endpoints(parse_kind(kind_text));
    rc = write_output(out, interval_csv(left, right));
  });

  std::vector<double> z = {0.0, 0.0};
  int kmax = 2000;
  int verify_reps = 200;
  std::string verify_kind = "all";
  auto* verify_cmd = stab_cmd->add_subcommand(
      "verify", "Monte-Carlo cross-check of membership at a point");
  verify_cmd->fallthrough();
  verify_cmd->add_option("--z", z, "point a,b")->delimiter(',')->expected(2);
  verify_cmd->add_option("--kmax", kmax, "steps per path (default 2000)");
  verify_cmd->add_option("--reps", verify_reps, "paths (default 200)");
  verify_cmd->add_option("--kind", verify_kind,
                         "ms | as | sp | mid | all (default; sp aliases as)");
  verify_cmd->callback([&] {
    std::vector<RegionKind> kinds;
    if (verify_kind == "all")
      kinds = {RegionKind::ms, RegionKind::as, RegionKind::sp, RegionKind::mid};
    else
      kinds = {parse_kind(verify_kind)};
    std::vector<StabilityVerdict> verdicts;
    verdicts.reserve(kinds.size());
    for (RegionKind kind : kinds)
      verdicts.push_back(mc_verify({z[0], z[1]}, kind, kmax, verify_reps, seed));
    rc = write_output(out, verdict_csv(verdicts));
  });

  auto* eval_cmd = stab_cmd->add_subcommand(
      "eval", "point diagnostics phi_ms, phi_mid, F, ln_moment2");
  eval_cmd->fallthrough();
  eval_cmd->add_option("--z", z, "point a,b")->delimiter(',')->expected(2);
  eval_cmd->callback([&] { rc = write_output(out, eval_csv(z[0], z[1])); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}

#include "randrk/csv.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace randrk {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::ms:
      return "ms";
    case RegionKind::as:
      return "as";
    case RegionKind::sp:
      return "sp";
    case RegionKind::mid:
      return "mid";
  }
  return "?";
}

std::string to_string(ErrorMode mode) {
  return mode == ErrorMode::terminal ? "terminal" : "uniform";
}

std::string convergence_table_csv(const ConvergenceTable& table) {
  std::string out = "n,h,delta,p,mode,error\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.h);
    out += ',';
    out += format_double(row.delta);
    out += ',';
    out += format_double(row.p);
    out += ',';
    out += to_string(row.mode);
    out += ',';
    out += format_double(row.value);
    out += '\n';
  }
  out += "#slope=" + format_double(table.slope) + "\n";
  out += "#intercept=" + format_double(table.intercept) + "\n";
  return out;
}

std::string region_grid_csv(const RegionGrid& grid) {
  std::string out = "x,y,value,member\n";
  const double dx = (grid.box.xmax - grid.box.xmin) / grid.nx;
  const double dy = (grid.box.ymax - grid.box.ymin) / grid.ny;
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.box.ymin + (j + 0.5) * dy;
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.box.xmin + (i + 0.5) * dx;
      const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
      out += format_double(x);
      out += ',';
      out += format_double(y);
      out += ',';
      out += format_double(grid.values[k]);
      out += ',';
      out += grid.member[k] ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

std::string area_csv(const AreaEstimate& est) {
  return to_string(est.kind) + ',' + format_double(est.area) + ',' +
         format_double(est.uncertainty) + ',' + std::to_string(est.resolution) +
         '\n';
}

std::string interval_csv(double left, double right) {
  return format_double(left) + ',' + format_double(right) + '\n';
}

std::string eval_csv(double a, double b) {
  std::string out = "a,b,phi_ms,phi_mid,F,ln_moment2\n";
  out += format_double(a);
  out += ',';
  out += format_double(b);
  out += ',';
  out += format_double(phi_ms({a, b}));
  out += ',';
  out += format_double(phi_mid({a, b}));
  out += ',';
  out += format_double(F_value(a, b));
  out += ',';
  out += format_double(ln_moment2(a, b));
  out += '\n';
  return out;
}

std::string verdict_csv(const std::vector<StabilityVerdict>& verdicts) {
  std::string out = "kind,a,b,member,drift,ci_low,ci_high,trend,outcome\n";
  for (const auto& v : verdicts) {
    out += to_string(v.kind);
    out += ',';
    out += format_double(v.z.a);
    out += ',';
    out += format_double(v.z.b);
    out += ',';
    out += v.member ? '1' : '0';
    out += ',';
    out += format_double(v.drift);
    out += ',';
    out += format_double(v.ci_low);
    out += ',';
    out += format_double(v.ci_high);
    out += ',';
    out += format_double(v.trend);
    out += ',';
    switch (v.outcome) {
      case StabilityVerdict::Outcome::agree:
        out += "agree";
        break;
      case StabilityVerdict::Outcome::disagree:
        out += "disagree";
        break;
      case StabilityVerdict::Outcome::inconclusive:
        out += "inconclusive";
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace randrk

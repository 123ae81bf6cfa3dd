#pragma once

#include <string>

#include "randrk/experiments.hpp"
#include "randrk/stability.hpp"

namespace randrk {

/// Shortest decimal representation that parses back to the same double;
/// the one canonical formatter behind every CSV byte we emit.
std::string format_double(double v);

std::string to_string(RegionKind kind);
std::string to_string(ErrorMode mode);

/// "n,h,delta,p,mode,error" rows plus trailing '#slope=' / '#intercept='
/// comment lines.
std::string convergence_table_csv(const ConvergenceTable& table);

/// "x,y,value,member" rows at pixel centers, y ascending outer, x inner.
std::string region_grid_csv(const RegionGrid& grid);

/// Single line "kind,area,uncertainty,resolution".
std::string area_csv(const AreaEstimate& est);

/// Single line "left,right".
std::string interval_csv(double left, double right);

/// Header and one row of the point diagnostics (phi_ms, phi_mid, F,
/// ln_moment2) at z = a + bi.
std::string eval_csv(double a, double b);

/// Header plus one row per verdict.
std::string verdict_csv(const std::vector<StabilityVerdict>& verdicts);

}  // namespace randrk

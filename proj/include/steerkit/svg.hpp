#pragma once

#include <string>
#include <vector>

#include "steerkit/scans.hpp"

namespace steerkit {

// Self-contained SVG heat map of a detection region: light cells are
// undetected, mid-tone cells are caught only by the optimized inequality,
// dark cells by both inequalities.
std::string region_svg(const RegionTable& table);

// Self-contained SVG plot of the pure-state curves: the usual inequality
// value against its bound, and the optimized violation margin.
std::string curves_svg(const std::vector<CurvePoint>& rows);

}  // namespace steerkit

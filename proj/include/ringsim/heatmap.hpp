#pragma once

#include "ringsim/harness.hpp"

#include <string>

namespace ringsim {

/// Self-contained SVG heatmap of one sweep metric: delta_i on the x axis,
/// delta_s on the y axis (increasing upward), a linear three-stop color map
/// with a labeled scale, and the numeric value printed in every cell.
/// `metric` is one of mean_var, std_var, mean_speed, mean_lane_changes.
/// Output bytes depend only on (table, metric). Throws ConfigError for an
/// unknown metric or a table whose cells do not form a full grid.
std::string render_heatmap_svg(const SweepTable& table, const std::string& metric);

} // namespace ringsim

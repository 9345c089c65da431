#pragma once

#include "ringsim/engine.hpp"

#include <string>

namespace ringsim {

/// Parses a key = value document (one pair per line, '#' comments) over the
/// default SimConfig. Nested fields use dotted paths mirroring the struct
/// layout (model.alpha, lc.delta_i, ctl.gap_safe, ...). lane_lengths and
/// n_per_lane accept comma lists or a single value broadcast to all lanes.
/// Unknown or duplicate keys and malformed values throw ConfigError.
SimConfig parse_config(const std::string& text);

/// parse_config applied to a file's contents.
SimConfig load_config_file(const std::string& path);

} // namespace ringsim

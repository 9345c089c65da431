#pragma once

#include <stdexcept>
#include <string>

namespace ringsim {

/// Gap at or below the vehicle length: the follow-the-leader denominator is
/// singular there, so the simulation cannot continue.
struct CollisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside a function's mathematical domain (e.g. headway <= l_v).
struct SimDomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The mapped position in the target lane coincides with an existing vehicle.
struct OccupiedSlotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A lane move would create a gap <= l_v on either side of the insertion.
struct RejectedInsertionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or unknown content in a config or table file.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ringsim

#pragma once

#include <vector>

namespace ringsim {

enum class EventKind {
    LaneChange,   ///< MOBIL-accepted move by a human/collaborative driver
    AvLaneChange, ///< variance-driven move by the automated vehicle
    AvRamp,       ///< automated vehicle finished its speed ramp
    AvOverride,   ///< automated safety override engaged or released
};

const char* to_string(EventKind k);

struct Event {
    double t = 0.0;
    int vid = 0;
    EventKind kind = EventKind::LaneChange;
    int from_lane = -1;
    int to_lane = -1;
    double a_cur = 0.0; ///< acceleration in the current lane at decision time
    double a_new = 0.0; ///< hypothetical acceleration in the target lane
    double a_fol = 0.0; ///< hypothetical acceleration of the new follower
};

using EventLog = std::vector<Event>;

} // namespace ringsim

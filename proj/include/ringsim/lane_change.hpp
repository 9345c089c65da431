#pragma once

#include "ringsim/context.hpp"
#include "ringsim/events.hpp"
#include "ringsim/params.hpp"
#include "ringsim/road.hpp"

#include <optional>
#include <vector>

namespace ringsim {

/// Lanes adjacent to `lane` under linear adjacency 0-1-2-...; ascending order.
std::vector<int> adjacent_lanes(const RoadState& road, int lane);

struct HypotheticalAccels {
    double a_self_now = 0.0;      ///< capped accel in the current lane
    double a_self_new = 0.0;      ///< capped accel at the mapped target slot
    double a_new_follower = 0.0;  ///< capped accel of the would-be follower
                                  ///< (+infinity when the target lane is empty)
};

/// Accelerations a candidate move would produce, all evaluated against the
/// frozen current state. Returns nullopt — "no change" — when the mapped slot
/// is occupied or a created gap would close to the vehicle-length floor.
std::optional<HypotheticalAccels> hypothetical_accels(const RoadState& road, int vid,
                                                      int target_lane,
                                                      const DrivingContext& ctx,
                                                      double t);

struct LcDecision {
    int vid = 0;
    int from_lane = -1;
    int to_lane = -1;
    double a_cur = 0.0; ///< a_self_now at decision time
    double a_new = 0.0; ///< a_self_new at decision time
    double a_fol = 0.0; ///< a_new_follower at decision time
};

/// Incentive/safety/cooldown rule for one human or collaborative driver:
/// move to an adjacent lane iff the hypothetical gain beats delta_i, both
/// safety accelerations stay above -delta_s, and more than tau seconds have
/// passed since the vehicle's previous change. Of two qualifying lanes the
/// larger a_new wins; ties break to the lower lane id.
std::optional<LcDecision> mobil_decide(const RoadState& road, int vid,
                                       const DrivingContext& ctx,
                                       const LaneChangeParams& lc, double t);

/// One decision pass: vehicles in ascending (lane id, vehicle id) snapshot
/// order, each decision evaluated against the already-updated state and
/// applied immediately. Returns one event per executed change.
std::vector<Event> lane_change_pass(RoadState& road, const DrivingContext& ctx,
                                    const LaneChangeParams& lc, double t);

} // namespace ringsim

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace ringsim {

enum class VehicleClass { Human, AV, Collaborative };

const char* to_string(VehicleClass k);

struct VehicleState {
    int id = 0;
    double pos = 0.0; ///< ring position [m], in [0, lane length)
    double vel = 0.0; ///< speed [m/s], >= 0
    VehicleClass klass = VehicleClass::Human;
    double alpha_i = 0.0; ///< per-vehicle Bando weight
    double beta_i = 0.0;  ///< per-vehicle FTL weight
    double last_lc_time = kNeverChanged;
    int lc_count = 0;

    static constexpr double kNeverChanged = -1e300;
};

/// One circular lane; vehicles kept sorted ascending by position.
struct LaneState {
    int lane_id = 0;
    double length = 0.0;
    std::vector<VehicleState> vehicles;

    std::size_t size() const { return vehicles.size(); }
    bool empty() const { return vehicles.empty(); }
};

struct RoadState {
    std::vector<LaneState> lanes;
    double time = 0.0;

    std::size_t total_vehicles() const;
};

/// Location of a vehicle: lane id plus index within the lane's sorted order.
struct VehicleRef {
    int lane = 0;
    std::size_t index = 0;
};

/// Finds a vehicle by id. Returns nullopt when absent.
std::optional<VehicleRef> find_vehicle(const RoadState& road, int vid);

/// Forward distance from `from` to `to` along the ring, in [0, length).
double ring_distance(double from, double to, double length);

struct GapLeader {
    double gap = 0.0;        ///< front-to-front distance to the leader [m]
    std::size_t leader = 0;  ///< index of the leader within the lane
};

/// Headway and leader of the vehicle at `idx`. A lone vehicle leads itself
/// with gap equal to the lane length.
GapLeader gap_and_leader(const LaneState& lane, std::size_t idx);

struct Neighbors {
    std::optional<std::size_t> leader;   ///< nearest vehicle ahead of pos
    std::optional<std::size_t> follower; ///< nearest vehicle behind pos
};

/// Nearest vehicles around a hypothetical position in a lane. Both empty for
/// an empty lane; both the same index when the lane holds one vehicle.
/// Throws OccupiedSlotError when a vehicle sits exactly at `pos`.
Neighbors neighbors_in_lane(const LaneState& lane, double pos);

/// Moves vehicle `vid` between adjacent lanes, mapping its position by the
/// ratio of lane lengths. Updates lane-change bookkeeping from `road.time`.
/// Throws RejectedInsertionError when a resulting gap would be <= min_gap.
void move_vehicle(RoadState& road, int vid, int from_lane, int to_lane, double min_gap);

/// True when every modular front-to-front gap in the lane exceeds min_gap.
bool lane_gaps_ok(const LaneState& lane, double min_gap);

} // namespace ringsim

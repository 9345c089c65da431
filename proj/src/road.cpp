#include "ringsim/road.hpp"

#include "ringsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ringsim {

const char* to_string(VehicleClass k) {
    switch (k) {
    case VehicleClass::Human: return "human";
    case VehicleClass::AV: return "av";
    case VehicleClass::Collaborative: return "collab";
    }
    return "?";
}

std::size_t RoadState::total_vehicles() const {
    std::size_t n = 0;
    for (const auto& lane : lanes) n += lane.vehicles.size();
    return n;
}

std::optional<VehicleRef> find_vehicle(const RoadState& road, int vid) {
    for (const auto& lane : road.lanes) {
        for (std::size_t i = 0; i < lane.vehicles.size(); ++i) {
            if (lane.vehicles[i].id == vid)
                return VehicleRef{lane.lane_id, i};
        }
    }
    return std::nullopt;
}

double ring_distance(double from, double to, double length) {
    double d = std::fmod(to - from, length);
    if (d < 0.0) d += length;
    return d;
}

GapLeader gap_and_leader(const LaneState& lane, std::size_t idx) {
    const std::size_t n = lane.vehicles.size();
    if (n == 0 || idx >= n)
        throw SimDomainError("gap_and_leader: index out of range");
    if (n == 1)
        return GapLeader{lane.length, idx};
    const std::size_t lead = (idx + 1) % n;
    double gap = lane.vehicles[lead].pos - lane.vehicles[idx].pos;
    if (lead < idx || gap <= 0.0) // wrapped around the ring
        gap += lane.length;
    return GapLeader{gap, lead};
}

Neighbors neighbors_in_lane(const LaneState& lane, double pos) {
    Neighbors out;
    const std::size_t n = lane.vehicles.size();
    if (n == 0) return out;

    for (const auto& v : lane.vehicles) {
        if (v.pos == pos)
            throw OccupiedSlotError("neighbors_in_lane: slot at pos " +
                                    std::to_string(pos) + " in lane " +
                                    std::to_string(lane.lane_id) + " is occupied");
    }

    // vehicles are sorted ascending by pos; find first strictly above pos
    std::size_t above = 0;
    while (above < n && lane.vehicles[above].pos < pos) ++above;

    out.leader = (above < n) ? above : 0;           // wrap to lowest position
    out.follower = (above > 0) ? above - 1 : n - 1; // wrap to highest position
    return out;
}

bool lane_gaps_ok(const LaneState& lane, double min_gap) {
    const std::size_t n = lane.vehicles.size();
    if (n <= 1) return lane.length > min_gap || n == 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto gl = gap_and_leader(lane, i);
        if (gl.gap <= min_gap) return false;
    }
    return true;
}

void move_vehicle(RoadState& road, int vid, int from_lane, int to_lane, double min_gap) {
    LaneState* src = nullptr;
    LaneState* dst = nullptr;
    for (auto& lane : road.lanes) {
        if (lane.lane_id == from_lane) src = &lane;
        if (lane.lane_id == to_lane) dst = &lane;
    }
    if (!src || !dst)
        throw SimDomainError("move_vehicle: unknown lane id");
    if (std::abs(from_lane - to_lane) != 1)
        throw SimDomainError("move_vehicle: lanes are not adjacent");

    auto it = std::find_if(src->vehicles.begin(), src->vehicles.end(),
                           [vid](const VehicleState& v) { return v.id == vid; });
    if (it == src->vehicles.end())
        throw SimDomainError("move_vehicle: vehicle " + std::to_string(vid) +
                             " not in lane " + std::to_string(from_lane));

    VehicleState moved = *it;
    moved.pos = moved.pos * dst->length / src->length;
    if (moved.pos >= dst->length) moved.pos = 0.0; // guard fp rounding at the seam

    for (const auto& v : dst->vehicles) {
        if (v.pos == moved.pos)
            throw RejectedInsertionError("move_vehicle: slot occupied in lane " +
                                         std::to_string(to_lane));
    }

    auto pos_it = std::lower_bound(dst->vehicles.begin(), dst->vehicles.end(), moved.pos,
                                   [](const VehicleState& v, double p) { return v.pos < p; });
    const std::size_t at = static_cast<std::size_t>(pos_it - dst->vehicles.begin());
    dst->vehicles.insert(pos_it, moved);

    if (!lane_gaps_ok(*dst, min_gap)) {
        dst->vehicles.erase(dst->vehicles.begin() + static_cast<std::ptrdiff_t>(at));
        throw RejectedInsertionError("move_vehicle: gap too small in lane " +
                                     std::to_string(to_lane));
    }

    src->vehicles.erase(it);
    auto& v = dst->vehicles[at];
    v.last_lc_time = road.time;
    v.lc_count += 1;
}

} // namespace ringsim

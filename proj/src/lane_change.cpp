#include "ringsim/lane_change.hpp"

#include "ringsim/errors.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace ringsim {

std::vector<int> adjacent_lanes(const RoadState& road, int lane) {
    std::vector<int> out;
    const int last = static_cast<int>(road.lanes.size()) - 1;
    if (lane > 0) out.push_back(lane - 1);
    if (lane < last) out.push_back(lane + 1);
    return out;
}

namespace {

const LaneState& lane_by_id(const RoadState& road, int id) {
    for (const auto& lane : road.lanes)
        if (lane.lane_id == id) return lane;
    throw SimDomainError("unknown lane id");
}

} // namespace

std::optional<HypotheticalAccels> hypothetical_accels(const RoadState& road, int vid,
                                                      int target_lane,
                                                      const DrivingContext& ctx,
                                                      double t) {
    const auto ref = find_vehicle(road, vid);
    if (!ref)
        throw SimDomainError("hypothetical_accels: no such vehicle");
    const LaneState& src = lane_by_id(road, ref->lane);
    const LaneState& dst = lane_by_id(road, target_lane);
    const VehicleState& veh = src.vehicles[ref->index];

    HypotheticalAccels out;
    const auto now = gap_and_leader(src, ref->index);
    out.a_self_now = accel_for(ctx, veh, now.gap, src.vehicles[now.leader].vel,
                               src.size(), src.length, t)
                         .a;

    const double mapped = veh.pos * dst.length / src.length;

    if (dst.empty()) {
        // Alone in the target lane: the vehicle leads itself around the ring.
        out.a_self_new =
            accel_for(ctx, veh, dst.length, veh.vel, 1, dst.length, t).a;
        out.a_new_follower = std::numeric_limits<double>::infinity();
        return out;
    }

    Neighbors nb;
    try {
        nb = neighbors_in_lane(dst, mapped);
    } catch (const OccupiedSlotError&) {
        return std::nullopt;
    }
    const VehicleState& leader = dst.vehicles[*nb.leader];
    const VehicleState& follower = dst.vehicles[*nb.follower];
    const double gap_lead = ring_distance(mapped, leader.pos, dst.length);
    const double gap_fol = ring_distance(follower.pos, mapped, dst.length);
    if (gap_lead <= ctx.model.l_v || gap_fol <= ctx.model.l_v)
        return std::nullopt; // slot too tight to even evaluate

    const std::size_t n_after = dst.size() + 1;
    out.a_self_new =
        accel_for(ctx, veh, gap_lead, leader.vel, n_after, dst.length, t).a;
    out.a_new_follower =
        accel_for(ctx, follower, gap_fol, veh.vel, n_after, dst.length, t).a;
    return out;
}

std::optional<LcDecision> mobil_decide(const RoadState& road, int vid,
                                       const DrivingContext& ctx,
                                       const LaneChangeParams& lc, double t) {
    const auto ref = find_vehicle(road, vid);
    if (!ref)
        throw SimDomainError("mobil_decide: no such vehicle");
    const LaneState& src = lane_by_id(road, ref->lane);
    const VehicleState& veh = src.vehicles[ref->index];
    if (veh.klass == VehicleClass::AV)
        throw SimDomainError("mobil_decide: automated vehicle uses its own rule");

    if (!(t > veh.last_lc_time + lc.tau)) return std::nullopt;

    std::optional<LcDecision> best;
    for (int j : adjacent_lanes(road, ref->lane)) {
        const auto ha = hypothetical_accels(road, vid, j, ctx, t);
        if (!ha) continue;
        if (!(ha->a_self_new > ha->a_self_now + lc.delta_i)) continue;
        if (!(ha->a_self_new > -lc.delta_s) || !(ha->a_new_follower > -lc.delta_s))
            continue;
        if (!best || ha->a_self_new > best->a_new) // ascending j keeps lower id on ties
            best = LcDecision{vid, ref->lane, j, ha->a_self_now, ha->a_self_new,
                              ha->a_new_follower};
    }
    return best;
}

std::vector<Event> lane_change_pass(RoadState& road, const DrivingContext& ctx,
                                    const LaneChangeParams& lc, double t) {
    // Snapshot the evaluation order; decisions see the live, updated state.
    std::vector<std::pair<int, int>> order; // (lane_id, vid)
    for (const auto& lane : road.lanes)
        for (const auto& v : lane.vehicles)
            if (v.klass != VehicleClass::AV)
                order.emplace_back(lane.lane_id, v.id);
    std::sort(order.begin(), order.end());

    std::vector<Event> events;
    for (const auto& [lane_id, vid] : order) {
        (void)lane_id;
        const auto d = mobil_decide(road, vid, ctx, lc, t);
        if (!d) continue;
        move_vehicle(road, vid, d->from_lane, d->to_lane, ctx.model.l_v);
        events.push_back(Event{t, vid, EventKind::LaneChange, d->from_lane, d->to_lane,
                               d->a_cur, d->a_new, d->a_fol});
    }
    return events;
}

} // namespace ringsim

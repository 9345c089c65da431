#include "ringsim/av_control.hpp"

#include "ringsim/dynamics.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/lane_change.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ringsim {

double ramp_speed(double t, double v_star, double v_min, double t_tr) {
    if (t <= 0.0) return v_min;
    if (t >= t_tr) return v_star;
    return v_min + (v_star - v_min) * t / t_tr;
}

double av_target_speed(const ModelParams& mp, const ControlParams& cp,
                       std::size_t n, double lane_length) {
    if (n == 0)
        throw SimDomainError("av_target_speed: empty lane");
    switch (cp.target_mode) {
    case TargetMode::Headway:
        return equilibrium_speed(lane_length / static_cast<double>(n), mp);
    case TargetMode::PaperLiteral:
        // Verbatim published expression; its argument is a density-like
        // quantity below the vehicle-length floor, so this throws.
        return equilibrium_speed((static_cast<double>(n) + mp.l_v) / lane_length, mp);
    }
    throw SimDomainError("av_target_speed: unknown target mode");
}

AvAccel av_accel(const ModelParams& mp, const ControlParams& cp, double t,
                 double v_star, double v, double v_leader, double gap) {
    if (gap <= mp.l_v)
        throw CollisionError("gap <= l_v in AV controller");
    double target = ramp_speed(t, v_star, cp.v_min, cp.t_tr);
    const bool override_active = gap < cp.gap_safe;
    if (override_active)
        target = std::min(target, v_leader);
    const double u = -cp.k * (v - target);
    return AvAccel{clamp_accel(u, mp), override_active};
}

VarianceWindow::VarianceWindow(double t1, double dt) : dt_(dt) {
    if (t1 <= 0.0 || dt <= 0.0)
        throw SimDomainError("VarianceWindow: t1 and dt must be positive");
    cap_ = static_cast<std::size_t>(std::llround(t1 / dt));
    if (cap_ == 0) cap_ = 1;
}

void VarianceWindow::push(double variance) {
    samples_.push_back(variance);
    sum_ += variance;
    if (samples_.size() > cap_) {
        sum_ -= samples_.front();
        samples_.pop_front();
    }
}

std::optional<AvLateralDecision> av_lateral_decide(
    const RoadState& road, int av_vid, const std::vector<VarianceWindow>& windows,
    const DrivingContext& ctx, const LaneChangeParams& lc, double t) {
    const auto ref = find_vehicle(road, av_vid);
    if (!ref)
        throw SimDomainError("av_lateral_decide: no such vehicle");

    const ControlParams& cp = ctx.av;
    if (!(t > cp.t1)) return std::nullopt; // variance windows still warming up

    const LaneState* own_lane = nullptr;
    for (const auto& lane : road.lanes)
        if (lane.lane_id == ref->lane) own_lane = &lane;
    const VehicleState& av = own_lane->vehicles[ref->index];

    if (!(t > cp.t2 + av.last_lc_time)) return std::nullopt;

    const double own_integral = windows.at(static_cast<std::size_t>(ref->lane)).integral();

    std::optional<AvLateralDecision> best;
    double best_integral = -std::numeric_limits<double>::infinity();
    for (int j : adjacent_lanes(road, ref->lane)) {
        const double cand_integral = windows.at(static_cast<std::size_t>(j)).integral();
        if (!(cand_integral > own_integral + cp.c1)) continue;

        const auto ha = hypothetical_accels(road, av_vid, j, ctx, t);
        if (!ha) continue;
        if (!(ha->a_self_new > -lc.delta_s) || !(ha->a_new_follower > -lc.delta_s))
            continue;

        if (cand_integral > best_integral) { // ascending j, so ties keep the lower id
            best_integral = cand_integral;
            best = AvLateralDecision{j, cand_integral - own_integral};
        }
    }
    return best;
}

} // namespace ringsim

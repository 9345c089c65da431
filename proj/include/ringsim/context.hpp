#pragma once

#include "ringsim/params.hpp"
#include "ringsim/road.hpp"

#include <cstddef>

namespace ringsim {

/// Everything needed to evaluate any vehicle's longitudinal law.
struct DrivingContext {
    ModelParams model;
    bool idm_enabled = false; ///< humans use the intelligent-driver model instead
    IdmParams idm;
    ControlParams av;

    void validate() const;
};

struct AccelResult {
    double a = 0.0;           ///< capped acceleration [m/s^2]
    bool av_override = false; ///< safety override engaged (automated vehicle only)
};

/// Capped longitudinal acceleration of one vehicle behind its leader.
/// Humans and collaborative drivers run Bando-FTL with their per-vehicle
/// weights (or the intelligent-driver model when enabled); the automated
/// vehicle runs its proportional controller, whose ramp target depends on the
/// lane occupancy (lane_n vehicles on lane_length meters) and the clock t.
AccelResult accel_for(const DrivingContext& ctx, const VehicleState& veh,
                      double gap, double v_leader, std::size_t lane_n,
                      double lane_length, double t);

} // namespace ringsim

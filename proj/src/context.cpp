#include "ringsim/context.hpp"

#include "ringsim/av_control.hpp"
#include "ringsim/dynamics.hpp"
#include "ringsim/errors.hpp"

namespace ringsim {

void DrivingContext::validate() const {
    model.validate();
    if (idm_enabled) idm.validate();
    av.validate(model.l_v);
}

AccelResult accel_for(const DrivingContext& ctx, const VehicleState& veh,
                      double gap, double v_leader, std::size_t lane_n,
                      double lane_length, double t) {
    if (veh.klass == VehicleClass::AV) {
        const double v_star = av_target_speed(ctx.model, ctx.av, lane_n, lane_length);
        const AvAccel r = av_accel(ctx.model, ctx.av, t, v_star, veh.vel, v_leader, gap);
        return AccelResult{r.a, r.override_active};
    }
    double a_raw;
    if (ctx.idm_enabled) {
        a_raw = idm_accel(veh.vel, gap - ctx.model.l_v, veh.vel - v_leader, ctx.idm);
    } else {
        a_raw = bando_ftl_accel(veh.vel, gap, v_leader, veh.alpha_i, veh.beta_i, ctx.model);
    }
    return AccelResult{clamp_accel(a_raw, ctx.model), false};
}

} // namespace ringsim

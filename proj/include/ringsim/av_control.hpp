#pragma once

#include "ringsim/context.hpp"
#include "ringsim/params.hpp"
#include "ringsim/road.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

namespace ringsim {

/// Ramp profile for the controller's commanded speed: linear from v_min to
/// v_star over [0, t_tr], constant v_star afterwards.
double ramp_speed(double t, double v_star, double v_min, double t_tr);

/// Steady-state speed the controller aims for in a lane with n vehicles
/// (including the controlled one) on a ring of the given length.
/// Headway mode evaluates the optimal-velocity curve at the mean headway;
/// PaperLiteral keeps the verbatim published expression, which evaluates the
/// curve below the vehicle-length floor and therefore throws SimDomainError.
double av_target_speed(const ModelParams& mp, const ControlParams& cp,
                       std::size_t n, double lane_length);

struct AvAccel {
    double a = 0.0;
    bool override_active = false; ///< leader-speed cap engaged this step
};

/// Longitudinal control: proportional tracking of the ramped target, with the
/// target capped at the leader's speed when the headway falls below gap_safe.
/// The result is clamped to the model's acceleration caps.
AvAccel av_accel(const ModelParams& mp, const ControlParams& cp, double t,
                 double v_star, double v, double v_leader, double gap);

/// Sliding time-window accumulator for a lane's speed variance. The window
/// spans t1 seconds of samples at fixed dt; `integral()` is the rectangle-rule
/// time integral of variance over the filled part of the window.
class VarianceWindow {
  public:
    VarianceWindow() = default;
    VarianceWindow(double t1, double dt);

    void push(double variance);
    double integral() const { return sum_ * dt_; }
    bool full() const { return samples_.size() == cap_; }

  private:
    std::deque<double> samples_;
    std::size_t cap_ = 1;
    double dt_ = 1.0;
    double sum_ = 0.0;
};

struct AvLateralDecision {
    int to_lane = -1;
    double integral_gain = 0.0; ///< target-lane integral minus own-lane's
};

/// Variance-driven lane choice. Candidate lanes must beat the current lane's
/// windowed variance integral by more than c1, pass the incentive-free safety
/// check (the controlled vehicle and its would-be follower both stay above
/// -delta_s under capped accelerations), and respect the warm-up (t > t1) and
/// rest (t > t2 + last change) clocks. The lane with the largest windowed
/// integral wins; ties break to the lower lane id.
/// `windows` is indexed by lane id.
std::optional<AvLateralDecision> av_lateral_decide(
    const RoadState& road, int av_vid, const std::vector<VarianceWindow>& windows,
    const DrivingContext& ctx, const LaneChangeParams& lc, double t);

} // namespace ringsim

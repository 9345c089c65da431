#pragma once

#include "ringsim/context.hpp"
#include "ringsim/events.hpp"
#include "ringsim/metrics.hpp"
#include "ringsim/params.hpp"
#include "ringsim/road.hpp"

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace ringsim {

/// Full description of one simulation run.
struct SimConfig {
    int lanes = 3;
    std::vector<double> lane_lengths{240.0, 240.0, 240.0};
    std::vector<int> n_per_lane{24, 24, 24};
    double dt = 0.02;   ///< timestep [s]
    double t_f = 1000.0; ///< final time [s]

    ModelParams model;
    bool idm_enabled = false;
    IdmParams idm;
    LaneChangeParams lc;

    bool av_enabled = false;
    int av_lane = 1; ///< lane whose lowest-position vehicle becomes the AV
    ControlParams ctl;

    double collab_fraction = 0.0; ///< share of collaborative drivers per lane
    double alpha_s = 4.0;         ///< collaborative relaxation weight [1/s]
    double beta_s = 20.0;         ///< collaborative follow-the-leader weight [m^2/s]

    double perturbation = 1.0; ///< initial position jitter amplitude [m]
    std::uint64_t seed = 0;
    int sample_stride = 50;       ///< trajectory recording interval [steps]; 0 = off
    double metrics_window = 300.0; ///< averaging window for RunMetrics [s]

    void validate() const;
    DrivingContext context() const;
};

enum class TerminationStatus { Completed, Collision, DomainError };

const char* to_string(TerminationStatus s);

struct TrajRecord {
    double t = 0.0;
    int lane = 0;
    int vid = 0;
    VehicleClass klass = VehicleClass::Human;
    double x = 0.0;
    double v = 0.0;
    double a = 0.0; ///< capped acceleration the vehicle would apply now
};

/// Running safety bookkeeping, updated after every step.
struct SafetyAudit {
    double min_gap = std::numeric_limits<double>::infinity();
    double min_speed = std::numeric_limits<double>::infinity();
    bool count_conserved = true;
    long neg_speed_clamps = 0; ///< steps where v + a*dt dipped below zero
};

struct RunResult {
    TerminationStatus status = TerminationStatus::Completed;
    double end_time = 0.0;
    std::string error;

    std::vector<TrajRecord> trajectory;
    EventLog events;

    std::vector<double> sample_times;                   ///< one entry per step + t=0
    std::vector<std::vector<double>> lane_variance;     ///< [lane][sample]
    std::vector<std::vector<double>> lane_mean_speed;   ///< [lane][sample]

    SafetyAudit audit;
    RoadState final_state;
    RunMetrics metrics;
};

/// Initial road per the config: uniform spacing with jittered positions
/// (redrawn per lane until all gaps clear the vehicle length, max 100 tries),
/// equilibrium speeds, collaborative drivers at evenly spread indices, and —
/// applied last — the AV conversion of av_lane's lowest-position vehicle.
RoadState init_state(const SimConfig& cfg);

struct StepOutcome {
    bool av_override = false;  ///< AV's safety cap engaged during this step
    double av_accel = 0.0;     ///< the AV's applied acceleration
    long neg_speed_clamps = 0;
};

/// One explicit-Euler step with frozen-state acceleration evaluation:
/// every capped acceleration is computed from the state at entry, then
/// v <- max(0, v + a dt) and x <- (x + v_old dt) mod L. Lane order is
/// restored by rotating wrapped vehicles; the clock advances by dt.
/// Throws CollisionError when any resulting gap falls to the vehicle length.
StepOutcome step(RoadState& road, const DrivingContext& ctx, double dt);

/// Full simulation: step loop with the lane-change pass (and the AV's lateral
/// decision) every lc.iter_lc steps, per-step variance recording, trajectory
/// sampling, and safety audits. Integration errors terminate the run and are
/// reported in the result status instead of propagating.
RunResult run(const SimConfig& cfg);

/// Time averages over the trailing `window` seconds of the recorded series
/// plus event totals. Runs that did not complete yield valid == false.
RunMetrics aggregate_run(const RunResult& result, double window, double dt);

} // namespace ringsim

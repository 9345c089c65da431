#include "ringsim/engine.hpp"

#include "ringsim/av_control.hpp"
#include "ringsim/dynamics.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/lane_change.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace ringsim {

void SimConfig::validate() const {
    if (lanes < 1)
        throw SimDomainError("config: need at least one lane");
    if (lane_lengths.size() != static_cast<std::size_t>(lanes) ||
        n_per_lane.size() != static_cast<std::size_t>(lanes))
        throw SimDomainError("config: lane_lengths/n_per_lane must have one entry per lane");
    if (dt <= 0.0 || t_f <= 0.0)
        throw SimDomainError("config: dt and t_f must be positive");
    model.validate();
    if (idm_enabled) idm.validate();
    lc.validate();
    ctl.validate(model.l_v);
    for (int j = 0; j < lanes; ++j) {
        if (n_per_lane[static_cast<std::size_t>(j)] < 1)
            throw SimDomainError("config: every lane needs at least one vehicle");
        const double L = lane_lengths[static_cast<std::size_t>(j)];
        if (L <= 0.0)
            throw SimDomainError("config: lane length must be positive");
        if (static_cast<double>(n_per_lane[static_cast<std::size_t>(j)]) * model.l_v >= L)
            throw SimDomainError("config: vehicles do not fit on lane " + std::to_string(j));
    }
    if (collab_fraction < 0.0 || collab_fraction > 1.0)
        throw SimDomainError("config: collab_fraction must be in [0, 1]");
    if (collab_fraction > 0.0 && (alpha_s < 0.0 || beta_s < 0.0))
        throw SimDomainError("config: collaborative weights must be nonnegative");
    if (av_enabled && (av_lane < 0 || av_lane >= lanes))
        throw SimDomainError("config: av_lane out of range");
    if (perturbation < 0.0)
        throw SimDomainError("config: perturbation amplitude must be nonnegative");
    if (sample_stride < 0)
        throw SimDomainError("config: sample_stride must be nonnegative");
    if (metrics_window <= 0.0 || metrics_window > t_f)
        throw SimDomainError("config: metrics_window must be in (0, t_f]");
}

DrivingContext SimConfig::context() const {
    DrivingContext ctx;
    ctx.model = model;
    ctx.idm_enabled = idm_enabled;
    ctx.idm = idm;
    ctx.av = ctl;
    return ctx;
}

const char* to_string(TerminationStatus s) {
    switch (s) {
    case TerminationStatus::Completed: return "completed";
    case TerminationStatus::Collision: return "collision";
    case TerminationStatus::DomainError: return "domain_error";
    }
    return "?";
}

namespace {

/// Uniform draw on [-amp, amp] from the generator's raw 64-bit output, so the
/// stream does not depend on the standard library's distribution internals.
double symmetric_uniform(std::mt19937_64& rng, double amp) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0, 1)
    return (2.0 * u - 1.0) * amp;
}

} // namespace

RoadState init_state(const SimConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);

    RoadState road;
    road.time = 0.0;
    int next_id = 0;
    for (int j = 0; j < cfg.lanes; ++j) {
        LaneState lane;
        lane.lane_id = j;
        lane.length = cfg.lane_lengths[static_cast<std::size_t>(j)];
        const int n = cfg.n_per_lane[static_cast<std::size_t>(j)];
        const double spacing = lane.length / static_cast<double>(n);
        const double v_eq = equilibrium_speed(spacing, cfg.model);

        bool placed = false;
        for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
            lane.vehicles.clear();
            for (int i = 0; i < n; ++i) {
                VehicleState v;
                v.id = next_id + i;
                double x = spacing * static_cast<double>(i) +
                           symmetric_uniform(rng, cfg.perturbation);
                x = std::fmod(x, lane.length);
                if (x < 0.0) x += lane.length;
                v.pos = x;
                v.vel = v_eq;
                v.alpha_i = cfg.model.alpha;
                v.beta_i = cfg.model.beta;
                lane.vehicles.push_back(v);
            }
            std::sort(lane.vehicles.begin(), lane.vehicles.end(),
                      [](const VehicleState& a, const VehicleState& b) {
                          return a.pos < b.pos;
                      });
            placed = lane_gaps_ok(lane, cfg.model.l_v);
        }
        if (!placed)
            throw SimDomainError("init_state: could not place lane " + std::to_string(j) +
                                 " without overlaps after 100 attempts");

        if (cfg.collab_fraction > 0.0) {
            // ceil with a guard so p = count/n reproduces the count exactly
            // even when the division is not representable.
            int m = static_cast<int>(
                std::ceil(cfg.collab_fraction * static_cast<double>(n) - 1e-9));
            m = std::min(std::max(m, 1), n);
            for (int c = 0; c < m; ++c) {
                const int idx = static_cast<int>(std::llround(
                    static_cast<double>(c) * static_cast<double>(n) / static_cast<double>(m)));
                auto& v = lane.vehicles[static_cast<std::size_t>(std::min(idx, n - 1))];
                v.klass = VehicleClass::Collaborative;
                v.alpha_i = cfg.alpha_s;
                v.beta_i = cfg.beta_s;
            }
        }

        next_id += n;
        road.lanes.push_back(std::move(lane));
    }

    if (cfg.av_enabled) {
        auto& v = road.lanes[static_cast<std::size_t>(cfg.av_lane)].vehicles.front();
        v.klass = VehicleClass::AV;
        v.alpha_i = 0.0;
        v.beta_i = 0.0;
    }
    return road;
}

StepOutcome step(RoadState& road, const DrivingContext& ctx, double dt) {
    StepOutcome out;

    // Frozen-state evaluation: all accelerations from the state at entry.
    std::vector<std::vector<double>> accels(road.lanes.size());
    for (std::size_t lj = 0; lj < road.lanes.size(); ++lj) {
        const LaneState& lane = road.lanes[lj];
        accels[lj].resize(lane.vehicles.size());
        for (std::size_t i = 0; i < lane.vehicles.size(); ++i) {
            const auto gl = gap_and_leader(lane, i);
            const AccelResult r =
                accel_for(ctx, lane.vehicles[i], gl.gap, lane.vehicles[gl.leader].vel,
                          lane.vehicles.size(), lane.length, road.time);
            accels[lj][i] = r.a;
            if (lane.vehicles[i].klass == VehicleClass::AV) {
                out.av_override = r.av_override;
                out.av_accel = r.a;
            }
        }
    }

    for (std::size_t lj = 0; lj < road.lanes.size(); ++lj) {
        LaneState& lane = road.lanes[lj];
        for (std::size_t i = 0; i < lane.vehicles.size(); ++i) {
            VehicleState& v = lane.vehicles[i];
            const double v_old = v.vel;
            double v_new = v_old + accels[lj][i] * dt;
            if (v_new < 0.0) {
                v_new = 0.0;
                out.neg_speed_clamps += 1;
            }
            v.vel = v_new;
            double x = std::fmod(v.pos + v_old * dt, lane.length);
            if (x < 0.0) x += lane.length;
            v.pos = x;
        }

        // Wrapping moves a contiguous block past position 0; the array is a
        // rotation of the sorted order, so one rotate restores it.
        const std::size_t n = lane.vehicles.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (lane.vehicles[i].pos > lane.vehicles[i + 1].pos) {
                std::rotate(lane.vehicles.begin(),
                            lane.vehicles.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            lane.vehicles.end());
                break;
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            const auto gl = gap_and_leader(lane, i);
            if (n > 1 && gl.gap <= ctx.model.l_v)
                throw CollisionError(
                    "collision in lane " + std::to_string(lane.lane_id) + " at t=" +
                    std::to_string(road.time + dt) + ": vehicle " +
                    std::to_string(lane.vehicles[i].id) + " reached vehicle " +
                    std::to_string(lane.vehicles[gl.leader].id));
        }
    }

    road.time += dt;
    return out;
}

namespace {

void record_trajectory(const RoadState& road, const DrivingContext& ctx,
                       std::vector<TrajRecord>& out) {
    for (const auto& lane : road.lanes) {
        for (std::size_t i = 0; i < lane.vehicles.size(); ++i) {
            const auto& v = lane.vehicles[i];
            const auto gl = gap_and_leader(lane, i);
            const double a =
                accel_for(ctx, v, gl.gap, lane.vehicles[gl.leader].vel,
                          lane.vehicles.size(), lane.length, road.time)
                    .a;
            out.push_back(TrajRecord{road.time, lane.lane_id, v.id, v.klass, v.pos,
                                     v.vel, a});
        }
    }
}

void record_series(const RoadState& road, RunResult& res,
                   std::vector<VarianceWindow>& windows) {
    res.sample_times.push_back(road.time);
    for (std::size_t lj = 0; lj < road.lanes.size(); ++lj) {
        const double var = lane_speed_variance(road.lanes[lj]);
        res.lane_variance[lj].push_back(var);
        res.lane_mean_speed[lj].push_back(lane_mean_speed(road.lanes[lj]));
        windows[lj].push(var);
    }
}

void update_audit(const RoadState& road, std::size_t expected_count, SafetyAudit& audit) {
    std::size_t count = 0;
    for (const auto& lane : road.lanes) {
        count += lane.vehicles.size();
        for (std::size_t i = 0; i < lane.vehicles.size(); ++i) {
            audit.min_speed = std::min(audit.min_speed, lane.vehicles[i].vel);
            if (lane.vehicles.size() > 1) {
                const auto gl = gap_and_leader(lane, i);
                audit.min_gap = std::min(audit.min_gap, gl.gap);
            }
        }
    }
    if (count != expected_count) audit.count_conserved = false;
}

} // namespace

RunResult run(const SimConfig& cfg) {
    cfg.validate();
    const DrivingContext ctx = cfg.context();

    RunResult res;
    res.lane_variance.resize(static_cast<std::size_t>(cfg.lanes));
    res.lane_mean_speed.resize(static_cast<std::size_t>(cfg.lanes));

    RoadState road = init_state(cfg);
    const std::size_t total = road.total_vehicles();
    const long n_steps = std::lround(cfg.t_f / cfg.dt);

    std::vector<VarianceWindow> windows;
    for (int j = 0; j < cfg.lanes; ++j)
        windows.emplace_back(cfg.ctl.t1, cfg.dt);

    int av_vid = -1;
    if (cfg.av_enabled)
        for (const auto& v : road.lanes[static_cast<std::size_t>(cfg.av_lane)].vehicles)
            if (v.klass == VehicleClass::AV) av_vid = v.id;

    bool prev_override = false;
    bool ramp_done = false;

    try {
        record_series(road, res, windows);
        if (cfg.sample_stride > 0) record_trajectory(road, ctx, res.trajectory);
        update_audit(road, total, res.audit);

        for (long k = 0; k < n_steps; ++k) {
            if (k % cfg.lc.iter_lc == 0) {
                auto events = lane_change_pass(road, ctx, cfg.lc, road.time);
                res.events.insert(res.events.end(), events.begin(), events.end());

                if (cfg.av_enabled) {
                    const auto d =
                        av_lateral_decide(road, av_vid, windows, ctx, cfg.lc, road.time);
                    if (d) {
                        const auto ref = find_vehicle(road, av_vid);
                        const auto ha =
                            hypothetical_accels(road, av_vid, d->to_lane, ctx, road.time);
                        move_vehicle(road, av_vid, ref->lane, d->to_lane, cfg.model.l_v);
                        res.events.push_back(Event{road.time, av_vid,
                                                   EventKind::AvLaneChange, ref->lane,
                                                   d->to_lane, ha ? ha->a_self_now : 0.0,
                                                   ha ? ha->a_self_new : 0.0,
                                                   ha ? ha->a_new_follower : 0.0});
                    }
                }
            }

            const StepOutcome so = step(road, ctx, cfg.dt);
            road.time = static_cast<double>(k + 1) * cfg.dt; // keep the clock exact
            res.audit.neg_speed_clamps += so.neg_speed_clamps;

            if (cfg.av_enabled) {
                if (so.av_override != prev_override) {
                    const auto ref = find_vehicle(road, av_vid);
                    res.events.push_back(Event{road.time, av_vid, EventKind::AvOverride,
                                               ref->lane, ref->lane, so.av_accel,
                                               so.av_override ? 1.0 : 0.0, 0.0});
                    prev_override = so.av_override;
                }
                if (!ramp_done && road.time >= cfg.ctl.t_tr) {
                    const auto ref = find_vehicle(road, av_vid);
                    res.events.push_back(Event{road.time, av_vid, EventKind::AvRamp,
                                               ref->lane, ref->lane, so.av_accel, 0.0,
                                               0.0});
                    ramp_done = true;
                }
            }

            record_series(road, res, windows);
            if (cfg.sample_stride > 0 && (k + 1) % cfg.sample_stride == 0)
                record_trajectory(road, ctx, res.trajectory);
            update_audit(road, total, res.audit);
        }
        res.status = TerminationStatus::Completed;
    } catch (const CollisionError& e) {
        res.status = TerminationStatus::Collision;
        res.error = e.what();
    } catch (const SimDomainError& e) {
        res.status = TerminationStatus::DomainError;
        res.error = e.what();
    }

    res.end_time = road.time;
    res.final_state = std::move(road);
    res.metrics = aggregate_run(res, cfg.metrics_window, cfg.dt);
    return res;
}

RunMetrics aggregate_run(const RunResult& result, double window, double dt) {
    RunMetrics m;
    m.window = window;
    if (result.status != TerminationStatus::Completed)
        return m; // valid stays false; excluded from batch averages

    const std::size_t n_samples = result.sample_times.size();
    std::size_t take = static_cast<std::size_t>(std::llround(window / dt));
    if (take > n_samples) take = n_samples;
    if (take == 0) return m;
    const std::size_t first = n_samples - take;

    double var_acc = 0.0;
    for (const auto& series : result.lane_variance) {
        double acc = 0.0;
        for (std::size_t i = first; i < n_samples; ++i) acc += series[i];
        var_acc += acc / static_cast<double>(take);
    }
    m.mean_last_window_variance =
        var_acc / static_cast<double>(result.lane_variance.size());

    for (const auto& series : result.lane_mean_speed) {
        double acc = 0.0;
        for (std::size_t i = first; i < n_samples; ++i) acc += series[i];
        m.mean_speed_per_lane.push_back(acc / static_cast<double>(take));
    }

    for (const auto& e : result.events) {
        if (e.kind == EventKind::LaneChange) m.total_lane_changes += 1;
        if (e.kind == EventKind::AvLaneChange) {
            m.total_lane_changes += 1;
            m.av_lane_changes += 1;
        }
    }
    m.valid = true;
    return m;
}

} // namespace ringsim

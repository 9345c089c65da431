#pragma once

#include "ringsim/road.hpp"

#include <cstddef>
#include <vector>

namespace ringsim {

/// Population variance of the lane's speeds (divide by N, not N-1).
/// Defined as 0 for an empty or single-vehicle lane.
double lane_speed_variance(const LaneState& lane);

/// Arithmetic mean speed of the lane; 0 for an empty lane.
double lane_mean_speed(const LaneState& lane);

/// Scalars summarizing one completed run over its last averaging window.
struct RunMetrics {
    bool valid = false;        ///< false for runs that did not complete
    double window = 300.0;     ///< averaging window length [s]
    double mean_last_window_variance = 0.0; ///< lane-and-time average [m^2/s^2]
    std::vector<double> mean_speed_per_lane;   ///< time averages [m/s]
    long total_lane_changes = 0; ///< executed moves, drivers and AV combined
    long av_lane_changes = 0;    ///< executed AV moves only
};

struct BatchScalar {
    double mean = 0.0;
    double stddev = 0.0; ///< population deviation; 0 for a single run
};

/// Across-seed summary of one experiment cell.
struct BatchMetrics {
    std::size_t seeds = 0;    ///< valid runs that entered the averages
    std::size_t failures = 0; ///< runs excluded because they did not complete
    BatchScalar variance;     ///< of mean_last_window_variance
    BatchScalar speed;        ///< of the per-run across-lane mean speed
    BatchScalar lane_changes; ///< of total_lane_changes
};

/// Mean/deviation per scalar over the valid runs. Values are accumulated in
/// sorted order so the result is identical for any input permutation.
/// Throws SimDomainError for an empty input list.
BatchMetrics aggregate_batch(const std::vector<RunMetrics>& runs);

} // namespace ringsim

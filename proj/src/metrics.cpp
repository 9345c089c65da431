#include "ringsim/metrics.hpp"

#include "ringsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace ringsim {

double lane_speed_variance(const LaneState& lane) {
    const std::size_t n = lane.vehicles.size();
    if (n <= 1) return 0.0;
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& v : lane.vehicles) {
        sum += v.vel;
        sum_sq += v.vel * v.vel;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = sum_sq / static_cast<double>(n) - mean * mean;
    return var > 0.0 ? var : 0.0; // guard fp cancellation at uniform speeds
}

double lane_mean_speed(const LaneState& lane) {
    if (lane.vehicles.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& v : lane.vehicles) sum += v.vel;
    return sum / static_cast<double>(lane.vehicles.size());
}

namespace {

BatchScalar scalar_stats(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return BatchScalar{mean, std::sqrt(ss / n)};
}

} // namespace

BatchMetrics aggregate_batch(const std::vector<RunMetrics>& runs) {
    if (runs.empty())
        throw SimDomainError("aggregate_batch: empty run list");

    std::vector<double> vars, speeds, changes;
    BatchMetrics out;
    for (const auto& r : runs) {
        if (!r.valid) {
            out.failures += 1;
            continue;
        }
        vars.push_back(r.mean_last_window_variance);
        double sp = 0.0;
        for (double s : r.mean_speed_per_lane) sp += s;
        if (!r.mean_speed_per_lane.empty())
            sp /= static_cast<double>(r.mean_speed_per_lane.size());
        speeds.push_back(sp);
        changes.push_back(static_cast<double>(r.total_lane_changes));
    }
    out.seeds = vars.size();
    if (out.seeds > 0) {
        out.variance = scalar_stats(std::move(vars));
        out.speed = scalar_stats(std::move(speeds));
        out.lane_changes = scalar_stats(std::move(changes));
    }
    return out;
}

} // namespace ringsim

#pragma once

#include "ringsim/engine.hpp"
#include "ringsim/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ringsim {

/// Inclusive linspace with `steps` points (steps >= 2; steps == 1 needs
/// lo == hi). Endpoints are exact.
std::vector<double> linspace(double lo, double hi, int steps);

/// Stateless seed mixer: every (cell, replicate) gets an independent,
/// reproducible stream regardless of execution order.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c);

struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
};

/// A grid of (delta_i, delta_s) cells, each averaged over `seeds` replicates.
struct SweepSpec {
    SimConfig base;
    AxisSpec di{0.6, 3.0, 13};
    AxisSpec ds{0.5, 5.0, 10};
    int seeds = 100;
    bool av_enabled = false;
    int jobs = 1; ///< worker threads; the output does not depend on it
};

struct SweepCell {
    double delta_i = 0.0;
    double delta_s = 0.0;
    BatchMetrics stats;
};

struct SweepTable {
    std::vector<double> di_values;
    std::vector<double> ds_values;
    std::vector<SweepCell> cells; ///< row-major: di outer, ds inner
};

/// Runs every (cell, seed) job — in parallel when jobs > 1 — and aggregates
/// per cell in fixed index order, so the table is byte-reproducible.
SweepTable run_sweep(const SweepSpec& spec);

/// CSV with header delta_i,delta_s,seeds,mean_var,std_var,mean_speed,
/// mean_lane_changes; `seeds` counts the runs that completed.
std::string sweep_csv(const SweepTable& table);

/// Inverse of sweep_csv; throws ConfigError on unknown columns or a ragged
/// (non-rectangular) grid.
SweepTable parse_sweep_table_csv(const std::string& text);

/// Collaborative-share curve on the single-lane base config.
struct CollabSpec {
    SimConfig base;
    std::vector<int> counts; ///< collaborative vehicles out of n
    int seeds = 10;
    int jobs = 1;
};

struct CollabRow {
    int count = 0;
    double p = 0.0;
    BatchMetrics stats;
};

/// One aggregated point per count, ordered by increasing p.
std::vector<CollabRow> run_collab(const CollabSpec& spec);

/// CSV with header p,count,seeds,mean_var,std_var,mean_speed,mean_lane_changes.
std::string collab_csv(const std::vector<CollabRow>& rows);

} // namespace ringsim

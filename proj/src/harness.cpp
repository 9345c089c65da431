#include "ringsim/harness.hpp"

#include "ringsim/errors.hpp"
#include "ringsim/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>

namespace ringsim {

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1)
        throw SimDomainError("linspace: need at least one point");
    if (steps == 1) {
        if (lo != hi)
            throw SimDomainError("linspace: single point needs lo == hi");
        return {lo};
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        if (i == steps - 1)
            out.push_back(hi); // exact endpoint
        else
            out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(steps - 1));
    }
    return out;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Runs `total` independent jobs on `jobs` threads. Each job writes only its
/// own preassigned slot, so results are identical for any thread count.
void run_job_pool(std::size_t total, int jobs, const std::function<void(std::size_t)>& work) {
    if (jobs <= 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) break;
            work(i);
        }
    };
    std::vector<std::thread> threads;
    const std::size_t n_threads =
        std::min<std::size_t>(static_cast<std::size_t>(jobs), total);
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
}

} // namespace

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c) {
    std::uint64_t s = base + 0x9E3779B97F4A7C15ULL;
    s = mix64(s ^ mix64(a + 0x9E3779B97F4A7C15ULL));
    s = mix64(s ^ mix64(b + 0xD1B54A32D192ED03ULL));
    s = mix64(s ^ mix64(c + 0x2545F4914F6CDD1DULL));
    return s;
}

SweepTable run_sweep(const SweepSpec& spec) {
    if (spec.seeds < 1)
        throw SimDomainError("run_sweep: need at least one seed");
    SweepTable table;
    table.di_values = linspace(spec.di.min, spec.di.max, spec.di.steps);
    table.ds_values = linspace(spec.ds.min, spec.ds.max, spec.ds.steps);

    const std::size_t n_di = table.di_values.size();
    const std::size_t n_ds = table.ds_values.size();
    const std::size_t n_cells = n_di * n_ds;
    const std::size_t n_seeds = static_cast<std::size_t>(spec.seeds);

    std::vector<RunMetrics> slots(n_cells * n_seeds);
    run_job_pool(slots.size(), spec.jobs, [&](std::size_t job) {
        const std::size_t cell = job / n_seeds;
        const std::size_t rep = job % n_seeds;
        const std::size_t di_idx = cell / n_ds;
        const std::size_t ds_idx = cell % n_ds;

        SimConfig cfg = spec.base;
        cfg.lc.delta_i = table.di_values[di_idx];
        cfg.lc.delta_s = table.ds_values[ds_idx];
        cfg.av_enabled = spec.av_enabled;
        cfg.sample_stride = 0; // no trajectories for batch runs
        cfg.seed = mix_seed(spec.base.seed, di_idx, ds_idx, rep);
        slots[job] = run(cfg).metrics;
    });

    table.cells.reserve(n_cells);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        const std::vector<RunMetrics> runs(
            slots.begin() + static_cast<std::ptrdiff_t>(cell * n_seeds),
            slots.begin() + static_cast<std::ptrdiff_t>((cell + 1) * n_seeds));
        SweepCell out;
        out.delta_i = table.di_values[cell / n_ds];
        out.delta_s = table.ds_values[cell % n_ds];
        out.stats = aggregate_batch(runs);
        table.cells.push_back(out);
    }
    return table;
}

std::string sweep_csv(const SweepTable& table) {
    std::string out = "delta_i,delta_s,seeds,mean_var,std_var,mean_speed,mean_lane_changes\n";
    for (const auto& c : table.cells) {
        out += csv_row({format_double(c.delta_i), format_double(c.delta_s),
                        std::to_string(c.stats.seeds), format_double(c.stats.variance.mean),
                        format_double(c.stats.variance.stddev),
                        format_double(c.stats.speed.mean),
                        format_double(c.stats.lane_changes.mean)});
    }
    return out;
}

SweepTable parse_sweep_table_csv(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty())
        throw ConfigError("sweep table: empty file");
    if (csv_split(lines[0]) !=
        std::vector<std::string>{"delta_i", "delta_s", "seeds", "mean_var", "std_var",
                                 "mean_speed", "mean_lane_changes"})
        throw ConfigError("sweep table: unexpected header");

    SweepTable table;
    auto index_of = [](std::vector<double>& axis, double v) {
        for (std::size_t i = 0; i < axis.size(); ++i)
            if (axis[i] == v) return i;
        axis.push_back(v);
        return axis.size() - 1;
    };

    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const auto f = csv_split(lines[ln]);
        if (f.size() != 7)
            throw ConfigError("sweep table: bad field count on line " +
                              std::to_string(ln + 1));
        SweepCell c;
        try {
            c.delta_i = std::stod(f[0]);
            c.delta_s = std::stod(f[1]);
            c.stats.seeds = static_cast<std::size_t>(std::stoul(f[2]));
            c.stats.variance.mean = std::stod(f[3]);
            c.stats.variance.stddev = std::stod(f[4]);
            c.stats.speed.mean = std::stod(f[5]);
            c.stats.lane_changes.mean = std::stod(f[6]);
        } catch (const std::exception&) {
            throw ConfigError("sweep table: bad value on line " + std::to_string(ln + 1));
        }
        index_of(table.di_values, c.delta_i);
        index_of(table.ds_values, c.delta_s);
        table.cells.push_back(c);
    }

    if (table.cells.size() != table.di_values.size() * table.ds_values.size())
        throw ConfigError("sweep table: grid is ragged");
    // Every (di, ds) pair must appear exactly once.
    std::vector<char> seen(table.cells.size(), 0);
    for (const auto& c : table.cells) {
        std::size_t di_idx = 0, ds_idx = 0;
        for (std::size_t i = 0; i < table.di_values.size(); ++i)
            if (table.di_values[i] == c.delta_i) di_idx = i;
        for (std::size_t i = 0; i < table.ds_values.size(); ++i)
            if (table.ds_values[i] == c.delta_s) ds_idx = i;
        char& flag = seen[di_idx * table.ds_values.size() + ds_idx];
        if (flag)
            throw ConfigError("sweep table: duplicate cell");
        flag = 1;
    }
    return table;
}

std::vector<CollabRow> run_collab(const CollabSpec& spec) {
    if (spec.seeds < 1)
        throw SimDomainError("run_collab: need at least one seed");
    if (spec.counts.empty())
        throw SimDomainError("run_collab: empty count list");
    const int n = spec.base.n_per_lane.at(0);
    for (int c : spec.counts)
        if (c < 0 || c > n)
            throw SimDomainError("run_collab: count out of range");

    std::vector<int> counts = spec.counts;
    std::sort(counts.begin(), counts.end()); // output ordered by increasing p
    const std::size_t n_seeds = static_cast<std::size_t>(spec.seeds);

    std::vector<RunMetrics> slots(counts.size() * n_seeds);
    run_job_pool(slots.size(), spec.jobs, [&](std::size_t job) {
        const std::size_t point = job / n_seeds;
        const std::size_t rep = job % n_seeds;
        SimConfig cfg = spec.base;
        cfg.collab_fraction =
            static_cast<double>(counts[point]) / static_cast<double>(n);
        cfg.av_enabled = false;
        cfg.sample_stride = 0;
        cfg.seed = mix_seed(spec.base.seed, 0x636F6C6CULL, point, rep);
        slots[job] = run(cfg).metrics;
    });

    std::vector<CollabRow> rows;
    for (std::size_t point = 0; point < counts.size(); ++point) {
        const std::vector<RunMetrics> runs(
            slots.begin() + static_cast<std::ptrdiff_t>(point * n_seeds),
            slots.begin() + static_cast<std::ptrdiff_t>((point + 1) * n_seeds));
        CollabRow row;
        row.count = counts[point];
        row.p = static_cast<double>(counts[point]) / static_cast<double>(n);
        row.stats = aggregate_batch(runs);
        rows.push_back(row);
    }
    return rows;
}

std::string collab_csv(const std::vector<CollabRow>& rows) {
    std::string out = "p,count,seeds,mean_var,std_var,mean_speed,mean_lane_changes\n";
    for (const auto& r : rows) {
        out += csv_row({format_double(r.p), std::to_string(r.count),
                        std::to_string(r.stats.seeds), format_double(r.stats.variance.mean),
                        format_double(r.stats.variance.stddev),
                        format_double(r.stats.speed.mean),
                        format_double(r.stats.lane_changes.mean)});
    }
    return out;
}

} // namespace ringsim

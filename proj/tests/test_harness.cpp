#include <doctest.h>

#include "ringsim/errors.hpp"
#include "ringsim/harness.hpp"

#include <set>
#include <vector>

using namespace ringsim;

namespace {

/// Small two-lane setup that still exercises lane changes, sized so a whole
/// grid of runs finishes in well under a second.
SimConfig tiny_base() {
    SimConfig cfg;
    cfg.lanes = 2;
    cfg.lane_lengths = {80.0, 80.0};
    cfg.n_per_lane = {8, 8};
    cfg.av_lane = 0;
    cfg.t_f = 60.0;
    cfg.metrics_window = 20.0;
    cfg.perturbation = 1.0;
    cfg.seed = 17;
    return cfg;
}

} // namespace

TEST_CASE("linspace") {
    const auto v = linspace(0.6, 3.0, 13);
    REQUIRE(v.size() == 13);
    CHECK(v.front() == 0.6);
    CHECK(v.back() == 3.0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
    CHECK(v[6] == doctest::Approx(1.8));

    CHECK(linspace(0.0, 1.0, 2) == std::vector<double>{0.0, 1.0});
    CHECK(linspace(2.0, 2.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), SimDomainError);
    CHECK_THROWS_AS(linspace(0.0, 1.0, 1), SimDomainError);
}

TEST_CASE("seed mixing") {
    CHECK(mix_seed(42, 1, 2, 3) == mix_seed(42, 1, 2, 3));
    std::set<std::uint64_t> seen;
    for (std::uint64_t base : {0ULL, 42ULL})
        for (std::uint64_t a = 0; a < 4; ++a)
            for (std::uint64_t b = 0; b < 4; ++b)
                for (std::uint64_t c = 0; c < 4; ++c)
                    seen.insert(mix_seed(base, a, b, c));
    CHECK(seen.size() == 2 * 4 * 4 * 4); // no collisions over a small lattice
}

TEST_CASE("grid sweep") {
    SUBCASE("a one-cell sweep equals the direct run, bit for bit") {
        SweepSpec spec;
        spec.base = tiny_base();
        spec.di = {1.0, 1.0, 1};
        spec.ds = {0.5, 0.5, 1};
        spec.seeds = 1;
        const auto table = run_sweep(spec);
        REQUIRE(table.cells.size() == 1);

        SimConfig cfg = spec.base;
        cfg.lc.delta_i = 1.0;
        cfg.lc.delta_s = 0.5;
        cfg.av_enabled = false;
        cfg.sample_stride = 0;
        cfg.seed = mix_seed(spec.base.seed, 0, 0, 0);
        const auto res = run(cfg);
        REQUIRE(res.metrics.valid);

        const auto& cell = table.cells[0].stats;
        CHECK(cell.seeds == 1);
        CHECK(cell.failures == 0);
        CHECK(cell.variance.mean == res.metrics.mean_last_window_variance);
        CHECK(cell.variance.stddev == 0.0);
        double speed = 0.0;
        for (double s : res.metrics.mean_speed_per_lane) speed += s;
        speed /= static_cast<double>(res.metrics.mean_speed_per_lane.size());
        CHECK(cell.speed.mean == speed);
        CHECK(cell.lane_changes.mean ==
              static_cast<double>(res.metrics.total_lane_changes));
    }

    SUBCASE("the table does not depend on the worker count") {
        SweepSpec spec;
        spec.base = tiny_base();
        spec.di = {0.6, 3.0, 2};
        spec.ds = {0.5, 5.0, 2};
        spec.seeds = 3;
        spec.jobs = 1;
        const std::string serial = sweep_csv(run_sweep(spec));
        spec.jobs = 4;
        const std::string threaded = sweep_csv(run_sweep(spec));
        CHECK(serial == threaded);
        CHECK(serial.find("delta_i,delta_s,") == 0);
    }

    SUBCASE("bad axis or seed counts are rejected") {
        SweepSpec spec;
        spec.base = tiny_base();
        spec.seeds = 0;
        CHECK_THROWS_AS(run_sweep(spec), SimDomainError);
    }
}

TEST_CASE("collaborative-share curve") {
    SimConfig base;
    base.lanes = 1;
    base.lane_lengths = {80.0};
    base.n_per_lane = {8};
    base.av_lane = 0;
    base.t_f = 60.0;
    base.metrics_window = 20.0;
    base.perturbation = 1.0;
    base.seed = 23;

    CollabSpec spec;
    spec.base = base;
    spec.counts = {8, 0}; // intentionally unsorted
    spec.seeds = 2;

    const auto rows = run_collab(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].count == 0);
    CHECK(rows[0].p == 0.0);
    CHECK(rows[1].count == 8);
    CHECK(rows[1].p == 1.0);
    CHECK(rows[0].stats.seeds == 2);
    CHECK(rows[1].stats.seeds == 2);

    SUBCASE("serialization is stable across worker counts") {
        const std::string serial = collab_csv(rows);
        CHECK(serial.find("p,count,seeds,mean_var,std_var,mean_speed,"
                          "mean_lane_changes\n") == 0);
        auto threaded_spec = spec;
        threaded_spec.jobs = 4;
        CHECK(collab_csv(run_collab(threaded_spec)) == serial);
    }

    SUBCASE("out-of-range counts are rejected") {
        auto bad = spec;
        bad.counts = {9};
        CHECK_THROWS_AS(run_collab(bad), SimDomainError);
        bad.counts = {};
        CHECK_THROWS_AS(run_collab(bad), SimDomainError);
    }
}

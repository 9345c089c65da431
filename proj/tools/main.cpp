#include "ringsim/config.hpp"
#include "ringsim/dynamics.hpp"
#include "ringsim/engine.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/harness.hpp"
#include "ringsim/heatmap.hpp"
#include "ringsim/io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

ringsim::AxisSpec parse_axis(const std::string& flag, const std::string& s) {
    const std::size_t c1 = s.find(':');
    const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                                     : s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ringsim::ConfigError(flag + ": expected MIN:MAX:STEPS, got '" + s + "'");
    ringsim::AxisSpec axis;
    try {
        axis.min = std::stod(s.substr(0, c1));
        axis.max = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
        axis.steps = std::stoi(s.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ringsim::ConfigError(flag + ": bad MIN:MAX:STEPS value '" + s + "'");
    }
    return axis;
}

std::vector<int> parse_counts(const std::string& s) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t pos = s.find(',', start);
        const std::string part =
            (pos == std::string::npos) ? s.substr(start) : s.substr(start, pos - start);
        try {
            out.push_back(std::stoi(part));
        } catch (const std::exception&) {
            throw ringsim::ConfigError("--counts: bad entry '" + part + "'");
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

void write_out(const std::string& dir, const std::string& name,
               const std::string& content) {
    std::filesystem::create_directories(dir);
    ringsim::write_text_file((std::filesystem::path(dir) / name).string(), content);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic multi-lane ring-road traffic simulator"};
    app.require_subcommand(1);

    // ---- run ----
    auto* cmd_run = app.add_subcommand("run", "simulate one configuration");
    std::string run_config;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false;
    std::string traj_path, events_path, metrics_path;
    cmd_run->add_option("--config", run_config, "config file")->required();
    cmd_run->add_option("--seed", run_seed, "override the config's seed")
        ->each([&](const std::string&) { run_seed_set = true; });
    cmd_run->add_option("--traj", traj_path, "write trajectory CSV here");
    cmd_run->add_option("--events", events_path, "write event CSV here");
    cmd_run->add_option("--metrics", metrics_path, "write metrics JSON here");

    // ---- sweep ----
    auto* cmd_sweep = app.add_subcommand("sweep", "grid of lane-change thresholds");
    std::string sweep_config, di_arg, ds_arg, av_arg = "off", preset, sweep_out;
    int sweep_seeds = -1, sweep_jobs = 1;
    cmd_sweep->add_option("--config", sweep_config, "base config file")->required();
    cmd_sweep->add_option("--di", di_arg, "incentive axis MIN:MAX:STEPS");
    cmd_sweep->add_option("--ds", ds_arg, "safety axis MIN:MAX:STEPS");
    cmd_sweep->add_option("--seeds", sweep_seeds, "replicates per cell");
    cmd_sweep->add_option("--av", av_arg, "on|off: simulate with the AV")
        ->check(CLI::IsMember({"on", "off"}));
    cmd_sweep->add_option("--out", sweep_out, "output directory")->required();
    cmd_sweep->add_option("--preset", preset, "quick|paper scale")
        ->check(CLI::IsMember({"quick", "paper"}));
    cmd_sweep->add_option("--jobs", sweep_jobs, "worker threads");

    // ---- collab ----
    auto* cmd_collab = app.add_subcommand("collab", "collaborative-share curve");
    std::string collab_config, counts_arg, collab_out;
    int collab_seeds = 10, collab_jobs = 1;
    cmd_collab->add_option("--config", collab_config, "base config file")->required();
    cmd_collab->add_option("--counts", counts_arg, "comma list of collaborative counts")
        ->required();
    cmd_collab->add_option("--seeds", collab_seeds, "replicates per point")->required();
    cmd_collab->add_option("--out", collab_out, "output directory")->required();
    cmd_collab->add_option("--jobs", collab_jobs, "worker threads");

    // ---- stability ----
    auto* cmd_stab = app.add_subcommand("stability", "uniform-flow stability report");
    double st_alpha = 0.5, st_beta = 20.0, st_length = 240.0, st_vmax = 9.75;
    int st_n = 24;
    cmd_stab->add_option("--alpha", st_alpha, "relaxation weight")->required();
    cmd_stab->add_option("--beta", st_beta, "follow-the-leader weight")->required();
    cmd_stab->add_option("--n", st_n, "vehicles on the ring")->required();
    cmd_stab->add_option("--length", st_length, "ring length [m]")->required();
    cmd_stab->add_option("--vmax", st_vmax, "asymptotic speed [m/s]");

    // ---- heatmap ----
    auto* cmd_heat = app.add_subcommand("heatmap", "render a sweep table as SVG");
    std::string table_path, metric = "mean_var", heat_out;
    cmd_heat->add_option("--table", table_path, "sweep CSV file")->required();
    cmd_heat->add_option("--metric", metric,
                         "mean_var|std_var|mean_speed|mean_lane_changes");
    cmd_heat->add_option("--out", heat_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_run) {
            ringsim::SimConfig cfg = ringsim::load_config_file(run_config);
            if (run_seed_set) cfg.seed = run_seed;
            const ringsim::RunResult res = ringsim::run(cfg);
            if (!traj_path.empty())
                ringsim::write_text_file(traj_path, ringsim::trajectory_csv(res.trajectory));
            if (!events_path.empty())
                ringsim::write_text_file(events_path, ringsim::events_csv(res.events));
            if (!metrics_path.empty())
                ringsim::write_text_file(metrics_path, ringsim::metrics_json(res));
            std::cout << "status=" << ringsim::to_string(res.status)
                      << " end_time=" << ringsim::format_double(res.end_time)
                      << " mean_last_window_variance="
                      << ringsim::format_double(res.metrics.mean_last_window_variance)
                      << " lane_changes=" << res.metrics.total_lane_changes << "\n";
            if (res.status != ringsim::TerminationStatus::Completed) {
                std::cerr << "error: " << res.error << "\n";
                return 2;
            }
        } else if (*cmd_sweep) {
            ringsim::SweepSpec spec;
            spec.base = ringsim::load_config_file(sweep_config);
            if (preset == "quick") {
                spec.di = ringsim::AxisSpec{0.6, 3.0, 5};
                spec.ds = ringsim::AxisSpec{0.5, 5.0, 5};
                spec.seeds = 10;
                spec.base.t_f = 600.0;
            } else if (preset == "paper") {
                spec.di = ringsim::AxisSpec{0.6, 3.0, 13};
                spec.ds = ringsim::AxisSpec{0.5, 5.0, 10};
                spec.seeds = 100;
                spec.base.t_f = 1000.0;
            }
            if (!di_arg.empty()) spec.di = parse_axis("--di", di_arg);
            if (!ds_arg.empty()) spec.ds = parse_axis("--ds", ds_arg);
            if (sweep_seeds > 0) spec.seeds = sweep_seeds;
            spec.av_enabled = (av_arg == "on");
            spec.jobs = sweep_jobs;
            const ringsim::SweepTable table = ringsim::run_sweep(spec);
            write_out(sweep_out, "sweep.csv", ringsim::sweep_csv(table));
            std::cout << "wrote " << (std::filesystem::path(sweep_out) / "sweep.csv").string()
                      << " (" << table.cells.size() << " cells x " << spec.seeds
                      << " seeds)\n";
        } else if (*cmd_collab) {
            ringsim::CollabSpec spec;
            spec.base = ringsim::load_config_file(collab_config);
            spec.counts = parse_counts(counts_arg);
            spec.seeds = collab_seeds;
            spec.jobs = collab_jobs;
            const auto rows = ringsim::run_collab(spec);
            write_out(collab_out, "collab.csv", ringsim::collab_csv(rows));
            std::cout << "wrote "
                      << (std::filesystem::path(collab_out) / "collab.csv").string() << " ("
                      << rows.size() << " points x " << spec.seeds << " seeds)\n";
        } else if (*cmd_stab) {
            ringsim::ModelParams mp;
            mp.alpha = st_alpha;
            mp.beta = st_beta;
            mp.v_max = st_vmax;
            const auto rep = ringsim::stability_eigen(mp, st_n, st_length);
            std::cout << "n=" << st_n << " length=" << ringsim::format_double(st_length)
                      << " headway=" << ringsim::format_double(st_length / st_n) << "\n";
            std::cout << "printed_criterion lhs=" << ringsim::format_double(rep.paper_lhs)
                      << " rhs=" << ringsim::format_double(rep.paper_rhs)
                      << " unstable=" << (rep.paper_criterion_unstable ? "true" : "false")
                      << "\n";
            std::cout << "eigen max_re=" << ringsim::format_double(rep.eigen_max_real)
                      << " unstable=" << (rep.eigen_unstable ? "true" : "false") << "\n";
        } else if (*cmd_heat) {
            const auto table =
                ringsim::parse_sweep_table_csv(ringsim::read_text_file(table_path));
            ringsim::write_text_file(heat_out, ringsim::render_heatmap_svg(table, metric));
            std::cout << "wrote " << heat_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

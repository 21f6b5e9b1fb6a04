#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "swarm/experiment.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    int jobs = 1;
    std::optional<std::string> out;
    bool traj = false;
};

swarm::ExperimentSpec load(const Flags& f) {
    swarm::ExperimentSpec spec = swarm::load_config(f.config);
    if (f.seed) spec.base.seed = *f.seed;
    if (f.out) spec.output_dir = *f.out;
    return spec;
}

void print_cells(const swarm::ExperimentSpec& spec, const std::vector<swarm::CellSummary>& cells) {
    const auto grid = swarm::expand_grid(spec);
    for (const auto& c : cells) {
        std::printf("cell %zu", c.cell);
        for (const auto& [k, v] : grid[c.cell].labels) std::printf(" %s=%s", k.c_str(), v.c_str());
        std::printf("  order %.4f +- %.4f  speed %.5f  fp/cycle %.3f\n", c.final_order.mean,
                    c.final_order.se, c.mean_speed, c.mean_fp_per_cycle);
    }
}

// Single run of the base configuration: metrics.csv, optional traj.csv, summary.csv, DONE.
int cmd_run(const Flags& f) {
    namespace fs = std::filesystem;
    swarm::ExperimentSpec spec = load(f);
    const fs::path dir(spec.output_dir);
    fs::create_directories(dir);
    fs::remove(dir / "DONE");

    std::ofstream traj;
    if (f.traj) traj.open(dir / "traj.csv");
    const swarm::RunResult r = swarm::run(spec.base, f.traj ? &traj : nullptr);
    std::ofstream metrics(dir / "metrics.csv");
    swarm::write_metrics_csv(metrics, r.records);
    metrics.close();

    swarm::GridCell cell;
    cell.config = spec.base;
    std::ofstream summary(dir / "summary.csv");
    swarm::write_summary_csv(summary, {cell}, {swarm::summarize_cell(0, {r.summary})});
    summary.close();
    if (!metrics || !summary || (f.traj && !traj)) {
        std::cerr << "simcli: failed writing outputs in " << dir << "\n";
        return 1;
    }
    std::ofstream(dir / "DONE") << "ok\n";
    std::printf("final order %.4f  speed %.5f  fp/cycle %.3f  neighbors %.2f\n", r.summary.final_order,
                r.summary.mean_speed, r.summary.fp_per_cycle, r.summary.mean_neighbors);
    return 0;
}

int cmd_sweep(const Flags& f) {
    const swarm::ExperimentSpec spec = load(f);
    swarm::RunOptions opts;
    opts.jobs = f.jobs;
    opts.trajectories = f.traj;
    const auto cells = swarm::run_experiment(spec, opts);
    print_cells(spec, cells);
    return 0;
}

int cmd_validate(const Flags& f) {
    const swarm::ExperimentSpec spec = load(f);
    const auto grid = swarm::expand_grid(spec);
    std::printf("ok: %zu cell(s) x %d trial(s), model %s, %d robots, %lld ticks\n", grid.size(),
                spec.trials, std::string(swarm::to_string(spec.base.model)).c_str(),
                spec.base.n_robots, static_cast<long long>(spec.base.ticks));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vision-based collective motion simulator"};
    app.require_subcommand(1);
    Flags flags;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", flags.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", flags.seed, "Override the master seed");
        sub->add_option("--jobs", flags.jobs, "Parallel trial workers")->check(CLI::PositiveNumber);
        sub->add_option("--out", flags.out, "Output directory");
        sub->add_flag("--traj", flags.traj, "Write trajectory CSVs");
    };
    auto* run = app.add_subcommand("run", "Run the base configuration once");
    auto* sweep = app.add_subcommand("sweep", "Run every sweep cell for every trial");
    auto* validate = app.add_subcommand("validate", "Parse and check a configuration");
    add_common(run);
    add_common(sweep);
    add_common(validate);

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed()) return cmd_run(flags);
        if (sweep->parsed()) return cmd_sweep(flags);
        return cmd_validate(flags);
    } catch (const swarm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

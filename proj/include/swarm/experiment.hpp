#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swarm/engine.hpp"

namespace swarm {

/// One sweep axis. Values are kept as JSON text and applied to a copy of the base.
struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

struct ExperimentSpec {
    WorldConfig base;
    std::vector<SweepAxis> axes;  // declaration order
    int trials = 50;
    std::string output_dir = "out";
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses a JSON config. Omitted keys keep their defaults; unknown keys, bad types and
/// constraint violations throw ConfigError with the key path in the message.
ExperimentSpec parse_config(const std::string& json_text);
ExperimentSpec load_config(const std::filesystem::path& path);

struct GridCell {
    std::size_t index = 0;
    std::vector<std::pair<std::string, std::string>> labels;  // axis key, CSV-safe value
    WorldConfig config;
};

/// Cartesian product of the axes; the last axis varies fastest. No axes gives one cell.
std::vector<GridCell> expand_grid(const ExperimentSpec& spec);

std::uint64_t child_seed(std::uint64_t master, std::size_t cell, std::size_t trial);

struct CellSummary {
    std::size_t cell = 0;
    int trials = 0;
    MeanSe final_order;
    double mean_fp_per_cycle = 0.0;
    double mean_speed = 0.0;
    double mean_neighbors = 0.0;
    std::int64_t fp_total = 0;
    std::int64_t cycles = 0;
};

struct RunOptions {
    int jobs = 1;
    bool trajectories = false;
    bool write_files = true;
};

/// Runs every cell x trial, writes per-trial metrics CSVs, summary.csv and DONE into
/// spec.output_dir (when write_files), and returns one summary per cell in grid order.
std::vector<CellSummary> run_experiment(const ExperimentSpec& spec, const RunOptions& options);

/// Aggregates trial summaries of one cell, in trial order.
CellSummary summarize_cell(std::size_t cell, const std::vector<RunSummary>& trials);

void write_summary_csv(std::ostream& out, const std::vector<GridCell>& grid,
                       const std::vector<CellSummary>& cells);

std::string trial_file_name(std::size_t cell, std::size_t trial, const char* suffix = ".csv");

}  // namespace swarm

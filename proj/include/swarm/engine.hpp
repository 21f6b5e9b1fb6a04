#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "swarm/behavior.hpp"
#include "swarm/kernels.hpp"
#include "swarm/metrics.hpp"

namespace swarm {

struct FaultSpec {
    FaultKind kind = FaultKind::Stuck;
    double slowdown = 1.0;  // S_f
    std::int64_t onset_tick = 0;
};

struct WorldConfig {
    int n_robots = 40;
    double faulty_fraction = 0.0;
    FaultSpec fault;
    double init_side = 0.5;  // m, square centered at the origin
    std::uint64_t seed = 1;
    std::int64_t ticks = 12000;
    ModelKind model = ModelKind::AAV;
    ModelParams params;
    ControlGains gains;
    PGConfig pg;
    BodyDims body;
    OcclusionPolicy occlusion = OcclusionPolicy::Complid;
    double dt = kTickSeconds;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct RunSummary {
    double final_order = 0.0;   // mean over the last 100 ticks
    double mean_speed = 0.0;    // m/s, second half of the run
    double fp_per_cycle = 0.0;
    std::int64_t fp_total = 0;
    std::int64_t cycles = 0;
    double mean_neighbors = 0.0;  // detections per nominal robot per tick
};

struct RunResult {
    std::vector<TickRecord> records;
    RunSummary summary;
};

class World {
public:
    explicit World(const WorldConfig& cfg);

    void step(ExecPolicy policy = ExecPolicy::Parallel);

    std::int64_t tick() const { return tick_; }
    const std::vector<RobotState>& robots() const { return robots_; }
    const std::vector<Controller>& controllers() const { return controllers_; }
    std::vector<OrientedRect> bodies() const;
    const WorldConfig& config() const { return cfg_; }

    /// Metrics of the current state. fp_per_cycle is the running mean so far.
    TickRecord record() const;
    const FalsePositiveCounter& false_positives() const { return fp_; }
    double mean_neighbors() const;

    void write_trajectory_rows(std::ostream& out) const;

private:
    WorldConfig cfg_;
    SensorConfig sensor_;
    std::vector<RobotState> robots_;
    std::vector<Controller> controllers_;
    std::vector<Decision> decisions_;
    FalsePositiveCounter fp_;
    std::int64_t tick_ = 0;
    std::int64_t neighbor_sum_ = 0;
    std::int64_t neighbor_samples_ = 0;
};

inline constexpr const char* kTrajectoryHeader = "tick,robot_id,x,y,heading,state,health";

/// Runs cfg.ticks ticks. When `trajectory` is given, the header, the initial state and
/// every tick are written to it.
RunResult run(const WorldConfig& cfg, std::ostream* trajectory = nullptr,
              ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace swarm

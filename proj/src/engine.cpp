#include "swarm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace swarm {

namespace {

constexpr std::uint64_t kWorldStream = 0;
constexpr int kMaxPlacementAttempts = 100000;

std::uint64_t robot_stream(int i) { return static_cast<std::uint64_t>(i) + 1; }

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

const char* health_name(FaultKind k) {
    switch (k) {
    case FaultKind::Nominal: return "nominal";
    case FaultKind::Stuck: return "stuck";
    case FaultKind::Slowdown: return "slowdown";
    }
    return "?";
}

OrientedRect body_of(const Pose& pose, const BodyDims& dims) {
    return {pose.position, pose.heading, 0.5 * dims.length, 0.5 * dims.width};
}

}  // namespace

void WorldConfig::validate() const {
    require(n_robots >= 1, "n_robots: must be at least 1");
    require(faulty_fraction >= 0.0 && faulty_fraction <= 1.0, "faulty_fraction: must be in [0, 1]");
    require(fault.slowdown >= 0.0 && fault.slowdown <= 1.0, "slowdown: must be in [0, 1]");
    require(fault.kind != FaultKind::Nominal, "fault_kind: must be stuck or slowdown");
    require(fault.onset_tick >= 0, "fault_onset: must be non-negative");
    require(init_side > 0.0, "init_side: must be positive");
    require(ticks >= 0, "ticks: must be non-negative");
    require(params.r_d > 0.0, "r_d: must be positive");
    require(params.r_d < params.r_sense, "r_d: must be below r_sense");
    require(pg.pause_min >= 1 && pg.pause_min < pg.pause_max, "pause: need 1 <= min < max");
    require(pg.go_min >= 1 && pg.go_min < pg.go_max, "go: need 1 <= min < max");
    require(pg.p >= 0.0 && pg.p <= 1.0, "p: must be in [0, 1]");
    require(gains.u_max >= 0.0 && gains.omega_lim >= 0.0, "u_max/omega_lim: must be non-negative");
    require(body.length > body.width && body.width > 0.0 && body.height > 0.0,
            "body: need length > width > 0 and height > 0");
    require(dt > 0.0, "dt: must be positive");
}

World::World(const WorldConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    sensor_ = {cfg_.params.r_sense, cfg_.body.height, cfg_.occlusion};

    Rng world_rng(derive_seed(cfg_.seed, kWorldStream));
    std::uniform_real_distribution<double> coord(-0.5 * cfg_.init_side, 0.5 * cfg_.init_side);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);

    const auto n = static_cast<std::size_t>(cfg_.n_robots);
    std::vector<OrientedRect> placed;
    placed.reserve(n);
    int attempts = 0;
    while (placed.size() < n) {
        if (++attempts > kMaxPlacementAttempts) {
            throw std::runtime_error("init_world: could not place " + std::to_string(n) +
                                     " robots without overlap");
        }
        Pose pose;
        pose.position = {coord(world_rng), coord(world_rng)};
        pose.heading = normalize_angle(angle(world_rng));
        const OrientedRect cand = body_of(pose, cfg_.body);
        const bool overlaps = std::any_of(placed.begin(), placed.end(), [&](const OrientedRect& o) {
            double depth = 0.0;
            separation_vector(o, cand, depth);
            return depth > 0.0;
        });
        if (overlaps) continue;
        placed.push_back(cand);
        RobotState s;
        s.pose = pose;
        robots_.push_back(s);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), world_rng);
    const auto n_faulty = static_cast<std::size_t>(std::floor(cfg_.faulty_fraction * cfg_.n_robots + 1e-9));
    for (std::size_t k = 0; k < n_faulty; ++k) {
        auto& h = robots_[order[k]].health;
        h.kind = cfg_.fault.kind;
        h.slowdown_factor = cfg_.fault.slowdown;
        h.onset_tick = cfg_.fault.onset_tick;
    }

    const ControllerConfig cc{cfg_.model, cfg_.params, cfg_.gains, cfg_.pg, cfg_.body};
    controllers_.reserve(n);
    for (int i = 0; i < cfg_.n_robots; ++i) {
        controllers_.emplace_back(cc, derive_seed(cfg_.seed, robot_stream(i)));
    }
    decisions_.resize(n);
}

std::vector<OrientedRect> World::bodies() const {
    std::vector<OrientedRect> out;
    out.reserve(robots_.size());
    for (const auto& r : robots_) out.push_back(body_of(r.pose, cfg_.body));
    return out;
}

void World::step(ExecPolicy policy) {
    const std::vector<OrientedRect> snapshot = bodies();
    std::vector<CartVec> velocities;
    if (uses_alignment(cfg_.model)) {
        velocities.reserve(robots_.size());
        for (const auto& r : robots_) velocities.push_back(r.last_displacement * (1.0 / cfg_.dt));
    }
    decide(policy, snapshot, controllers_, sensor_, velocities, tick_, decisions_);

    std::vector<bool> truly_faulty(robots_.size());
    for (std::size_t i = 0; i < robots_.size(); ++i) truly_faulty[i] = robots_[i].health.is_faulty();

    std::vector<OrientedRect> moved(robots_.size());
    auto immovable = std::make_unique<bool[]>(robots_.size());
    for (std::size_t i = 0; i < robots_.size(); ++i) {
        RobotState& r = robots_[i];
        const Decision& d = decisions_[i];
        if (!r.health.active(tick_)) {
            if (d.pause_completed) {
                int fp = 0;
                for (int j : d.faulty_sources) fp += truly_faulty[static_cast<std::size_t>(j)] ? 0 : 1;
                fp_.add_cycle(fp);
            }
            neighbor_sum_ += d.detected;
            ++neighbor_samples_;
        }
        const VelocityCommand cmd = apply_fault(r.health, d.command, tick_);
        r = integrate(r, cmd, cfg_.dt);
        r.behavior = d.paused ? BehaviorState::Pause : BehaviorState::Go;
        r.state_timer = controllers_[i].pg_state().timer;
        moved[i] = body_of(r.pose, cfg_.body);
        immovable[i] = r.health.active(tick_) && r.health.kind == FaultKind::Stuck;
    }

    resolve_collisions(moved, std::span<const bool>(immovable.get(), robots_.size()));

    for (std::size_t i = 0; i < robots_.size(); ++i) {
        robots_[i].pose.position = moved[i].center;
        robots_[i].last_displacement = moved[i].center - snapshot[i].center;
    }
    ++tick_;
}

TickRecord World::record() const {
    TickRecord rec;
    rec.tick = tick_;
    std::vector<double> headings;
    std::vector<CartVec> disp;
    std::vector<CartVec> positions;
    // Faults are active from onset_tick; the state after `tick_` steps reflects tick_ - 1.
    const std::int64_t last = tick_ > 0 ? tick_ - 1 : 0;
    for (const auto& r : robots_) {
        positions.push_back(r.pose.position);
        if (r.health.active(last)) continue;
        headings.push_back(r.pose.heading);
        disp.push_back(r.last_displacement);
    }
    rec.order = headings.empty() ? 0.0 : order(headings);
    rec.mean_speed = mean_speed(disp, cfg_.dt);
    rec.centroid_speed = centroid_speed(disp, cfg_.dt);
    rec.fp_per_cycle = fp_.per_cycle();
    rec.n_components = connectivity(positions, cfg_.params.r_sense);
    return rec;
}

double World::mean_neighbors() const {
    return neighbor_samples_ == 0 ? 0.0
                                  : static_cast<double>(neighbor_sum_) / static_cast<double>(neighbor_samples_);
}

void World::write_trajectory_rows(std::ostream& out) const {
    for (std::size_t i = 0; i < robots_.size(); ++i) {
        const auto& r = robots_[i];
        out << tick_ << ',' << i << ',' << format_double(r.pose.position.x) << ','
            << format_double(r.pose.position.y) << ',' << format_double(r.pose.heading) << ','
            << (r.behavior == BehaviorState::Pause ? "pause" : "go") << ','
            << (r.health.active(tick_ > 0 ? tick_ - 1 : 0) ? health_name(r.health.kind) : "nominal")
            << '\n';
    }
}

RunResult run(const WorldConfig& cfg, std::ostream* trajectory, ExecPolicy policy) {
    World world(cfg);
    RunResult result;
    result.records.reserve(static_cast<std::size_t>(cfg.ticks));
    if (trajectory) {
        *trajectory << kTrajectoryHeader << '\n';
        world.write_trajectory_rows(*trajectory);
    }
    for (std::int64_t t = 0; t < cfg.ticks; ++t) {
        world.step(policy);
        result.records.push_back(world.record());
        if (trajectory) world.write_trajectory_rows(*trajectory);
    }

    RunSummary& s = result.summary;
    if (result.records.empty()) {
        s.final_order = world.record().order;
    } else {
        s.final_order = final_order(result.records);
        s.mean_speed = window_speed(result.records);
    }
    s.fp_per_cycle = world.false_positives().per_cycle();
    s.fp_total = world.false_positives().total();
    s.cycles = world.false_positives().cycles();
    s.mean_neighbors = world.mean_neighbors();
    return result;
}

}  // namespace swarm

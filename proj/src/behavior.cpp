#include "swarm/behavior.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace swarm {

namespace {

std::string lower(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '-' || c == '_'; }),
            s.end());
    return s;
}

CartVec to_cart(PolarVec p) { return polar_to_cart(p); }

}  // namespace

std::string_view to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::AA: return "AA";
    case ModelKind::AAV: return "AAV";
    case ModelKind::AAVV: return "AAVV";
    case ModelKind::AAAV: return "AAAV";
    case ModelKind::AAPGV: return "AAPGV";
    case ModelKind::AAAPGV: return "AAAPGV";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view text) {
    const std::string s = lower(text);
    if (s == "aa") return ModelKind::AA;
    if (s == "aav") return ModelKind::AAV;
    if (s == "aavv") return ModelKind::AAVV;
    if (s == "aaav") return ModelKind::AAAV;
    if (s == "aapgv") return ModelKind::AAPGV;
    if (s == "aaapgv") return ModelKind::AAAPGV;
    throw std::invalid_argument("unknown model '" + std::string(text) + "'");
}

bool uses_pause_and_go(ModelKind kind) {
    return kind == ModelKind::AAPGV || kind == ModelKind::AAAPGV;
}

bool uses_alignment(ModelKind kind) {
    return kind == ModelKind::AAAV || kind == ModelKind::AAAPGV;
}

std::string_view to_string(InteractionRule rule) {
    switch (rule) {
    case InteractionRule::Avoid: return "avoid";
    case InteractionRule::AvoidHalfForce: return "avoid_half_force";
    case InteractionRule::AvoidHalfTime: return "avoid_half_time";
    }
    return "?";
}

InteractionRule parse_interaction_rule(std::string_view text) {
    const std::string s = lower(text);
    if (s == "avoid") return InteractionRule::Avoid;
    if (s == "avoidhalfforce") return InteractionRule::AvoidHalfForce;
    if (s == "avoidhalftime") return InteractionRule::AvoidHalfTime;
    throw std::invalid_argument("unknown interaction rule '" + std::string(text) + "'");
}

double aa_magnitude(double r, double r_d, double k_f) {
    if (!(r > 0.0)) throw std::domain_error("aa_magnitude: non-positive range");
    return k_f * (r - r_d) / (r * r);
}

PolarVec aa_pair_force(double r, double beta, double r_d, double k_f) {
    const double m = aa_magnitude(r, r_d, k_f);
    if (m < 0.0) return {-m, normalize_angle(beta + kPi)};
    return {m, normalize_angle(beta)};
}

CartVec aa_total_force(std::span<const PolarVec> centers, const ModelParams& params) {
    CartVec sum;
    for (const auto& c : centers) sum += to_cart(aa_pair_force(c.r, c.beta, params.r_d, params.k_f));
    return sum;
}

PolarVec faulty_pair_force(double r, double beta, double r_d, InteractionRule rule, double p,
                           Rng& rng) {
    const auto avoid = [&] {
        if (!(r > 0.0)) throw std::domain_error("faulty_pair_force: non-positive range");
        return r < r_d ? aa_pair_force(r, beta, r_d, 1.0) : PolarVec{0.0, normalize_angle(beta)};
    };
    switch (rule) {
    case InteractionRule::Avoid:
        return avoid();
    case InteractionRule::AvoidHalfForce:
        return aa_pair_force(r, beta, r_d, 0.5);
    case InteractionRule::AvoidHalfTime: {
        std::bernoulli_distribution coin(p);
        return coin(rng) ? avoid() : aa_pair_force(r, beta, r_d, 1.0);
    }
    }
    return {};
}

CartVec align_force(std::span<const CartVec> rel_velocities) {
    CartVec sum;
    for (const CartVec& v : rel_velocities) {
        const double n = v.norm();
        if (n == 0.0) continue;
        sum += v * (1.0 / n);
    }
    return sum;
}

double recommended_sense_range(double r_d) { return 1.8 * std::pow(2.0, 1.0 / 6.0) * r_d; }

int draw_duration(int lo, int hi, Rng& rng) {
    if (hi <= lo) throw std::invalid_argument("draw_duration: empty interval");
    std::uniform_int_distribution<int> dist(lo, hi - 1);
    return dist(rng);
}

std::vector<TrackDelta> frame_deltas(const Frame& prev, const Frame& curr) {
    std::vector<TrackDelta> out;
    for (const auto& c : curr) {
        const auto it = std::find_if(prev.begin(), prev.end(), [&](const NeighborReading& p) {
            return p.estimate.track_id == c.estimate.track_id;
        });
        if (it != prev.end()) out.push_back({c.estimate.track_id, motion_deltas(it->estimate, c.estimate)});
    }
    return out;
}

void classify_update(ClassificationSets& sets, const Frame& curr,
                     std::span<const TrackDelta> deltas, const PGConfig& cfg, double dt) {
    const auto visible_now = [&](TrackId id) {
        return std::any_of(curr.begin(), curr.end(),
                           [&](const NeighborReading& n) { return n.estimate.track_id == id; });
    };
    std::erase_if(sets.nominal, [&](TrackId id) { return !visible_now(id); });
    std::erase_if(sets.faulty, [&](TrackId id) { return !visible_now(id); });

    for (const auto& [id, d] : deltas) {
        const bool moving = d.delta_u / dt > cfg.u_min || std::abs(d.delta_theta) > cfg.theta_min;
        if (sets.nominal.contains(id)) continue;
        if (sets.faulty.contains(id)) {
            if (moving) {
                sets.faulty.erase(id);
                sets.nominal.insert(id);
            }
            continue;
        }
        (moving ? sets.nominal : sets.faulty).insert(id);
    }
}

void pg_init(PgState& state, const PGConfig& cfg, Rng& rng) {
    state = PgState{};
    state.mode = BehaviorState::Go;
    state.timer = draw_duration(cfg.go_min, cfg.go_max, rng);
}

PgDecision pg_step(PgState& state, const Frame& prev, const Frame& curr, bool with_alignment,
                   const ModelParams& params, const PGConfig& cfg, Rng& rng, double dt) {
    PgDecision out;
    if (state.timer <= 0) {
        if (state.mode == BehaviorState::Go) {
            state.mode = BehaviorState::Pause;
            state.timer = draw_duration(cfg.pause_min, cfg.pause_max, rng);
            state.sets.clear();
        } else {
            out.completed_faulty.emplace(state.sets.faulty.begin(), state.sets.faulty.end());
            state.mode = BehaviorState::Go;
            state.timer = draw_duration(cfg.go_min, cfg.go_max, rng);
        }
        state.ticks_in_mode = 0;
    }

    if (state.mode == BehaviorState::Pause) {
        out.paused = true;
        // The first pause tick has no motionless reference frame yet.
        if (state.ticks_in_mode > 0) {
            const auto deltas = frame_deltas(prev, curr);
            classify_update(state.sets, curr, deltas, cfg, dt);
        }
    } else {
        auto& sets = state.sets;
        const auto visible_now = [&](TrackId id) {
            return std::any_of(curr.begin(), curr.end(),
                               [&](const NeighborReading& n) { return n.estimate.track_id == id; });
        };
        std::erase_if(sets.nominal, [&](TrackId id) { return !visible_now(id); });
        std::erase_if(sets.faulty, [&](TrackId id) { return !visible_now(id); });

        std::vector<CartVec> aligned;
        for (const auto& n : curr) {
            const TrackId id = n.estimate.track_id;
            const PolarVec& c = n.estimate.center;
            if (sets.faulty.contains(id)) {
                out.force += to_cart(faulty_pair_force(c.r, c.beta, params.r_d, cfg.rule, cfg.p, rng));
                continue;
            }
            sets.nominal.insert(id);
            out.force += to_cart(aa_pair_force(c.r, c.beta, params.r_d, params.k_f));
            if (with_alignment) aligned.push_back(n.rel_velocity);
        }
        if (with_alignment) out.force += align_force(aligned) * params.k_align;
    }

    --state.timer;
    ++state.ticks_in_mode;
    return out;
}

Controller::Controller(const ControllerConfig& cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {
    if (uses_pause_and_go(cfg_.model)) pg_init(pg_, cfg_.pg, rng_);
}

NeighborEstimate Controller::range(const PerceivedNeighbor& n) const {
    switch (cfg_.model) {
    case ModelKind::AA: {
        NeighborEstimate e;
        e.track_id = n.track_id;
        e.theta = n.theta;
        e.center = {n.true_range, n.true_bearing};
        return e;
    }
    case ModelKind::AAVV:
        return vertical_only_estimate(n, cfg_.body);
    default:
        return estimate_center(n, cfg_.body);
    }
}

Decision Controller::decide(DetectionSet raw) {
    DetectionSet detections = track(prev_detections_, std::move(raw), next_track_);
    Frame frame;
    frame.reserve(detections.neighbors.size());
    for (const auto& n : detections.neighbors) frame.push_back({range(n), n.rel_velocity});

    Decision out;
    out.detected = static_cast<int>(frame.size());
    CartVec force;
    if (uses_pause_and_go(cfg_.model)) {
        PgDecision pg = pg_step(pg_, prev_frame_, frame, uses_alignment(cfg_.model), cfg_.params,
                                cfg_.pg, rng_);
        if (pg.completed_faulty) {
            out.pause_completed = true;
            for (TrackId id : *pg.completed_faulty) {
                if (const auto* n = prev_detections_.find(id)) out.faulty_sources.push_back(n->source_id);
            }
        }
        out.paused = pg.paused;
        force = pg.force;
    } else {
        std::vector<CartVec> velocities;
        for (const auto& n : frame) {
            const PolarVec& c = n.estimate.center;
            force += to_cart(aa_pair_force(c.r, c.beta, cfg_.params.r_d, cfg_.params.k_f));
            velocities.push_back(n.rel_velocity);
        }
        if (uses_alignment(cfg_.model)) force += align_force(velocities) * cfg_.params.k_align;
    }

    // A pause commands the wheels to zero directly; MDMC would add the forward bias.
    out.command = out.paused ? VelocityCommand{} : mdmc(force, cfg_.gains);
    prev_detections_ = std::move(detections);
    prev_frame_ = std::move(frame);
    return out;
}

}  // namespace swarm

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "swarm/estimation.hpp"
#include "swarm/kinematics.hpp"
#include "swarm/rng.hpp"
#include "swarm/vision.hpp"

namespace swarm {

enum class ModelKind : std::uint8_t {
    AA,      // oracle range and bearing
    AAV,     // hybrid visual ranging
    AAVV,    // vertical-angle ranging only
    AAAV,    // AA-V plus alignment
    AAPGV,   // AA-V with pause-and-go fault handling
    AAAPGV,  // AAA-V with pause-and-go fault handling
};

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);
bool uses_pause_and_go(ModelKind kind);
bool uses_alignment(ModelKind kind);

struct ModelParams {
    double r_d = 0.10;      // preferred spacing, m
    double r_sense = 0.19;  // m
    double k_f = 1.0;
    double k_align = 1.5;   // K_3
};

enum class InteractionRule : std::uint8_t { Avoid, AvoidHalfForce, AvoidHalfTime };

std::string_view to_string(InteractionRule rule);
InteractionRule parse_interaction_rule(std::string_view text);

/// Pause-and-go parameters. Durations are half-open tick intervals [min, max).
struct PGConfig {
    int pause_min = 6;
    int pause_max = 7;
    int go_min = 11;
    int go_max = 20;
    double u_min = 0.0;      // m/s
    double theta_min = 0.0;  // relative width change
    InteractionRule rule = InteractionRule::AvoidHalfTime;
    double p = 0.5;          // AvoidHalfTime probability of the avoid form
};

/// Per-robot partition of tracked neighbors into nominal (N_i) and faulty (S_i).
struct ClassificationSets {
    std::set<TrackId> nominal;
    std::set<TrackId> faulty;

    bool classified(TrackId id) const { return nominal.contains(id) || faulty.contains(id); }
    void clear() {
        nominal.clear();
        faulty.clear();
    }
};

/// Signed avoid/attract magnitude K_f (r - r_d) / r^2. Positive attracts.
double aa_magnitude(double r, double r_d, double k_f);

/// Pair force as a polar vector with non-negative length; repulsion points away.
PolarVec aa_pair_force(double r, double beta, double r_d, double k_f);

CartVec aa_total_force(std::span<const PolarVec> centers, const ModelParams& params);

/// Force toward a neighbor believed to be faulty. Only AvoidHalfTime draws from rng.
PolarVec faulty_pair_force(double r, double beta, double r_d, InteractionRule rule, double p,
                           Rng& rng);

/// Sum of the unit relative velocities v_j - v_i (focal frame); zero differences are skipped.
CartVec align_force(std::span<const CartVec> rel_velocities);

/// Sensing range suggested for a preferred spacing: 1.8 * 2^(1/6) * r_d.
double recommended_sense_range(double r_d);

/// Uniform integer in [lo, hi).
int draw_duration(int lo, int hi, Rng& rng);

/// One tracked neighbor as used by the decision step.
struct NeighborReading {
    NeighborEstimate estimate;
    CartVec rel_velocity;
};
using Frame = std::vector<NeighborReading>;

struct TrackDelta {
    TrackId id = kNoTrack;
    MotionDeltas deltas;
};

/// Deltas for every track present in both frames, in `curr` order.
std::vector<TrackDelta> frame_deltas(const Frame& prev, const Frame& curr);

/// One pause-tick update of the nominal/faulty partition. `deltas` holds the tracks
/// seen in both this tick and the previous one; tracks missing from `curr` are dropped.
void classify_update(ClassificationSets& sets, const Frame& curr,
                     std::span<const TrackDelta> deltas, const PGConfig& cfg, double dt);

struct PgState {
    BehaviorState mode = BehaviorState::Go;
    int timer = 0;           // ticks left in the current mode, including the current one
    int ticks_in_mode = 0;
    ClassificationSets sets;
};

struct PgDecision {
    bool paused = false;
    CartVec force;
    /// Faulty-set tracks at the end of a pause that finished right before this tick.
    std::optional<std::vector<TrackId>> completed_faulty;
};

/// Starts a pause-and-go robot in Go with a freshly drawn duration.
void pg_init(PgState& state, const PGConfig& cfg, Rng& rng);

/// Advances the pause-and-go state machine by one tick.
PgDecision pg_step(PgState& state, const Frame& prev, const Frame& curr, bool with_alignment,
                   const ModelParams& params, const PGConfig& cfg, Rng& rng,
                   double dt = kTickSeconds);

struct ControllerConfig {
    ModelKind model = ModelKind::AAV;
    ModelParams params;
    ControlGains gains;
    PGConfig pg;
    BodyDims body;
};

struct Decision {
    VelocityCommand command;
    bool paused = false;
    bool pause_completed = false;
    std::vector<int> faulty_sources;  // robot indices behind S_i at pause end
    int detected = 0;
};

/// Perception-to-command pipeline of one robot: tracking, ranging, and the model.
class Controller {
public:
    Controller(const ControllerConfig& cfg, std::uint64_t seed);

    Decision decide(DetectionSet raw);

    const PgState& pg_state() const { return pg_; }
    const DetectionSet& last_detections() const { return prev_detections_; }

private:
    NeighborEstimate range(const PerceivedNeighbor& n) const;

    ControllerConfig cfg_;
    Rng rng_;
    TrackId next_track_ = 1;
    DetectionSet prev_detections_;
    Frame prev_frame_;
    PgState pg_;
};

}  // namespace swarm

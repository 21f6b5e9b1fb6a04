#pragma once

#include <cstdint>
#include <span>

#include "swarm/geometry.hpp"

namespace swarm {

/// Simulation step length: one tick is 0.1 s.
inline constexpr double kTickSeconds = 0.1;

/// MDMC gains and actuation limits.
struct ControlGains {
    double k1 = 2.5;
    double k2 = 0.06;
    double u_forward = 0.0175;  // m/s
    double u_max = 0.035;       // m/s
    double omega_lim = 0.5236;  // rad/s
    double wheelbase = 0.018;   // m
};

struct VelocityCommand {
    double u = 0.0;      // m/s
    double omega = 0.0;  // rad/s
};

struct WheelSpeeds {
    double right = 0.0;
    double left = 0.0;
};

struct Pose {
    CartVec position;
    double heading = 0.0;
};

enum class BehaviorState : std::uint8_t { Go, Pause };

enum class FaultKind : std::uint8_t { Nominal, Stuck, Slowdown };

/// Ground-truth health. Faults only alter actuation, never the controller.
struct FaultStatus {
    FaultKind kind = FaultKind::Nominal;
    double slowdown_factor = 1.0;  // S_f, used by Slowdown
    std::int64_t onset_tick = 0;

    bool is_faulty() const { return kind != FaultKind::Nominal; }
    bool active(std::int64_t tick) const { return is_faulty() && tick >= onset_tick; }
};

struct RobotState {
    Pose pose;
    VelocityCommand commanded;
    CartVec last_displacement;  // ground truth, metrics and fault oracle only
    BehaviorState behavior = BehaviorState::Go;
    int state_timer = 0;
    FaultStatus health;
};

/// Magnitude-dependent motion control: maps a focal-frame force to clamped (u, omega).
VelocityCommand mdmc(CartVec force, const ControlGains& gains);

/// Wheel velocities with the sign convention W_r = u - omega*l_w/2, W_l = u + omega*l_w/2.
WheelSpeeds wheel_speeds(double u, double omega, double wheelbase);

/// Forward-Euler unicycle step. Translation uses the heading before the update.
RobotState integrate(const RobotState& state, VelocityCommand cmd, double dt);

/// Applies a fault to a commanded velocity at the given tick.
VelocityCommand apply_fault(const FaultStatus& health, VelocityCommand cmd, std::int64_t tick);

/// Minimum translation vector that moves `b` out of `a`, or a zero vector when they
/// do not overlap. `depth` receives the penetration depth (0 when separated).
CartVec separation_vector(const OrientedRect& a, const OrientedRect& b, double& depth);

/// Pushes overlapping bodies apart along the minimum translation vector, half each,
/// in ascending pair order. Immovable bodies hand the full correction to the other
/// body. Returns the number of sweeps performed.
int resolve_collisions(std::span<OrientedRect> bodies, std::span<const bool> immovable,
                       int max_sweeps = 8);

}  // namespace swarm

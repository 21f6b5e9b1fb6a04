#include "swarm/kinematics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace swarm {

VelocityCommand mdmc(CartVec force, const ControlGains& gains) {
    if (!std::isfinite(force.x) || !std::isfinite(force.y)) {
        throw std::invalid_argument("mdmc: non-finite force");
    }
    const double u = std::clamp(gains.k1 * force.x + gains.u_forward, 0.0, gains.u_max);
    const double omega = std::clamp(gains.k2 * force.y, -gains.omega_lim, gains.omega_lim);
    return {u, omega};
}

WheelSpeeds wheel_speeds(double u, double omega, double wheelbase) {
    const double half = 0.5 * omega * wheelbase;
    return {u - half, u + half};
}

RobotState integrate(const RobotState& state, VelocityCommand cmd, double dt) {
    RobotState next = state;
    next.commanded = cmd;
    const CartVec step = unit_vector(state.pose.heading) * (cmd.u * dt);
    next.pose.position = state.pose.position + step;
    next.pose.heading = cmd.omega == 0.0 ? state.pose.heading
                                         : normalize_angle(state.pose.heading + cmd.omega * dt);
    next.last_displacement = step;
    return next;
}

VelocityCommand apply_fault(const FaultStatus& health, VelocityCommand cmd, std::int64_t tick) {
    if (!health.active(tick)) return cmd;
    switch (health.kind) {
    case FaultKind::Stuck:
        return {0.0, 0.0};
    case FaultKind::Slowdown:
        return {cmd.u * health.slowdown_factor, cmd.omega * health.slowdown_factor};
    case FaultKind::Nominal:
        break;
    }
    return cmd;
}

CartVec separation_vector(const OrientedRect& a, const OrientedRect& b, double& depth) {
    depth = 0.0;
    const auto ca = rect_corners(a);
    const auto cb = rect_corners(b);
    const std::array<CartVec, 4> axes = {unit_vector(a.heading), unit_vector(a.heading + 0.5 * kPi),
                                         unit_vector(b.heading), unit_vector(b.heading + 0.5 * kPi)};
    double best = std::numeric_limits<double>::infinity();
    CartVec best_axis;
    for (const CartVec& axis : axes) {
        double amin = std::numeric_limits<double>::infinity();
        double amax = -amin;
        double bmin = amin;
        double bmax = -amin;
        for (int k = 0; k < 4; ++k) {
            const double pa = ca[k].dot(axis);
            const double pb = cb[k].dot(axis);
            amin = std::min(amin, pa);
            amax = std::max(amax, pa);
            bmin = std::min(bmin, pb);
            bmax = std::max(bmax, pb);
        }
        const double overlap = std::min(amax, bmax) - std::max(amin, bmin);
        if (overlap <= 0.0) return {};
        if (overlap < best) {
            best = overlap;
            best_axis = axis;
        }
    }
    if ((b.center - a.center).dot(best_axis) < 0.0) best_axis = -best_axis;
    depth = best;
    return best_axis * best;
}

int resolve_collisions(std::span<OrientedRect> bodies, std::span<const bool> immovable,
                       int max_sweeps) {
    const std::size_t n = bodies.size();
    // Two bodies can only touch when their centers are within the sum of half diagonals.
    double reach = 0.0;
    for (const auto& body : bodies) {
        reach = std::max(reach, std::hypot(body.half_length, body.half_width));
    }
    const double reach_sq = 4.0 * reach * reach;

    int sweeps = 0;
    while (sweeps < max_sweeps) {
        ++sweeps;
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const CartVec d = bodies[j].center - bodies[i].center;
                if (d.dot(d) > reach_sq) continue;
                double depth = 0.0;
                const CartVec mtv = separation_vector(bodies[i], bodies[j], depth);
                if (depth <= 0.0) continue;
                const bool fix_i = !immovable.empty() && immovable[i];
                const bool fix_j = !immovable.empty() && immovable[j];
                if (fix_i && fix_j) continue;
                if (fix_i) {
                    bodies[j].center += mtv;
                } else if (fix_j) {
                    bodies[i].center += -mtv;
                } else {
                    bodies[i].center += mtv * -0.5;
                    bodies[j].center += mtv * 0.5;
                }
                moved = true;
            }
        }
        if (!moved) break;
    }
    return sweeps;
}

}  // namespace swarm

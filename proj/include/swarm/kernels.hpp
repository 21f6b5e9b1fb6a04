#pragma once

#include <cstdint>
#include <span>

#include "swarm/behavior.hpp"

namespace swarm {

enum class ExecPolicy : std::uint8_t { Serial, Parallel };

/// Sense, track, estimate and decide for every robot against one pose snapshot.
/// `velocities` are world-frame robot velocities (may be empty).
/// Each controller only touches its own state and RNG stream, so both versions
/// produce identical decisions.
void decide_serial(std::span<const OrientedRect> snapshot, std::span<Controller> controllers,
                   const SensorConfig& sensor, std::span<const CartVec> velocities,
                   std::int64_t tick, std::span<Decision> out);

void decide_parallel(std::span<const OrientedRect> snapshot, std::span<Controller> controllers,
                     const SensorConfig& sensor, std::span<const CartVec> velocities,
                     std::int64_t tick, std::span<Decision> out);

inline void decide(ExecPolicy policy, std::span<const OrientedRect> snapshot,
                   std::span<Controller> controllers, const SensorConfig& sensor,
                   std::span<const CartVec> velocities, std::int64_t tick,
                   std::span<Decision> out) {
    if (policy == ExecPolicy::Serial) {
        decide_serial(snapshot, controllers, sensor, velocities, tick, out);
    } else {
        decide_parallel(snapshot, controllers, sensor, velocities, tick, out);
    }
}

}  // namespace swarm

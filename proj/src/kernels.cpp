#include "swarm/kernels.hpp"

#include <exception>

namespace swarm {

void decide_serial(std::span<const OrientedRect> snapshot, std::span<Controller> controllers,
                   const SensorConfig& sensor, std::span<const CartVec> velocities,
                   std::int64_t tick, std::span<Decision> out) {
    for (std::size_t i = 0; i < controllers.size(); ++i) {
        out[i] = controllers[i].decide(sense(i, snapshot, sensor, tick, velocities));
    }
}

void decide_parallel(std::span<const OrientedRect> snapshot, std::span<Controller> controllers,
                     const SensorConfig& sensor, std::span<const CartVec> velocities,
                     std::int64_t tick, std::span<Decision> out) {
    const auto n = static_cast<std::ptrdiff_t>(controllers.size());
    // Exceptions may not leave an OpenMP region; keep the first and rethrow after.
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const auto k = static_cast<std::size_t>(i);
            out[k] = controllers[k].decide(sense(k, snapshot, sensor, tick, velocities));
        } catch (...) {
#pragma omp critical(swarm_decide_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace swarm

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "swarm/geometry.hpp"

namespace swarm {

/// How partially hidden neighbors are treated by the camera.
enum class OcclusionPolicy : std::uint8_t {
    XRay,     // every robot in range, occlusion ignored
    Omid,     // only wholly visible robots
    Center,   // robots whose center ray is unobstructed
    Complid,  // any visible part, completed to the full outline
};

std::string_view to_string(OcclusionPolicy policy);
/// Accepts "xray", "omid", "center", "complid" (case-insensitive). Throws on anything else.
OcclusionPolicy parse_occlusion_policy(std::string_view text);

using TrackId = std::uint64_t;
inline constexpr TrackId kNoTrack = 0;

/// One neighbor as seen by the focal camera. Bearings are in the focal frame.
struct PerceivedNeighbor {
    TrackId track_id = kNoTrack;
    int source_id = -1;  // ground-truth robot index, used only for tracking and bookkeeping
    double beta_left = 0.0;
    double beta_right = 0.0;  // beta_left + theta, may exceed pi
    double alpha_left = 0.0;
    double alpha_right = 0.0;
    double theta = 0.0;
    double rel_heading = 0.0;  // idealized orientation reading
    CartVec rel_velocity;      // v_j - v_i in the focal frame, idealized (alignment models only)
    double true_range = 0.0;   // oracle center range (AA model only)
    double true_bearing = 0.0; // oracle center bearing (AA model only)
};

struct DetectionSet {
    int observer_id = -1;
    std::int64_t tick = 0;
    std::vector<PerceivedNeighbor> neighbors;

    const PerceivedNeighbor* find(TrackId id) const;
};

struct SensorConfig {
    double r_sense = 0.19;      // m
    double body_height = 0.027; // v, m
    OcclusionPolicy policy = OcclusionPolicy::Complid;
};

/// Vertical angle subtended by a vertical edge of the given height at horizontal distance d.
double vertical_angle(double height, double distance);

/// Detects the neighbors of bodies[observer]. Occlusion order is by center distance,
/// ties broken by ascending index. Returned neighbors carry no track ids yet and are
/// ordered by (center distance, index). `velocities` (world frame, optional) feeds
/// rel_velocity.
DetectionSet sense(std::size_t observer, std::span<const OrientedRect> bodies,
                   const SensorConfig& sensor, std::int64_t tick = 0,
                   std::span<const CartVec> velocities = {});

/// Gives each detection the track id of the same robot in `prev`, or a fresh id from
/// `next_id` when the robot was not detected in the immediately preceding tick.
DetectionSet track(const DetectionSet& prev, DetectionSet curr_raw, TrackId& next_id);

}  // namespace swarm

#include "swarm/vision.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace swarm {

std::string_view to_string(OcclusionPolicy policy) {
    switch (policy) {
    case OcclusionPolicy::XRay: return "xray";
    case OcclusionPolicy::Omid: return "omid";
    case OcclusionPolicy::Center: return "center";
    case OcclusionPolicy::Complid: return "complid";
    }
    return "?";
}

OcclusionPolicy parse_occlusion_policy(std::string_view text) {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "xray" || s == "x-ray") return OcclusionPolicy::XRay;
    if (s == "omid") return OcclusionPolicy::Omid;
    if (s == "center") return OcclusionPolicy::Center;
    if (s == "complid") return OcclusionPolicy::Complid;
    throw std::invalid_argument("unknown occlusion policy '" + std::string(text) + "'");
}

const PerceivedNeighbor* DetectionSet::find(TrackId id) const {
    for (const auto& n : neighbors) {
        if (n.track_id == id) return &n;
    }
    return nullptr;
}

double vertical_angle(double height, double distance) {
    return 2.0 * std::atan(height / (2.0 * distance));
}

namespace {

struct Candidate {
    double range;
    std::size_t index;
    SubtendedView view;
};

bool overlaps(const AngInterval& a, const AngInterval& b) {
    const double off = normalize_angle(b.lo - a.lo);
    if (off >= 0.0) return off < a.width();
    return -off < b.width();
}

bool visible(const Candidate& c, double center_bearing, std::span<const Candidate> closer,
             OcclusionPolicy policy, std::vector<AngInterval>& scratch) {
    switch (policy) {
    case OcclusionPolicy::XRay:
        return true;
    case OcclusionPolicy::Omid:
        return std::none_of(closer.begin(), closer.end(), [&](const Candidate& o) {
            return overlaps(c.view.interval, o.view.interval);
        });
    case OcclusionPolicy::Center:
        return std::none_of(closer.begin(), closer.end(), [&](const Candidate& o) {
            return o.view.interval.contains(center_bearing);
        });
    case OcclusionPolicy::Complid:
        scratch.clear();
        for (const auto& o : closer) scratch.push_back(o.view.interval);
        return total_width(interval_subtract(c.view.interval, scratch)) > 0.0;
    }
    return true;
}

}  // namespace

DetectionSet sense(std::size_t observer, std::span<const OrientedRect> bodies,
                   const SensorConfig& sensor, std::int64_t tick,
                   std::span<const CartVec> velocities) {
    DetectionSet out;
    out.observer_id = static_cast<int>(observer);
    out.tick = tick;
    const OrientedRect& focal = bodies[observer];
    const CartVec eye = focal.center;

    std::vector<Candidate> candidates;
    for (std::size_t j = 0; j < bodies.size(); ++j) {
        if (j == observer) continue;
        const CartVec d = bodies[j].center - eye;
        if (d.dot(d) > sensor.r_sense * sensor.r_sense * (1.0 + 1e-12)) continue;
        const double range = d.norm();
        if (range > sensor.r_sense) continue;
        // A body overlapping the camera cannot be imaged.
        if (rect_contains(bodies[j], eye)) continue;
        candidates.push_back({range, j, subtended_interval(eye, bodies[j])});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return a.range != b.range ? a.range < b.range : a.index < b.index;
    });

    std::vector<AngInterval> scratch;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const Candidate& c = candidates[k];
        const std::span<const Candidate> closer(candidates.data(), k);
        const CartVec to_center = bodies[c.index].center - eye;
        const double center_bearing = std::atan2(to_center.y, to_center.x);
        if (!visible(c, center_bearing, closer, sensor.policy, scratch)) continue;

        PerceivedNeighbor n;
        n.source_id = static_cast<int>(c.index);
        n.beta_left = normalize_angle(c.view.interval.lo - focal.heading);
        n.theta = c.view.interval.width();
        n.beta_right = n.beta_left + n.theta;
        n.alpha_left = vertical_angle(sensor.body_height, (c.view.left_corner - eye).norm());
        n.alpha_right = vertical_angle(sensor.body_height, (c.view.right_corner - eye).norm());
        n.rel_heading = normalize_angle(bodies[c.index].heading - focal.heading);
        if (!velocities.empty()) {
            n.rel_velocity = rotate(velocities[c.index] - velocities[observer], -focal.heading);
        }
        n.true_range = c.range;
        n.true_bearing = normalize_angle(center_bearing - focal.heading);
        out.neighbors.push_back(n);
    }
    return out;
}

DetectionSet track(const DetectionSet& prev, DetectionSet curr_raw, TrackId& next_id) {
    for (auto& n : curr_raw.neighbors) {
        const auto it = std::find_if(prev.neighbors.begin(), prev.neighbors.end(),
                                     [&](const PerceivedNeighbor& p) { return p.source_id == n.source_id; });
        n.track_id = it != prev.neighbors.end() ? it->track_id : next_id++;
    }
    return curr_raw;
}

}  // namespace swarm

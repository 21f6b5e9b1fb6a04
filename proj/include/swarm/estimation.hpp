#pragma once

#include "swarm/geometry.hpp"
#include "swarm/vision.hpp"

namespace swarm {

/// Known body dimensions of every robot, plus the tolerance used to match the
/// visible horizontal edge against them.
struct BodyDims {
    double length = 0.05;  // l, m
    double width = 0.02;   // w, m
    double height = 0.027; // v, m
    double eps = 1e-6;     // m
};

/// Estimated neighbor center and the edge vectors it was built from (focal frame).
struct NeighborEstimate {
    PolarVec center;
    PolarVec left;
    PolarVec right;
    double edge_length = 0.0;  // H
    double theta = 0.0;
    TrackId track_id = kNoTrack;
};

/// Perceived motion of one tracked neighbor between consecutive ticks.
struct MotionDeltas {
    double delta_u = 0.0;      // m per tick
    double delta_theta = 0.0;  // relative change of angular width, signed
};

/// Range to a vertical edge of known height from the vertical angle it subtends.
/// Throws std::domain_error unless 0 < alpha < pi.
double range_from_vertical(double alpha, double height);

/// Hybrid estimator: vertical-angle edge ranges, corrected by half a width or half a
/// length when the visible horizontal edge matches one face of the body.
NeighborEstimate estimate_center(const PerceivedNeighbor& p, const BodyDims& dims);

/// Vertical-angle estimator without the face correction.
NeighborEstimate vertical_only_estimate(const PerceivedNeighbor& p, const BodyDims& dims);

/// Center offset from the facing edge, chosen from the measured edge length H.
double center_offset(double edge_length, const BodyDims& dims);

/// Throws std::invalid_argument on track mismatch and std::domain_error when curr.theta is 0.
MotionDeltas motion_deltas(const NeighborEstimate& prev, const NeighborEstimate& curr);

}  // namespace swarm

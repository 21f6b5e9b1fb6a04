#include "swarm/estimation.hpp"

#include <stdexcept>

namespace swarm {

double range_from_vertical(double alpha, double height) {
    if (!(alpha > 0.0 && alpha < kPi)) {
        throw std::domain_error("range_from_vertical: alpha outside (0, pi)");
    }
    return 0.5 * height / std::tan(0.5 * alpha);
}

double center_offset(double edge_length, const BodyDims& dims) {
    if (std::abs(edge_length - dims.length) <= dims.eps) return 0.5 * dims.width;
    if (std::abs(edge_length - dims.width) <= dims.eps) return 0.5 * dims.length;
    return 0.0;
}

namespace {

NeighborEstimate estimate(const PerceivedNeighbor& p, const BodyDims& dims, bool correct) {
    NeighborEstimate e;
    e.track_id = p.track_id;
    e.theta = p.theta;
    e.left = {range_from_vertical(p.alpha_left, dims.height), normalize_angle(p.beta_left)};
    e.right = {range_from_vertical(p.alpha_right, dims.height), normalize_angle(p.beta_right)};
    const CartVec l = polar_to_cart(e.left);
    const CartVec r = polar_to_cart(e.right);
    e.edge_length = (r - l).norm();
    // Range to the midpoint of the facing edge.
    const double facing = ((l + r) * 0.5).norm();
    const double offset = correct ? center_offset(e.edge_length, dims) : 0.0;
    e.center = {facing + offset, normalize_angle(0.5 * (p.beta_left + p.beta_right))};
    return e;
}

}  // namespace

NeighborEstimate estimate_center(const PerceivedNeighbor& p, const BodyDims& dims) {
    return estimate(p, dims, true);
}

NeighborEstimate vertical_only_estimate(const PerceivedNeighbor& p, const BodyDims& dims) {
    return estimate(p, dims, false);
}

MotionDeltas motion_deltas(const NeighborEstimate& prev, const NeighborEstimate& curr) {
    if (prev.track_id != curr.track_id) {
        throw std::invalid_argument("motion_deltas: estimates belong to different tracks");
    }
    if (curr.theta == 0.0) throw std::domain_error("motion_deltas: zero angular width");
    const CartVec shift = polar_to_cart(curr.center) - polar_to_cart(prev.center);
    return {shift.norm(), (curr.theta - prev.theta) / curr.theta};
}

}  // namespace swarm

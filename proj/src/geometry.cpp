#include "swarm/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace swarm {

double normalize_angle(double a) {
    if (a > -kPi && a <= kPi) return a;
    double r = std::remainder(a, kTwoPi);  // [-pi, pi]
    if (r <= -kPi) r += kTwoPi;
    return r;
}

CartVec polar_to_cart(PolarVec p) {
    if (!std::isfinite(p.r) || !std::isfinite(p.beta)) {
        throw std::invalid_argument("polar_to_cart: non-finite input");
    }
    return {p.r * std::cos(p.beta), p.r * std::sin(p.beta)};
}

PolarVec cart_to_polar(CartVec c) {
    if (!std::isfinite(c.x) || !std::isfinite(c.y)) {
        throw std::invalid_argument("cart_to_polar: non-finite input");
    }
    if (c.x == 0.0 && c.y == 0.0) return {0.0, 0.0};
    return {std::hypot(c.x, c.y), normalize_angle(std::atan2(c.y, c.x))};
}

CartVec rotate(CartVec v, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

CartVec unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }

std::array<CartVec, 4> rect_corners(const OrientedRect& rect) {
    const CartVec u = unit_vector(rect.heading);
    const CartVec ax = u * rect.half_length;
    const CartVec ay = CartVec{-u.y, u.x} * rect.half_width;
    const CartVec c = rect.center;
    return {c + ax + ay, c - ax + ay, c - ax - ay, c + ax - ay};
}

bool rect_contains(const OrientedRect& rect, CartVec p) {
    const CartVec local = rotate(p - rect.center, -rect.heading);
    return std::abs(local.x) <= rect.half_length && std::abs(local.y) <= rect.half_width;
}

bool AngInterval::contains(double angle) const {
    const double off = normalize_angle(angle - lo);
    return off >= 0.0 && off <= width();
}

AngInterval make_interval(double lo, double width) {
    const double l = normalize_angle(lo);
    return {l, l + width};
}

SubtendedView subtended_interval(CartVec observer, const OrientedRect& rect) {
    if (rect_contains(rect, observer)) {
        throw std::domain_error("subtended_interval: observer inside rectangle");
    }
    const CartVec to_center = rect.center - observer;
    const double ref = std::atan2(to_center.y, to_center.x);
    const auto corners = rect_corners(rect);

    std::size_t lo_idx = 0;
    std::size_t hi_idx = 0;
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t k = 0; k < corners.size(); ++k) {
        const CartVec d = corners[k] - observer;
        const double off = normalize_angle(std::atan2(d.y, d.x) - ref);
        if (k == 0 || off < lo) {
            lo = off;
            lo_idx = k;
        }
        if (k == 0 || off > hi) {
            hi = off;
            hi_idx = k;
        }
    }
    return {make_interval(ref + lo, hi - lo), corners[lo_idx], corners[hi_idx]};
}

std::vector<AngInterval> interval_subtract(const AngInterval& base,
                                           std::span<const AngInterval> occluders) {
    const double width = base.width();
    // Work in offsets from base.lo; occluders are narrower than pi so one copy suffices.
    std::vector<std::pair<double, double>> covered;
    covered.reserve(occluders.size());
    for (const auto& occ : occluders) {
        const double a = normalize_angle(occ.lo - base.lo);
        const double b = a + occ.width();
        const double lo = std::max(a, 0.0);
        const double hi = std::min(b, width);
        if (hi > lo) covered.emplace_back(lo, hi);
    }
    std::sort(covered.begin(), covered.end());

    std::vector<AngInterval> visible;
    double cursor = 0.0;
    for (const auto& [lo, hi] : covered) {
        if (lo > cursor) visible.push_back(make_interval(base.lo + cursor, lo - cursor));
        cursor = std::max(cursor, hi);
        if (cursor >= width) break;
    }
    if (cursor < width) visible.push_back(make_interval(base.lo + cursor, width - cursor));
    return visible;
}

double total_width(std::span<const AngInterval> intervals) {
    double sum = 0.0;
    for (const auto& iv : intervals) sum += iv.width();
    return sum;
}

}  // namespace swarm

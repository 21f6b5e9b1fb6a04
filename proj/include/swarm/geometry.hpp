#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace swarm {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Planar vector in meters (world frame or a robot's local frame).
struct CartVec {
    double x = 0.0;
    double y = 0.0;

    constexpr CartVec operator+(CartVec o) const { return {x + o.x, y + o.y}; }
    constexpr CartVec operator-(CartVec o) const { return {x - o.x, y - o.y}; }
    constexpr CartVec operator*(double s) const { return {x * s, y * s}; }
    constexpr CartVec operator-() const { return {-x, -y}; }
    CartVec& operator+=(CartVec o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr double dot(CartVec o) const { return x * o.x + y * o.y; }
    constexpr double cross(CartVec o) const { return x * o.y - y * o.x; }
    double norm() const { return std::sqrt(x * x + y * y); }
    constexpr bool operator==(const CartVec&) const = default;
};

/// Polar vector: range r >= 0 and bearing in (-pi, pi].
struct PolarVec {
    double r = 0.0;
    double beta = 0.0;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double a);

CartVec polar_to_cart(PolarVec p);
/// The zero vector maps to (r = 0, beta = 0).
PolarVec cart_to_polar(CartVec c);

CartVec rotate(CartVec v, double angle);
CartVec unit_vector(double angle);

/// Rectangle footprint of a robot. Heading is the direction of the long (length) axis.
struct OrientedRect {
    CartVec center;
    double heading = 0.0;
    double half_length = 0.025;
    double half_width = 0.01;
};

/// Corners in counterclockwise order, starting at front-left (+x, +y in the body frame).
std::array<CartVec, 4> rect_corners(const OrientedRect& rect);

/// True when p lies inside or on the boundary of rect.
bool rect_contains(const OrientedRect& rect, CartVec p);

/// Angular interval [lo, hi] on the circle. lo is normalized; hi = lo + width,
/// so hi may exceed pi. Width is always in [0, pi).
struct AngInterval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    double mid() const { return normalize_angle(lo + 0.5 * (hi - lo)); }
    /// Membership with both endpoints included.
    bool contains(double angle) const;
};

AngInterval make_interval(double lo, double width);

struct SubtendedView {
    AngInterval interval;  // world-frame bearings from the observer
    CartVec left_corner;   // corner at interval.lo
    CartVec right_corner;  // corner at interval.hi
};

/// Minimal angular interval covering the rectangle as seen from observer.
/// Throws std::domain_error if the observer is inside (or on) the rectangle.
SubtendedView subtended_interval(CartVec observer, const OrientedRect& rect);

/// Parts of base not covered by any occluder, disjoint and sorted counterclockwise from base.lo.
std::vector<AngInterval> interval_subtract(const AngInterval& base,
                                           std::span<const AngInterval> occluders);

double total_width(std::span<const AngInterval> intervals);

}  // namespace swarm

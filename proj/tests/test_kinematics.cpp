#include <stdexcept>
#include <random>

#include "doctest.h"
#include "swarm/kinematics.hpp"

using namespace swarm;
using doctest::Approx;

TEST_SUITE("kinematics") {

TEST_CASE("mdmc examples") {
    const ControlGains g;
    auto c = mdmc({0, 0}, g);
    CHECK(c.u == Approx(0.0175));
    CHECK(c.omega == 0.0);
    // Raw 2.5 * 0.01 + 0.0175 = 0.0425 exceeds U_max.
    c = mdmc({0.01, 0}, g);
    CHECK(g.k1 * 0.01 + g.u_forward == Approx(0.0425));
    CHECK(c.u == Approx(0.035));
    c = mdmc({0, -10}, g);
    CHECK(g.k2 * -10 == Approx(-0.6));
    CHECK(c.omega == Approx(-0.5236));
    CHECK_THROWS_AS(mdmc({NAN, 0}, g), std::invalid_argument);
}

TEST_CASE("mdmc output always within limits") {
    const ControlGains g;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> f(0.0, 20.0);
    for (int k = 0; k < 10000; ++k) {
        const auto c = mdmc({f(rng), f(rng)}, g);
        CHECK(c.u >= 0.0);
        CHECK(c.u <= g.u_max);
        CHECK(std::abs(c.omega) <= g.omega_lim);
    }
}

TEST_CASE("wheel speeds follow the printed sign convention") {
    auto w = wheel_speeds(0.02, 0.0, 0.018);
    CHECK(w.right == Approx(0.02));
    CHECK(w.left == Approx(0.02));
    w = wheel_speeds(0.0, 0.5, 0.018);
    CHECK(w.right == Approx(-0.0045));
    CHECK(w.left == Approx(0.0045));
    w = wheel_speeds(0.0175, -0.5236, 0.018);
    CHECK(w.right == Approx(0.0175 + 0.0047124));
    CHECK(w.left == Approx(0.0175 - 0.0047124));
    CHECK(w.right + w.left == Approx(2 * 0.0175));
    CHECK(w.left - w.right == Approx(-0.5236 * 0.018));
}

TEST_CASE("integrate examples") {
    RobotState s;
    auto n = integrate(s, {0.035, 0.0}, 0.1);
    CHECK(n.pose.position.x == Approx(0.0035));
    CHECK(n.pose.position.y == 0.0);
    CHECK(n.last_displacement.x == Approx(0.0035));

    n = integrate(s, {0.0, 0.5236}, 0.1);
    CHECK(n.pose.heading == Approx(0.05236));
    CHECK(n.pose.position == CartVec{});

    s.pose = {{0.3, -0.2}, 1.1};
    n = integrate(s, {0.0, 0.0}, 0.1);
    CHECK(n.pose.position == s.pose.position);
    CHECK(n.pose.heading == s.pose.heading);
}

TEST_CASE("translation uses the heading before the update") {
    RobotState s;
    s.pose.heading = 0.0;
    const auto n = integrate(s, {0.03, 0.5}, 0.1);
    CHECK(n.pose.position.y == 0.0);
    CHECK(n.pose.position.x == Approx(0.003));
    CHECK(n.pose.heading == Approx(0.05));
}

TEST_CASE("fault actuation") {
    FaultStatus stuck{FaultKind::Stuck, 1.0, 10};
    CHECK(apply_fault(stuck, {0.03, 0.2}, 9).u == 0.03);
    CHECK(apply_fault(stuck, {0.03, 0.2}, 10).u == 0.0);
    CHECK(apply_fault(stuck, {0.03, 0.2}, 10).omega == 0.0);
    FaultStatus slow{FaultKind::Slowdown, 0.3, 0};
    const auto c = apply_fault(slow, {0.03, 0.2}, 0);
    CHECK(c.u == Approx(0.009));
    CHECK(c.omega == Approx(0.06));
}

TEST_CASE("collisions: separated bodies untouched") {
    std::vector<OrientedRect> b = {{{0, 0}, 0, 0.025, 0.01}, {{0.2, 0}, 0, 0.025, 0.01}};
    const auto before = b;
    resolve_collisions(b, {});
    CHECK(b[0].center == before[0].center);
    CHECK(b[1].center == before[1].center);
}

TEST_CASE("collisions: symmetric split along x") {
    // Overlap of 0.004 m along x.
    std::vector<OrientedRect> b = {{{0, 0}, 0, 0.025, 0.01}, {{0.046, 0}, 0, 0.025, 0.01}};
    resolve_collisions(b, {});
    CHECK(b[0].center.x == Approx(-0.002));
    CHECK(b[1].center.x == Approx(0.048));
    CHECK(b[0].center.y == 0.0);
}

TEST_CASE("collisions: stuck robot is immovable") {
    std::vector<OrientedRect> b = {{{0, 0}, 0, 0.025, 0.01}, {{0.046, 0}, 0, 0.025, 0.01}};
    const bool fixed[] = {true, false};
    resolve_collisions(b, fixed);
    CHECK(b[0].center.x == 0.0);
    CHECK(b[1].center.x == Approx(0.050));
}

TEST_CASE("collisions: random clusters end disjoint") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pos(-0.15, 0.15), ang(-kPi, kPi);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<OrientedRect> b;
        for (int k = 0; k < 12; ++k) b.push_back({{pos(rng), pos(rng)}, ang(rng), 0.025, 0.01});
        const int sweeps = resolve_collisions(b, {}, 200);
        if (sweeps >= 200) continue;
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                double depth = 0.0;
                separation_vector(b[i], b[j], depth);
                CHECK(depth <= 1e-9);
            }
        }
    }
}

}

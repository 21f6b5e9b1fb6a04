#include <stdexcept>
#include <random>

#include "doctest.h"
#include "swarm/behavior.hpp"

using namespace swarm;
using doctest::Approx;

namespace {

NeighborReading reading(TrackId id, double r, double beta, double theta = 0.2) {
    NeighborReading n;
    n.estimate.track_id = id;
    n.estimate.center = {r, beta};
    n.estimate.theta = theta;
    return n;
}

double signed_magnitude(PolarVec f, double beta) {
    if (f.r == 0.0) return 0.0;
    return std::abs(normalize_angle(f.beta - beta)) < 1e-12 ? f.r : -f.r;
}

}  // namespace

TEST_SUITE("behavior") {

TEST_CASE("pair force examples") {
    CHECK(aa_pair_force(0.1, 0.3, 0.1, 1.0).r == 0.0);
    const auto attract = aa_pair_force(0.2, 0.3, 0.1, 1.0);
    CHECK(signed_magnitude(attract, 0.3) == Approx(2.5).epsilon(1e-12));
    const auto repel = aa_pair_force(0.05, 0.3, 0.1, 1.0);
    CHECK(signed_magnitude(repel, 0.3) == Approx(-20.0).epsilon(1e-12));
    CHECK(repel.beta == Approx(0.3 - kPi));
    CHECK_THROWS_AS(aa_pair_force(0.0, 0.0, 0.1, 1.0), std::domain_error);
}

TEST_CASE("total force examples") {
    const ModelParams params;
    const CartVec none = aa_total_force({}, params);
    CHECK(none.x == 0.0);
    CHECK(none.y == 0.0);

    const std::vector<PolarVec> pair = {{0.15, 0.7}, {0.15, -0.7}};
    const CartVec sym = aa_total_force(pair, params);
    CHECK(std::abs(sym.y) < 1e-12);
    CHECK(sym.x > 0.0);

    const std::vector<PolarVec> one = {{0.2, 0.0}};
    const CartVec f = aa_total_force(one, params);
    CHECK(f.x == Approx(2.5).epsilon(1e-12));
    CHECK(std::abs(f.y) < 1e-15);
}

TEST_CASE("faulty pair force rules") {
    Rng rng(1);
    CHECK(faulty_pair_force(0.15, 0.0, 0.1, InteractionRule::Avoid, 0.5, rng).r == 0.0);
    CHECK(signed_magnitude(faulty_pair_force(0.05, 0.0, 0.1, InteractionRule::Avoid, 0.5, rng), 0.0) ==
          Approx(-20.0));
    CHECK(signed_magnitude(faulty_pair_force(0.2, 0.0, 0.1, InteractionRule::AvoidHalfForce, 0.5, rng), 0.0) ==
          Approx(1.25));
    for (double r : {0.05, 0.1, 0.15, 0.18}) {
        const auto avoid = faulty_pair_force(r, 0.4, 0.1, InteractionRule::Avoid, 0.5, rng);
        const auto nominal = aa_pair_force(r, 0.4, 0.1, 1.0);
        const auto p1 = faulty_pair_force(r, 0.4, 0.1, InteractionRule::AvoidHalfTime, 1.0, rng);
        const auto p0 = faulty_pair_force(r, 0.4, 0.1, InteractionRule::AvoidHalfTime, 0.0, rng);
        CHECK(p1.r == avoid.r);
        CHECK(p0.r == nominal.r);
        CHECK(p0.beta == nominal.beta);
    }
    CHECK_THROWS_AS(faulty_pair_force(0.0, 0.0, 0.1, InteractionRule::Avoid, 0.5, rng), std::domain_error);
}

TEST_CASE("avoid half time draws the avoid form with probability p") {
    Rng rng(77);
    const int draws = 100000;
    for (double p : {0.5, 0.2}) {
        int avoided = 0;
        for (int k = 0; k < draws; ++k) {
            // Beyond r_d the avoid form is exactly zero, the nominal form is not.
            if (faulty_pair_force(0.15, 0.0, 0.1, InteractionRule::AvoidHalfTime, p, rng).r == 0.0) ++avoided;
        }
        const double sigma = std::sqrt(p * (1 - p) / draws);
        CHECK(std::abs(static_cast<double>(avoided) / draws - p) <= 3 * sigma);
    }
}

TEST_CASE("alignment examples") {
    const std::vector<CartVec> same = {{0, 0}, {0, 0}};
    CHECK(align_force(same).norm() == 0.0);

    const std::vector<CartVec> left = {{0.0, 0.0175}};
    const CartVec a = align_force(left);
    CHECK(a.x == Approx(0.0));
    CHECK(a.y == Approx(1.0));

    const std::vector<CartVec> both = {{0.0, 0.0175}, {0.0, -0.0175}};
    CHECK(align_force(both).norm() < 1e-15);

    // A moving focal robot sees v_j - v_i, not the heading of j.
    const CartVec vi{0.0175, 0.0};
    const std::vector<CartVec> moving = {CartVec{0.0, 0.0175} - vi};
    CHECK(cart_to_polar(align_force(moving)).beta == Approx(3 * kPi / 4));
}

TEST_CASE("recommended sensing range") {
    CHECK(recommended_sense_range(0.10) == Approx(0.2021).epsilon(1e-3));
    CHECK(recommended_sense_range(0.11) == Approx(0.2223).epsilon(1e-3));
    CHECK(recommended_sense_range(0.0) == 0.0);
}

TEST_CASE("durations are drawn from half-open intervals") {
    Rng rng(3);
    for (int k = 0; k < 1000; ++k) CHECK(draw_duration(6, 7, rng) == 6);
    std::set<int> seen;
    for (int k = 0; k < 1000; ++k) seen.insert(draw_duration(11, 20, rng));
    CHECK(*seen.begin() == 11);
    CHECK(*seen.rbegin() == 19);
    CHECK_THROWS_AS(draw_duration(5, 5, rng), std::invalid_argument);
}

TEST_CASE("classification examples") {
    PGConfig cfg;
    ClassificationSets sets;
    const Frame still = {reading(1, 0.1, 0.0)};
    classify_update(sets, still, frame_deltas(still, still), cfg, kTickSeconds);
    CHECK(sets.faulty.contains(1));
    CHECK_FALSE(sets.nominal.contains(1));

    // Moving 0.003 m per tick crosswise.
    ClassificationSets moving_sets;
    const Frame before = {reading(2, 0.1, 0.0)};
    const Frame after = {reading(2, 0.1, 0.03)};
    classify_update(moving_sets, after, frame_deltas(before, after), cfg, kTickSeconds);
    CHECK(moving_sets.nominal.contains(2));

    // Faulty until it moves, then sticky nominal.
    classify_update(sets, still, frame_deltas(still, still), cfg, kTickSeconds);
    CHECK(sets.faulty.contains(1));
    const Frame shifted = {reading(1, 0.1, 0.05)};
    classify_update(sets, shifted, frame_deltas(still, shifted), cfg, kTickSeconds);
    CHECK(sets.nominal.contains(1));
    classify_update(sets, shifted, frame_deltas(shifted, shifted), cfg, kTickSeconds);
    CHECK(sets.nominal.contains(1));
    CHECK_FALSE(sets.faulty.contains(1));

    // Occluded, then back under a fresh track: dropped, then tracked one tick, then classified.
    const Frame gone = {};
    classify_update(sets, gone, frame_deltas(shifted, gone), cfg, kTickSeconds);
    CHECK_FALSE(sets.classified(1));
    const Frame back = {reading(9, 0.1, 0.05)};
    classify_update(sets, back, frame_deltas(gone, back), cfg, kTickSeconds);
    CHECK_FALSE(sets.classified(9));
    classify_update(sets, back, frame_deltas(back, back), cfg, kTickSeconds);
    CHECK(sets.faulty.contains(9));
}

TEST_CASE("classification sets stay disjoint") {
    Rng rng(11);
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_real_distribution<double> jitter(0.0, 0.002);
    PGConfig cfg;
    cfg.u_min = 0.005;
    cfg.theta_min = 0.01;
    ClassificationSets sets;
    Frame prev;
    for (int tick = 0; tick < 5000; ++tick) {
        Frame curr;
        for (TrackId t = 1; t <= 8; ++t) {
            if (coin(rng) == 0) continue;
            curr.push_back(reading(t, 0.1 + jitter(rng), 0.1 * static_cast<double>(t), 0.2 + jitter(rng)));
        }
        classify_update(sets, curr, frame_deltas(prev, curr), cfg, kTickSeconds);
        for (TrackId t : sets.nominal) CHECK_FALSE(sets.faulty.contains(t));
        for (TrackId t : sets.faulty) {
            CHECK(std::any_of(curr.begin(), curr.end(),
                              [&](const NeighborReading& n) { return n.estimate.track_id == t; }));
        }
        if (coin(rng) == 0) sets.clear();
        prev = curr;
    }
}

TEST_CASE("pause and go cycle") {
    PGConfig cfg;
    cfg.pause_min = 6;
    cfg.pause_max = 7;
    Rng rng(5);
    PgState state;
    pg_init(state, cfg, rng);
    CHECK(state.mode == BehaviorState::Go);
    CHECK(state.timer >= 11);
    CHECK(state.timer < 20);

    const ModelParams params;
    const Frame frame = {reading(1, 0.2, 0.0), reading(2, 0.07, 1.0)};
    std::vector<int> pause_lengths;
    int run = 0;
    for (int tick = 0; tick < 400; ++tick) {
        const auto d = pg_step(state, frame, frame, false, params, cfg, rng);
        if (d.paused) {
            CHECK(d.force.norm() == 0.0);
            ++run;
        } else {
            if (run > 0) pause_lengths.push_back(run);
            run = 0;
            // With S_i empty the go force is the plain AA sum.
            if (state.sets.faulty.empty()) {
                const std::vector<PolarVec> centers = {{0.2, 0.0}, {0.07, 1.0}};
                const CartVec plain = aa_total_force(centers, params);
                CHECK(d.force.x == Approx(plain.x));
                CHECK(d.force.y == Approx(plain.y));
            }
        }
    }
    REQUIRE(pause_lengths.size() > 5);
    for (int len : pause_lengths) CHECK(len == 6);
}

TEST_CASE("paused controller commands zero wheels") {
    ControllerConfig cfg;
    cfg.model = ModelKind::AAPGV;
    cfg.pg.go_min = 1;
    cfg.pg.go_max = 2;
    Controller c(cfg, 42);
    const std::vector<OrientedRect> bodies = {{{0, 0}, 0.0, 0.025, 0.01}, {{0.12, 0.02}, 1.0, 0.025, 0.01}};
    const SensorConfig sensor;
    CHECK_FALSE(c.decide(sense(0, bodies, sensor, 0)).paused);
    const Decision d = c.decide(sense(0, bodies, sensor, 1));
    CHECK(d.paused);
    CHECK(d.command.u == 0.0);
    CHECK(d.command.omega == 0.0);
}

TEST_CASE("two overlapping pauses misclassify each other") {
    ControllerConfig cfg;
    cfg.model = ModelKind::AAPGV;
    cfg.pg.go_min = 1;
    cfg.pg.go_max = 2;
    cfg.pg.pause_min = 6;
    cfg.pg.pause_max = 7;
    std::vector<Controller> robots = {Controller(cfg, 1), Controller(cfg, 2)};
    const std::vector<OrientedRect> bodies = {{{0, 0}, 0.0, 0.025, 0.01}, {{0.1, 0.03}, 0.5, 0.025, 0.01}};
    const SensorConfig sensor;
    std::vector<int> fp(2, 0), cycles(2, 0);
    for (std::int64_t tick = 0; tick < 8; ++tick) {
        for (std::size_t i = 0; i < 2; ++i) {
            const Decision d = robots[i].decide(sense(i, bodies, sensor, tick));
            if (d.pause_completed) {
                ++cycles[i];
                fp[i] += static_cast<int>(d.faulty_sources.size());
                REQUIRE(d.faulty_sources.size() == 1);
                CHECK(d.faulty_sources[0] == static_cast<int>(1 - i));
            }
        }
    }
    CHECK(cycles == std::vector<int>{1, 1});
    CHECK(fp == std::vector<int>{1, 1});
}

}

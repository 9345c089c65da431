#include <doctest.h>

#include "ringsim/dynamics.hpp"
#include "ringsim/errors.hpp"
#include "ringsim/lane_change.hpp"

#include <cmath>
#include <limits>

using namespace ringsim;

namespace {

VehicleState vehicle(int id, double pos, double vel,
                     VehicleClass k = VehicleClass::Human) {
    VehicleState v;
    v.id = id;
    v.pos = pos;
    v.vel = vel;
    v.klass = k;
    v.alpha_i = 0.5;
    v.beta_i = 20.0;
    return v;
}

DrivingContext make_ctx() {
    DrivingContext ctx;
    ctx.model = ModelParams{};
    ctx.av = ControlParams{};
    return ctx;
}

} // namespace

TEST_CASE("adjacency is linear 0-1-2") {
    RoadState road;
    for (int j = 0; j < 3; ++j) {
        LaneState lane;
        lane.lane_id = j;
        lane.length = 240.0;
        road.lanes.push_back(lane);
    }
    CHECK(adjacent_lanes(road, 0) == std::vector<int>{1});
    CHECK(adjacent_lanes(road, 1) == std::vector<int>{0, 2});
    CHECK(adjacent_lanes(road, 2) == std::vector<int>{1});
}

TEST_CASE("hypothetical accelerations") {
    const auto ctx = make_ctx();
    const double h = 10.0;
    const double v_eq = equilibrium_speed(h, ctx.model);

    SUBCASE("empty target lane: self-leader over the whole ring, follower absent") {
        RoadState road;
        LaneState l0;
        l0.lane_id = 0;
        l0.length = 240.0;
        l0.vehicles = {vehicle(0, 0.0, v_eq), vehicle(1, 10.0, v_eq)};
        LaneState l1;
        l1.lane_id = 1;
        l1.length = 240.0;
        road.lanes = {l0, l1};

        const auto ha = hypothetical_accels(road, 0, 1, ctx, 0.0);
        REQUIRE(ha.has_value());
        CHECK(ha->a_new_follower == std::numeric_limits<double>::infinity());
        const double expect =
            clamp_accel(bando_ftl_accel(v_eq, 240.0, v_eq, ctx.model), ctx.model);
        CHECK(ha->a_self_new == doctest::Approx(expect).epsilon(1e-14));
    }

    SUBCASE("identical local equilibrium on both sides: all three accels are zero") {
        RoadState road;
        LaneState l0;
        l0.lane_id = 0;
        l0.length = 30.0;
        l0.vehicles = {vehicle(0, 0.0, v_eq), vehicle(1, 10.0, v_eq),
                       vehicle(2, 20.0, v_eq)};
        LaneState l1;
        l1.lane_id = 1;
        l1.length = 30.0;
        l1.vehicles = {vehicle(10, 0.0, v_eq), vehicle(11, 20.0, v_eq)};
        road.lanes = {l0, l1};

        const auto ha = hypothetical_accels(road, 1, 1, ctx, 0.0); // from pos 10
        REQUIRE(ha.has_value());
        CHECK(ha->a_self_now == 0.0);
        CHECK(ha->a_self_new == 0.0);
        CHECK(ha->a_new_follower == 0.0);
    }

    SUBCASE("occupied mapped slot means no change") {
        RoadState road;
        LaneState l0;
        l0.lane_id = 0;
        l0.length = 240.0;
        l0.vehicles = {vehicle(0, 100.0, v_eq), vehicle(1, 130.0, v_eq)};
        LaneState l1;
        l1.lane_id = 1;
        l1.length = 240.0;
        l1.vehicles = {vehicle(10, 100.0, v_eq), vehicle(11, 180.0, v_eq)};
        road.lanes = {l0, l1};
        CHECK_FALSE(hypothetical_accels(road, 0, 1, ctx, 0.0).has_value());
    }

    SUBCASE("tight gaps at the mapped slot mean no change") {
        RoadState road;
        LaneState l0;
        l0.lane_id = 0;
        l0.length = 240.0;
        l0.vehicles = {vehicle(0, 100.0, v_eq), vehicle(1, 130.0, v_eq)};
        LaneState l1;
        l1.lane_id = 1;
        l1.length = 240.0;
        l1.vehicles = {vehicle(10, 97.0, v_eq), vehicle(11, 103.0, v_eq)};
        road.lanes = {l0, l1};
        // both gaps are 3 m < l_v = 4.5 m
        CHECK_FALSE(hypothetical_accels(road, 0, 1, ctx, 0.0).has_value());
    }
}

namespace {

/// Ego crawls behind a jammed leader in lane 0 while lane 1 is nearly free:
/// a textbook high-incentive move.
RoadState incentive_road() {
    RoadState road;
    LaneState l0;
    l0.lane_id = 0;
    l0.length = 240.0;
    l0.vehicles = {vehicle(0, 0.0, 0.0), vehicle(1, 7.0, 0.0)};
    LaneState l1;
    l1.lane_id = 1;
    l1.length = 240.0;
    l1.vehicles = {vehicle(10, 120.0, 5.0)};
    road.lanes = {l0, l1};
    return road;
}

} // namespace

TEST_CASE("incentive/safety/cooldown rule") {
    const auto ctx = make_ctx();
    LaneChangeParams lc{}; // delta_i = 3, delta_s = 0.5, tau = 5

    SUBCASE("clear gain accepted with correct bookkeeping") {
        auto road = incentive_road();
        lc.delta_i = 0.6;
        const auto d = mobil_decide(road, 0, ctx, lc, 100.0);
        REQUIRE(d.has_value());
        CHECK(d->vid == 0);
        CHECK(d->from_lane == 0);
        CHECK(d->to_lane == 1);
        CHECK(d->a_new > d->a_cur + lc.delta_i);
        CHECK(d->a_new > -lc.delta_s);
        CHECK(d->a_fol > -lc.delta_s);
        // capped acceleration at a huge gap from standstill
        CHECK(d->a_new == 2.5);
    }

    SUBCASE("no gain means no move whatever the thresholds") {
        RoadState road;
        const double v_eq = equilibrium_speed(10.0, ctx.model);
        LaneState l0;
        l0.lane_id = 0;
        l0.length = 30.0;
        l0.vehicles = {vehicle(0, 0.0, v_eq), vehicle(1, 10.0, v_eq),
                       vehicle(2, 20.0, v_eq)};
        LaneState l1;
        l1.lane_id = 1;
        l1.length = 30.0;
        l1.vehicles = {vehicle(10, 0.0, v_eq), vehicle(11, 20.0, v_eq)};
        road.lanes = {l0, l1};
        lc.delta_i = 1e-9; // any positive threshold beats a zero gain
        CHECK_FALSE(mobil_decide(road, 1, ctx, lc, 100.0).has_value());
    }

    SUBCASE("safety veto beats any incentive") {
        auto road = incentive_road();
        // fast follower right behind the landing slot (pos 234 keeps the
        // lane sorted: the existing occupant sits at 120)
        road.lanes[1].vehicles.push_back(vehicle(11, 234.0, 9.7));
        lc.delta_i = 0.6;
        lc.delta_s = 0.5;
        // follower: gap 6 m at speed 9.7 behind a standing car -> huge braking
        const double a_fol = clamp_accel(
            bando_ftl_accel(9.7, 6.0, 0.0, ctx.model), ctx.model);
        REQUIRE(a_fol < -lc.delta_s);
        CHECK_FALSE(mobil_decide(road, 0, ctx, lc, 100.0).has_value());
    }

    SUBCASE("cooldown boundary is strict") {
        auto road = incentive_road();
        lc.delta_i = 0.6;
        road.lanes[0].vehicles[0].last_lc_time = 95.0;
        CHECK_FALSE(mobil_decide(road, 0, ctx, lc, 100.0).has_value()); // t == t0 + tau
        CHECK(mobil_decide(road, 0, ctx, lc, 100.02).has_value());
    }

    SUBCASE("the automated vehicle is out of scope here") {
        auto road = incentive_road();
        road.lanes[0].vehicles[0].klass = VehicleClass::AV;
        CHECK_THROWS_AS(mobil_decide(road, 0, ctx, lc, 100.0), SimDomainError);
    }
}

TEST_CASE("decision pass") {
    const auto ctx = make_ctx();
    LaneChangeParams lc{};

    SUBCASE("equilibrium road: no events, state untouched") {
        RoadState road;
        const double v_eq = equilibrium_speed(10.0, ctx.model);
        for (int j = 0; j < 2; ++j) {
            LaneState lane;
            lane.lane_id = j;
            lane.length = 240.0;
            for (int i = 0; i < 24; ++i)
                lane.vehicles.push_back(vehicle(100 * j + i, 10.0 * i + 2.0 * j, v_eq));
            road.lanes.push_back(lane);
        }
        const auto before = road;
        const auto events = lane_change_pass(road, ctx, lc, 50.0);
        CHECK(events.empty());
        for (int j = 0; j < 2; ++j)
            for (std::size_t i = 0; i < 24; ++i) {
                CHECK(road.lanes[j].vehicles[i].pos == before.lanes[j].vehicles[i].pos);
                CHECK(road.lanes[j].vehicles[i].lc_count == 0);
            }
    }

    SUBCASE("single qualifying vehicle moves exactly once") {
        auto road = incentive_road();
        road.time = 100.0; // executed moves are stamped with the road clock
        lc.delta_i = 0.6;
        const auto events = lane_change_pass(road, ctx, lc, 100.0);
        REQUIRE(events.size() == 1);
        CHECK(events[0].vid == 0);
        CHECK(events[0].kind == EventKind::LaneChange);
        CHECK(events[0].from_lane == 0);
        CHECK(events[0].to_lane == 1);
        CHECK(events[0].t == 100.0);
        CHECK(road.total_vehicles() == 3);
        CHECK(road.lanes[0].vehicles.size() == 1);
        CHECK(road.lanes[1].vehicles.size() == 2);
        const auto ref = find_vehicle(road, 0);
        CHECK(road.lanes[1].vehicles[ref->index].last_lc_time == 100.0);
    }

    SUBCASE("executed changes satisfy all three predicates at decision time") {
        auto road = incentive_road();
        road.time = 100.0;
        lc.delta_i = 0.6;
        const auto events = lane_change_pass(road, ctx, lc, 100.0);
        for (const auto& e : events) {
            CHECK(e.a_new > e.a_cur + lc.delta_i);
            CHECK(e.a_new > -lc.delta_s);
            CHECK(e.a_fol > -lc.delta_s);
        }
    }
}

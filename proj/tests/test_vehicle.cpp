#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inspection/scenario.hpp"
#include "inspection/vehicle.hpp"

using namespace inspection;

namespace {
// Simulation parameters used throughout: dt 1 s, 3.35 kg, 20% drag per step.
DynamicsModel sim_model() { return {1.0, 3.35, 0.2}; }

OperatingBounds sim_bounds() {
    OperatingBounds b;
    b.workspace_lo = {0, 0, 0};
    b.workspace_hi = {500, 500, 250};
    b.v_lo = {-15, -15, -15};
    b.v_hi = {15, 15, 15};
    b.u_lo = {-20, -20, -20};
    b.u_hi = {20, 20, 20};
    return b;
}
} // namespace

TEST_CASE("rest with zero force is a fixed point") {
    const AgentState s{{0, 0, 0}, {0, 0, 0}};
    const AgentState n = step(sim_model(), s, {0, 0, 0});
    CHECK(n.p.norm() == 0.0);
    CHECK(n.v.norm() == 0.0);
}

TEST_CASE("coasting sheds velocity through drag") {
    const AgentState s{{0, 0, 0}, {1, 0, 0}};
    const AgentState n = step(sim_model(), s, {0, 0, 0});
    CHECK(n.p.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(n.v.x == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("thrust from rest moves velocity but not position") {
    const AgentState s{{0, 0, 0}, {0, 0, 0}};
    const AgentState n = step(sim_model(), s, {3.35, 0, 0});
    CHECK(n.p.x == 0.0);
    CHECK(n.v.x == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("bounds are closed boxes") {
    const OperatingBounds b = sim_bounds();
    const AgentState s{{10, 10, 10}, {0, 0, 0}};
    CHECK(check_bounds(b, s, {20, 0, 0}));
    CHECK_FALSE(check_bounds(b, s, {20.001, 0, 0}));
    CHECK(check_bounds(b, {{0, 0, 0}, {0, 0, 0}}, {0, 0, 0}));
}

TEST_CASE("step is linear in state and control") {
    const DynamicsModel m = sim_model();
    SplitMix64 rng(3);
    const auto rnd = [&] { return rng.uniform() * 10 - 5; };
    for (int i = 0; i < 100; ++i) {
        const AgentState s1{{rnd(), rnd(), rnd()}, {rnd(), rnd(), rnd()}};
        const AgentState s2{{rnd(), rnd(), rnd()}, {rnd(), rnd(), rnd()}};
        const Vec3 u1{rnd(), rnd(), rnd()}, u2{rnd(), rnd(), rnd()};
        const AgentState a = step(m, s1, u1);
        const AgentState b = step(m, s2, u2);
        const AgentState sum = step(m, {s1.p + s2.p, s1.v + s2.v}, u1 + u2);
        for (int k = 0; k < 3; ++k) {
            CHECK(sum.p[k] == doctest::Approx(a.p[k] + b.p[k]).epsilon(1e-12));
            CHECK(sum.v[k] == doctest::Approx(a.v[k] + b.v[k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("coasting never gains speed") {
    const DynamicsModel m = sim_model();
    SplitMix64 rng(5);
    for (int i = 0; i < 100; ++i) {
        AgentState s{{0, 0, 0},
                     {rng.uniform() * 30 - 15, rng.uniform() * 30 - 15,
                      rng.uniform() * 30 - 15}};
        const double before = s.v.norm();
        s = step(m, s, {0, 0, 0});
        CHECK(s.v.norm() <= before + 1e-12);
    }
}

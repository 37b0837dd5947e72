#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inspection/oracle.hpp"
#include "inspection/p2.hpp"
#include "test_support.hpp"

#include <set>

using namespace inspection;
using namespace inspection::milp;

namespace {

int count_rows_with_prefix(const Model& m, const std::string& prefix) {
    int n = 0;
    for (const auto& r : m.rows)
        if (r.name.rfind(prefix, 0) == 0) ++n;
    return n;
}

P2Instance paper_scale_instance() {
    P2Instance inst;
    inst.model = {1.0, 3.35, 0.2};
    inst.bounds.workspace_lo = {0, 0, 0};
    inst.bounds.workspace_hi = {500, 500, 250};
    inst.bounds.v_lo = {-15, -15, -15};
    inst.bounds.v_hi = {15, 15, 15};
    inst.bounds.u_lo = {-20, -20, -20};
    inst.bounds.u_hi = {20, 20, 20};
    inst.camera = {10.0, 0.5, 100.0};
    inst.cuboid = Cuboid::from_box({185, 250, 0}, {315, 350, 150});
    for (Face& f : inst.cuboid.faces) f.inspectable = f.id < 4;
    SplitMix64 rng(3);
    for (int fid = 0; fid < 4; ++fid) {
        const Face& f = inst.cuboid.face(fid);
        for (int j = 0; j < 5; ++j) {
            Vec3 pos;
            pos[f.axis] = f.plane;
            pos[f.axis_a] = f.lo_a + rng.uniform() * (f.hi_a - f.lo_a);
            pos[f.axis_b] = f.lo_b + rng.uniform() * (f.hi_b - f.lo_b);
            inst.points.push_back({fid, j, pos});
        }
    }
    inst.memory = InspectionMemory(20);
    inst.state = {{250, 100, 30}, {0, 0, 0}};
    inst.horizon = 5;
    inst.weight_w = 0.01;
    inst.target = inst.points.front();
    inst.n_tan = 17;
    return inst;
}

} // namespace

TEST_CASE("binary counts match the variable layout arithmetic") {
    // 4 faces, 20 points, T = 5:
    // b1 = 100, b2 = 20, b3 = 400, b4 = 100, k1 = 100, k2 = 100, o = 30,
    // s = 20; total 870.
    P2Instance inst = paper_scale_instance();
    for (bool tighten : {true, false}) {
        inst.tighten = tighten;
        P2Build pb = build(inst);
        CHECK(pb.model.num_binaries() == 870);
        CHECK(pb.layout.b1.size() == 100);
        CHECK(pb.layout.b2.size() == 20);
        CHECK(pb.layout.b3.size() == 400);
        CHECK(pb.layout.b4.size() == 100);
        CHECK(pb.layout.k1.size() == 100);
        CHECK(pb.layout.k2.size() == 100);
        CHECK(pb.layout.o.size() == 30);
        CHECK(pb.layout.s.size() == 20);
        for (const VarId& v : pb.layout.k2) CHECK(v.valid());
    }
}

TEST_CASE("single face, single point, unit horizon row counts") {
    P2Instance inst = testsup::small_instance(1, 1, 77, /*tighten=*/false);
    // One inspectable face on a cuboid floating inside the workspace, so
    // every view condition stays contingent and gets its indicator row.
    inst.cuboid = Cuboid::from_box({40, 40, 20}, {60, 60, 40});
    for (Face& f : inst.cuboid.faces) f.inspectable = f.id == 1;
    inst.state = {{80, 50, 30}, {0, 0, 0}};
    inst.points.clear();
    const Face& f = inst.cuboid.face(1);
    inst.points.push_back({1, 0, {f.plane, 50, 30}});
    inst.memory = InspectionMemory(1);
    inst.target = inst.points.front();
    P2Build pb = build(inst);
    CHECK(count_rows_with_prefix(pb.model, "fv_") == 5);
    CHECK(count_rows_with_prefix(pb.model, "fexcl_") == 1);
    CHECK(count_rows_with_prefix(pb.model, "fov_") == 4);
    CHECK(count_rows_with_prefix(pb.model, "conj_") == 3);
    CHECK(count_rows_with_prefix(pb.model, "col_") == 6);
    CHECK(count_rows_with_prefix(pb.model, "once_") == 0); // trivial at T = 1
    CHECK(count_rows_with_prefix(pb.model, "mem_") == 1);
}

TEST_CASE("objective decays the inspection reward over the horizon") {
    P2Instance inst = paper_scale_instance();
    P2Build pb = build(inst);
    const LinExpr obj = objective_terms(pb.layout, inst);
    // tau = 0 reward is -1, tau = 4 is -0.2, cost-to-go weight is w.
    std::set<double> seen;
    for (const auto& t : obj) {
        if (pb.model.vars[static_cast<size_t>(t.var.index)].name.rfind("k2_", 0) == 0)
            seen.insert(t.coeff);
    }
    CHECK(seen.count(-1.0) == 1);
    CHECK(seen.count(-0.8) == 1);
    CHECK(seen.count(-0.6) == 1);
    CHECK(seen.count(-0.4) == 1);
    CHECK(seen.count(-0.2) == 1);
    for (int k = 0; k < 3; ++k)
        CHECK(pb.model.objective[static_cast<size_t>(pb.layout.q[static_cast<size_t>(k)].index)] ==
              doctest::Approx(0.01));
}

TEST_CASE("inspected points carry no inspection variable") {
    P2Instance inst = testsup::small_instance(3, 4, 5);
    inst.memory.mark(0);
    inst.memory.mark(2);
    P2Build pb = build(inst);
    for (int tau = 0; tau < inst.horizon; ++tau) {
        CHECK_FALSE(pb.layout.k2[static_cast<size_t>(pb.layout.pidx(tau, 0))].valid());
        CHECK(pb.layout.k2[static_cast<size_t>(pb.layout.pidx(tau, 1))].valid());
        CHECK_FALSE(pb.layout.k2[static_cast<size_t>(pb.layout.pidx(tau, 2))].valid());
        CHECK(pb.layout.k2[static_cast<size_t>(pb.layout.pidx(tau, 3))].valid());
    }
    // With no k2 there must be no reward path for those points.
    const LinExpr obj = objective_terms(pb.layout, inst);
    for (const auto& t : obj) {
        const std::string& name = pb.model.vars[static_cast<size_t>(t.var.index)].name;
        if (name.rfind("k2_", 0) == 0) CHECK(t.coeff < 0);
    }
}

TEST_CASE("all points inspected leaves only the cost-to-go objective") {
    P2Instance inst = testsup::small_instance(3, 4, 5);
    for (int i = 0; i < 4; ++i) inst.memory.mark(i);
    P2Build pb = build(inst);
    const LinExpr obj = objective_terms(pb.layout, inst);
    CHECK(obj.size() == 3); // the three epigraph terms
    for (const auto& t : obj) CHECK(t.coeff == doctest::Approx(0.01));
}

TEST_CASE("build rejects bad start states at build time") {
    P2Instance inst = testsup::small_instance(3, 2, 5);
    inst.state.p = {-5, 50, 10};
    CHECK_THROWS_AS(build(inst), BuildError);
    inst = testsup::small_instance(3, 2, 5);
    inst.state.v = {100, 0, 0};
    CHECK_THROWS_AS(build(inst), BuildError);
}

TEST_CASE("tightened and plain builds solve to the same objective") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        P2Instance inst = testsup::small_instance(2, 2, seed);
        inst.tighten = true;
        P2Build tight = build(inst);
        inst.tighten = false;
        P2Build plain = build(inst);
        SolveConfig cfg;
        cfg.gap_tol = 1e-9;
        Solution st = solve_milp(tight.model, cfg);
        Solution sp = solve_milp(plain.model, cfg);
        REQUIRE(st.status == SolveStatus::Optimal);
        REQUIRE(sp.status == SolveStatus::Optimal);
        CHECK(std::abs(st.objective - sp.objective) < 1e-6);
    }
}

TEST_CASE("a reachable point in view yields an inspection activation") {
    P2Instance inst = testsup::small_instance(2, 1, 101);
    // One point on the +x face, agent right in front of it within cut-off.
    inst.points.clear();
    const Face& f = inst.cuboid.face(1);
    inst.points.push_back({1, 0, {f.plane, 50, 10}});
    inst.memory = InspectionMemory(1);
    inst.target = inst.points.front();
    inst.state = {{75, 50, 10}, {0, 0, 0}};
    P2Build pb = build(inst);
    SolveConfig cfg;
    cfg.gap_tol = 1e-9;
    Solution sol = solve_milp(pb.model, cfg);
    REQUIRE(sol.status == SolveStatus::Optimal);
    StepPlan plan = extract_plan(sol, pb.layout, inst);
    REQUIRE(!plan.planned_inspections.empty());
    // Soundness: the activation is geometrically real at the planned state.
    for (const auto& ins : plan.planned_inspections) {
        const AgentState& s = plan.states[static_cast<size_t>(ins.tau)];
        CHECK(inspects(inst.camera, inst.cuboid.face(ins.face_id), s.p,
                       inst.points[static_cast<size_t>(ins.point)], 1e-6));
    }
}

TEST_CASE("decoded states equal the rollout of decoded controls") {
    P2Instance inst = testsup::small_instance(3, 3, 202);
    P2Build pb = build(inst);
    Solution sol = solve_milp(pb.model);
    REQUIRE(sol.status == SolveStatus::Optimal);
    StepPlan plan = extract_plan(sol, pb.layout, inst);
    AgentState s = inst.state;
    for (int tau = 0; tau < inst.horizon; ++tau) {
        s = step(inst.model, s, plan.controls[static_cast<size_t>(tau)]);
        CHECK((s.p - plan.states[static_cast<size_t>(tau)].p).inf_norm() < 1e-6);
        CHECK((s.v - plan.states[static_cast<size_t>(tau)].v).inf_norm() < 1e-6);
    }
}

TEST_CASE("planned positions never sit strictly inside the cuboid") {
    for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
        P2Instance inst = testsup::small_instance(3, 3, seed);
        inst.state = {{65, 50, 10}, {0, 0, 0}}; // near the +x face
        P2Build pb = build(inst);
        Solution sol = solve_milp(pb.model);
        REQUIRE(sol.status == SolveStatus::Optimal);
        StepPlan plan = extract_plan(sol, pb.layout, inst);
        for (const AgentState& s : plan.states)
            CHECK_FALSE(inst.cuboid.strictly_inside(s.p, 1e-9));
    }
}

TEST_CASE("at most one face-view indicator per step in decoded plans") {
    P2Instance inst = testsup::small_instance(3, 4, 55);
    P2Build pb = build(inst);
    Solution sol = solve_milp(pb.model);
    REQUIRE(sol.status == SolveStatus::Optimal);
    for (int tau = 0; tau < inst.horizon; ++tau) {
        double total = 0;
        for (int fs = 0; fs < pb.layout.n_faces(); ++fs)
            total += sol.values[static_cast<size_t>(
                pb.layout.b2[static_cast<size_t>(pb.layout.fidx(tau, fs))].index)];
        CHECK(total <= 1.0 + 1e-6);
    }
}

TEST_CASE("each point is planned at most once per horizon") {
    P2Instance inst = testsup::small_instance(3, 3, 66);
    inst.state = {{70, 50, 10}, {0, 0, 0}};
    P2Build pb = build(inst);
    Solution sol = solve_milp(pb.model);
    REQUIRE(sol.status == SolveStatus::Optimal);
    StepPlan plan = extract_plan(sol, pb.layout, inst);
    std::set<int> planned;
    for (const auto& ins : plan.planned_inspections) {
        CHECK(planned.insert(ins.point).second); // no duplicates
    }
}

TEST_CASE("cost-to-go epigraph tracks the exact quadratic") {
    // 100 random fixed first positions; the epigraph must sit within
    // 3 (delta/2)^2 w of w * |p1 - target|^2.
    P2Instance base = testsup::small_instance(1, 1, 5);
    SplitMix64 rng(31);
    for (int i = 0; i < 100; ++i) {
        P2Instance inst = base;
        inst.state.p = {5.0 + rng.uniform() * 90.0, 5.0 + rng.uniform() * 90.0,
                        25.0 + rng.uniform() * 70.0};
        inst.state.v = {0, 0, 0};
        if (inst.cuboid.contains(inst.state.p)) continue;
        P2Build pb = build(inst);
        Solution sol = solve_milp(pb.model);
        if (sol.status != SolveStatus::Optimal) continue;
        double q_total = 0;
        for (int k = 0; k < 3; ++k)
            q_total += sol.values[static_cast<size_t>(pb.layout.q[static_cast<size_t>(k)].index)];
        const double exact = (inst.state.p - inst.target.pos).norm2();
        double bound = 0;
        for (int k = 0; k < 3; ++k) {
            const double extent =
                inst.bounds.workspace_hi[k] - inst.bounds.workspace_lo[k];
            const double delta = extent / (inst.n_tan - 1);
            bound += (delta / 2) * (delta / 2);
        }
        CHECK(inst.weight_w * q_total <= inst.weight_w * exact + 1e-9);
        CHECK(inst.weight_w * (exact - q_total) <= inst.weight_w * bound + 1e-9);
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inspection/controller.hpp"
#include "inspection/mission_io.hpp"
#include "inspection/scenario.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace inspection;

namespace {

std::string scenario_dir() { return INSPECTION_SCENARIO_DIR; }

std::string temp_dir(const std::string& leaf) {
    namespace fs = std::filesystem;
    fs::path p = fs::temp_directory_path() / ("inspection_test_" + leaf);
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

Scenario tiny_scenario() {
    ScenarioLoadResult r = parse_scenario(R"(
workspace.lo = 0 0 0
workspace.hi = 100 100 100
cuboid.center = 50 50 10
cuboid.size = 20 20 20
cuboid.inspect_faces = xmin xmax ymin ymax
vehicle.dt = 1
vehicle.mass = 3.35
vehicle.drag = 0.2
vehicle.u_lo = -20 -20 -20
vehicle.u_hi = 20 20 20
vehicle.v_lo = -8 -8 -8
vehicle.v_hi = 8 8 8
camera.z0 = 5
camera.z1 = 0.5
camera.d_max = 30
mission.horizon = 2
mission.t_max = 30
mission.w = 0.01
mission.n_tan = 17
start.position = 80 50 10
start.velocity = 0 0 0
solver.gap = 1e-6
solver.node_limit = 0
point.xmax = 60 55 12
point.xmax = 60 45 8
)");
    REQUIRE(r.ok());
    return *r.scenario;
}

} // namespace

TEST_CASE("the bundled paper scenario carries the published parameters") {
    ScenarioLoadResult r = load_scenario(scenario_dir() + "/paper_s6.cfg");
    REQUIRE_MESSAGE(r.ok(), (r.errors.empty() ? "" : r.errors.front()));
    const Scenario& s = *r.scenario;
    CHECK(s.vehicle.dt == 1.0);
    CHECK(s.vehicle.mass == 3.35);
    CHECK(s.vehicle.drag == 0.2);
    CHECK(s.bounds.u_lo.x == -20);
    CHECK(s.bounds.u_hi.x == 20);
    CHECK(s.bounds.v_hi.x == 15);
    CHECK(s.bounds.workspace_hi.x == 500);
    CHECK(s.bounds.workspace_hi.y == 500);
    CHECK(s.bounds.workspace_hi.z == 250);
    CHECK(s.cuboid_size.x == 130);
    CHECK(s.cuboid_size.y == 100);
    CHECK(s.cuboid_size.z == 150);
    CHECK(s.horizon == 5);
    CHECK(s.t_max == 100);
    CHECK(s.weight_w == 0.01);
    CHECK(s.camera.z0 == 10);
    CHECK(s.camera.z1 == 0.5);
    CHECK(s.camera.d_max == 100);
    CHECK(s.start.p.x == 250);
    CHECK(s.start.p.y == 100);
    CHECK(s.start.p.z == 30);
    CHECK(s.points.size() == 20);
    int per_face[6] = {};
    for (const FeaturePoint& p : s.points) {
        per_face[p.face_id]++;
        CHECK(point_on_face(s.cuboid.face(p.face_id), p.pos, 1e-9));
    }
    for (int id = 0; id < 4; ++id) CHECK(per_face[id] == 5);
    CHECK(per_face[4] == 0);
    CHECK(per_face[5] == 0);
}

TEST_CASE("validation names every offending field") {
    ScenarioLoadResult r = parse_scenario(R"(
workspace.lo = 0 0 0
workspace.hi = 100 100 100
cuboid.center = 50 50 10
cuboid.size = 20 20 20
cuboid.inspect_faces = xmax
vehicle.dt = 1
vehicle.mass = -3.35
vehicle.drag = 0.2
vehicle.u_lo = -20 -20 -20
vehicle.u_hi = 20 20 20
vehicle.v_lo = -8 -8 -8
vehicle.v_hi = 8 8 8
camera.z0 = 5
camera.z1 = 0.5
camera.d_max = 30
start.position = 80 50 10
)");
    REQUIRE_FALSE(r.ok());
    bool names_mass = false;
    for (const std::string& e : r.errors)
        if (e.find("vehicle.mass") != std::string::npos) names_mass = true;
    CHECK(names_mass);
}

TEST_CASE("points off their declared face are rejected by name") {
    ScenarioLoadResult r = parse_scenario(R"(
workspace.lo = 0 0 0
workspace.hi = 100 100 100
cuboid.center = 50 50 10
cuboid.size = 20 20 20
cuboid.inspect_faces = xmax
vehicle.dt = 1
vehicle.mass = 3.35
vehicle.drag = 0.2
vehicle.u_lo = -20 -20 -20
vehicle.u_hi = 20 20 20
vehicle.v_lo = -8 -8 -8
vehicle.v_hi = 8 8 8
camera.z0 = 5
camera.z1 = 0.5
camera.d_max = 30
start.position = 80 50 10
point.xmax = 61 55 12
)");
    REQUIRE_FALSE(r.ok());
    bool names_point = false;
    for (const std::string& e : r.errors)
        if (e.find("point.xmax[0]") != std::string::npos) names_point = true;
    CHECK(names_point);
}

TEST_CASE("unknown keys are rejected") {
    ScenarioLoadResult r = parse_scenario("no.such.key = 1\n");
    REQUIRE_FALSE(r.ok());
    bool named = false;
    for (const std::string& e : r.errors)
        if (e.find("no.such.key") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("canonical write/load round-trips the scenario") {
    const Scenario s = tiny_scenario();
    const std::string text = scenario_to_string(s);
    ScenarioLoadResult r = parse_scenario(text);
    REQUIRE(r.ok());
    const Scenario& t = *r.scenario;
    CHECK(t.points.size() == s.points.size());
    for (size_t i = 0; i < s.points.size(); ++i) {
        CHECK(t.points[i].face_id == s.points[i].face_id);
        CHECK(t.points[i].pos.x == s.points[i].pos.x);
        CHECK(t.points[i].pos.y == s.points[i].pos.y);
        CHECK(t.points[i].pos.z == s.points[i].pos.z);
    }
    CHECK(t.vehicle.mass == s.vehicle.mass);
    CHECK(t.horizon == s.horizon);
    CHECK(scenario_to_string(t) == text);
}

TEST_CASE("uniform sampling is deterministic in the seed") {
    std::string base = R"(
workspace.lo = 0 0 0
workspace.hi = 100 100 100
cuboid.center = 50 50 10
cuboid.size = 20 20 20
cuboid.inspect_faces = xmin xmax
vehicle.dt = 1
vehicle.mass = 3.35
vehicle.drag = 0.2
vehicle.u_lo = -20 -20 -20
vehicle.u_hi = 20 20 20
vehicle.v_lo = -8 -8 -8
vehicle.v_hi = 8 8 8
camera.z0 = 5
camera.z1 = 0.5
camera.d_max = 30
start.position = 80 50 10
points.seed = 42
points.xmin = uniform: 3
points.xmax = uniform: 2
)";
    ScenarioLoadResult a = parse_scenario(base);
    ScenarioLoadResult b = parse_scenario(base);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    REQUIRE(a.scenario->points.size() == 5);
    for (size_t i = 0; i < 5; ++i) {
        CHECK(a.scenario->points[i].pos.x == b.scenario->points[i].pos.x);
        CHECK(a.scenario->points[i].pos.y == b.scenario->points[i].pos.y);
        CHECK(a.scenario->points[i].pos.z == b.scenario->points[i].pos.z);
        CHECK(point_on_face(a.scenario->cuboid.face(a.scenario->points[i].face_id),
                            a.scenario->points[i].pos, 1e-9));
    }
}

TEST_CASE("mission logs round-trip and validate clean") {
    const Scenario sc = tiny_scenario();
    MissionConfig cfg = MissionConfig::from_scenario(sc);
    MissionLog log = run_mission(cfg);
    REQUIRE(log.status == MissionStatus::Complete);

    const std::string dir = temp_dir("roundtrip");
    write_log(log, sc, dir);

    const std::vector<TrajectoryRecord> rows = read_trajectory(dir + "/trajectory.csv");
    REQUIRE(rows.size() == log.steps.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].t == log.steps[i].t);
        CHECK(rows[i].p.x == log.steps[i].state.p.x); // bit-exact numeric round-trip
        CHECK(rows[i].p.y == log.steps[i].state.p.y);
        CHECK(rows[i].p.z == log.steps[i].state.p.z);
        CHECK(rows[i].v.x == log.steps[i].state.v.x);
        CHECK(rows[i].u.x == log.steps[i].control.x);
        CHECK(rows[i].solve_time == log.steps[i].solve_time);
        CHECK(rows[i].inspected == log.steps[i].newly_inspected);
    }
    const MissionSummary sum = read_summary(dir + "/summary.json");
    CHECK(sum.status == "complete");
    CHECK(sum.points_inspected == 2);

    ValidationReport rep = validate_log_dir(dir);
    CHECK(rep.all_pass());
}

TEST_CASE("validation catches injected violations") {
    const Scenario sc = tiny_scenario();
    MissionConfig cfg = MissionConfig::from_scenario(sc);
    MissionLog log = run_mission(cfg);
    REQUIRE(log.status == MissionStatus::Complete);

    // Corrupt a position into the cuboid interior.
    {
        MissionLog bad = log;
        bad.steps[0].state.p = {50, 50, 10};
        const std::string dir = temp_dir("badpos");
        write_log(bad, sc, dir);
        ValidationReport rep = validate_log_dir(dir);
        bool safety_failed = false;
        for (const auto& item : rep.items)
            if (item.name == "collision-safety" && !item.pass) safety_failed = true;
        CHECK(safety_failed);
    }
    // Mark an inspection far beyond the cut-off.
    {
        MissionLog bad = log;
        REQUIRE(!bad.steps.empty());
        // Move the inspecting step far away but keep the mark.
        for (StepRecord& r : bad.steps) {
            if (!r.newly_inspected.empty()) {
                r.state.p = {95, 95, 95};
                break;
            }
        }
        const std::string dir = temp_dir("badcut");
        write_log(bad, sc, dir);
        ValidationReport rep = validate_log_dir(dir);
        bool sound_failed = false;
        for (const auto& item : rep.items)
            if ((item.name == "inspection-soundness" || item.name == "distance-cutoff") &&
                !item.pass)
                sound_failed = true;
        CHECK(sound_failed);
    }
}

TEST_CASE("empty missions produce an empty but valid log") {
    Scenario sc = tiny_scenario();
    sc.t_max = 1;
    sc.start = {{95, 95, 95}, {0, 0, 0}};
    MissionConfig cfg = MissionConfig::from_scenario(sc);
    MissionLog log = run_mission(cfg);
    CHECK(log.status == MissionStatus::Timeout);
    REQUIRE(log.steps.size() == 1);
    const std::string dir = temp_dir("timeout");
    write_log(log, sc, dir);
    const std::vector<TrajectoryRecord> rows = read_trajectory(dir + "/trajectory.csv");
    CHECK(rows.size() == 1);
    CHECK(validate_log_dir(dir).all_pass());
}

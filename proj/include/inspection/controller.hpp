#pragma once

#include "inspection/memory.hpp"
#include "inspection/p2.hpp"
#include "inspection/scenario.hpp"

#include <string>
#include <vector>

namespace inspection {

struct MissionConfig {
    Scenario scenario;
    milp::SolveConfig solver;
    bool tighten = true;
    // On an infeasible solve, apply one zero-force hold step and try again
    // (once per mission) instead of aborting.
    bool retry_hold_on_infeasible = false;

    static MissionConfig from_scenario(const Scenario& s) {
        MissionConfig c;
        c.scenario = s;
        c.solver.gap_tol = s.solver.gap;
        c.solver.node_limit = s.solver.node_limit;
        return c;
    }
};

struct StepRecord {
    int t = 0;        // 1-based executed step index
    AgentState state; // realized state after applying the control
    Vec3 control;
    int viewed_face = -1;   // realized geometry; -1 when no face is viewed
    double fov_side = -1.0; // footprint side on the viewed face
    std::vector<int> newly_inspected; // global point ids marked this step
    int cum_inspected = 0;
    double solve_time = 0.0;
    long nodes = 0;
    StepPlan plan;
};

enum class MissionStatus { Complete, Timeout, Infeasible };

struct MissionLog {
    MissionStatus status = MissionStatus::Timeout;
    AgentState start;
    std::vector<StepRecord> steps;
    int total_points = 0;
    int inspected_total = 0;
    double wall_time = 0.0;
    std::string abort_reason;
};

/// Nearest unobserved feature point to p_now (Euclidean), ties broken by
/// (face_id, idx). Returns the global index, or -1 when everything has been
/// inspected (the mission-complete signal).
int select_target(const InspectionMemory& mem,
                  const std::vector<FeaturePoint>& points, const Vec3& p_now);

struct StepResult {
    bool ok = false;
    StepRecord record;
    std::string error;
};

/// One receding-horizon step: build the current problem, solve it, apply the
/// first control, advance the state, then mark every point whose inspection
/// predicate holds at the realized state.
StepResult run_step(const MissionConfig& cfg, InspectionMemory& mem,
                    AgentState& state);

MissionLog run_mission(const MissionConfig& cfg);

const char* mission_status_name(MissionStatus s);

} // namespace inspection

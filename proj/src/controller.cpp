#include "inspection/controller.hpp"

#include <chrono>
#include <cmath>

namespace inspection {

const char* mission_status_name(MissionStatus s) {
    switch (s) {
    case MissionStatus::Complete: return "complete";
    case MissionStatus::Timeout: return "timeout";
    default: return "infeasible";
    }
}

int select_target(const InspectionMemory& mem,
                  const std::vector<FeaturePoint>& points, const Vec3& p_now) {
    int best = -1;
    double best_d2 = 0.0;
    // Global order is (face_id, idx)-ascending, so keeping the first strict
    // minimum applies the lexicographic tie-break.
    for (size_t i = 0; i < points.size(); ++i) {
        if (mem.inspected(static_cast<int>(i))) continue;
        const double d2 = (points[i].pos - p_now).norm2();
        if (best < 0 || d2 < best_d2) {
            best = static_cast<int>(i);
            best_d2 = d2;
        }
    }
    return best;
}

namespace {

P2Instance make_instance(const MissionConfig& cfg, const InspectionMemory& mem,
                         const AgentState& state, int target) {
    P2Instance inst;
    inst.model = cfg.scenario.vehicle;
    inst.bounds = cfg.scenario.bounds;
    inst.camera = cfg.scenario.camera;
    inst.cuboid = cfg.scenario.cuboid;
    inst.points = cfg.scenario.points;
    inst.memory = mem;
    inst.state = state;
    inst.horizon = cfg.scenario.horizon;
    inst.weight_w = cfg.scenario.weight_w;
    inst.target = cfg.scenario.points[static_cast<size_t>(target)];
    inst.n_tan = cfg.scenario.n_tan;
    inst.tighten = cfg.tighten;
    return inst;
}

void observe(const MissionConfig& cfg, InspectionMemory& mem,
             const AgentState& state, StepRecord& rec) {
    const Scenario& sc = cfg.scenario;
    rec.viewed_face = -1;
    for (const Face& f : sc.cuboid.faces) {
        if (face_view_predicate(f, state.p)) {
            rec.viewed_face = f.id;
            rec.fov_side = fov_side(sc.camera, face_distance(f, state.p));
            break;
        }
    }
    for (size_t i = 0; i < sc.points.size(); ++i) {
        if (mem.inspected(static_cast<int>(i))) continue;
        const Face& f = sc.cuboid.face(sc.points[i].face_id);
        if (inspects(sc.camera, f, state.p, sc.points[i])) {
            mem.mark(static_cast<int>(i));
            rec.newly_inspected.push_back(static_cast<int>(i));
        }
    }
    rec.cum_inspected = mem.count();
}

} // namespace

StepResult run_step(const MissionConfig& cfg, InspectionMemory& mem,
                    AgentState& state) {
    StepResult res;
    const int target = select_target(mem, cfg.scenario.points, state.p);
    if (target < 0) {
        res.error = "mission already complete";
        return res;
    }
    P2Instance inst = make_instance(cfg, mem, state, target);
    StepPlan plan;
    try {
        P2Build pb = build(inst);
        milp::Solution sol = milp::solve_milp(pb.model, cfg.solver);
        if (sol.status == milp::SolveStatus::Infeasible) {
            res.error = "solver reports the step infeasible";
            return res;
        }
        if (sol.status == milp::SolveStatus::Unbounded) {
            res.error = "solver reports the step unbounded";
            return res;
        }
        if (sol.status == milp::SolveStatus::NodeLimit && !sol.has_values()) {
            res.error = "node limit hit before any feasible plan";
            return res;
        }
        plan = extract_plan(sol, pb.layout, inst);
    } catch (const BuildError& e) {
        res.error = e.what();
        return res;
    }

    const Vec3 u = plan.controls.front();
    state = step(cfg.scenario.vehicle, state, u);

    res.ok = true;
    res.record.state = state;
    res.record.control = u;
    res.record.solve_time = plan.solve_time;
    res.record.nodes = plan.nodes;
    res.record.plan = std::move(plan);
    observe(cfg, mem, state, res.record);
    return res;
}

MissionLog run_mission(const MissionConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    MissionLog log;
    log.start = cfg.scenario.start;
    log.total_points = static_cast<int>(cfg.scenario.points.size());

    InspectionMemory mem(log.total_points);
    AgentState state = cfg.scenario.start;
    bool retried = false;

    int t = 0;
    while (t < cfg.scenario.t_max && !mem.complete()) {
        StepResult r = run_step(cfg, mem, state);
        if (!r.ok) {
            if (cfg.retry_hold_on_infeasible && !retried &&
                r.error != "mission already complete") {
                // One zero-force hold step, then try again.
                retried = true;
                state = step(cfg.scenario.vehicle, state, {0, 0, 0});
                StepRecord rec;
                rec.t = ++t;
                rec.state = state;
                rec.control = {0, 0, 0};
                observe(cfg, mem, state, rec);
                log.steps.push_back(std::move(rec));
                continue;
            }
            log.status = MissionStatus::Infeasible;
            log.abort_reason = r.error;
            log.inspected_total = mem.count();
            log.wall_time =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return log;
        }
        r.record.t = ++t;
        log.steps.push_back(std::move(r.record));
    }

    log.status = mem.complete() ? MissionStatus::Complete : MissionStatus::Timeout;
    log.inspected_total = mem.count();
    log.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return log;
}

} // namespace inspection

#pragma once

#include "inspection/geometry.hpp"
#include "inspection/memory.hpp"
#include "inspection/milp/model.hpp"
#include "inspection/milp/solve.hpp"
#include "inspection/sensing.hpp"
#include "inspection/vehicle.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace inspection {

/// One receding-horizon planning problem: current state, structure, memory,
/// and the steering target for the cost-to-go term.
struct P2Instance {
    DynamicsModel model;
    OperatingBounds bounds;
    CameraModel camera;
    Cuboid cuboid;
    std::vector<FeaturePoint> points; // global order; all on inspectable faces
    InspectionMemory memory;          // per global point index
    AgentState state;
    int horizon = 1;
    double weight_w = 0.0;
    FeaturePoint target; // steering goal for the quadratic cost-to-go
    int n_tan = 17;      // tangents per axis for the cost-to-go epigraph
    // Derive per-step position boxes from the start state and velocity bounds
    // and propagate the resulting constant indicators through the model. Off
    // emits the plain workspace-box formulation.
    bool tighten = true;
};

/// Raised when the instance itself rules out any feasible plan (start state
/// or first reachable position outside the operating boxes).
struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Variable ids for one compiled step, indexed exactly by the formulation's
/// (tau, face, point, row) structure. Fixed variables keep their slots.
struct VarLayout {
    int horizon = 0;
    std::vector<int> face_ids;      // inspectable faces, ascending id
    std::vector<int> point_face_slot; // per global point: slot into face_ids

    std::vector<milp::VarId> u;  // (tau, axis)
    std::vector<milp::VarId> xp; // (tau, axis), position at tau+1
    std::vector<milp::VarId> xv; // (tau, axis), velocity at tau+1
    // per (tau, face slot)
    std::vector<milp::VarId> e, ep, em, d, ell, s;
    std::vector<milp::VarId> b1; // (tau, face slot, c < 5)
    std::vector<milp::VarId> b2; // (tau, face slot)
    // per (tau, global point)
    std::vector<milp::VarId> b3; // (tau, point, c < 4)
    std::vector<milp::VarId> b4, k1, k2; // k2 invalid when already inspected
    std::vector<milp::VarId> o;          // (tau, l < 6)
    std::array<milp::VarId, 3> q{};      // cost-to-go epigraph per axis,
                                         // on the terminal planned position

    int n_faces() const { return static_cast<int>(face_ids.size()); }
    int n_points() const { return static_cast<int>(point_face_slot.size()); }
    int fidx(int tau, int fslot) const { return tau * n_faces() + fslot; }
    int pidx(int tau, int pt) const { return tau * n_points() + pt; }
    milp::VarId u_at(int tau, int axis) const { return u[static_cast<size_t>(3 * tau + axis)]; }
    milp::VarId p_at(int tau, int axis) const { return xp[static_cast<size_t>(3 * tau + axis)]; }
    milp::VarId v_at(int tau, int axis) const { return xv[static_cast<size_t>(3 * tau + axis)]; }
};

struct P2Build {
    milp::Model model;
    VarLayout layout;
};

/// Planned controls and states decoded from a solved step, plus the decoded
/// inspection activations.
struct StepPlan {
    struct Inspection {
        int tau;
        int face_id;
        int point; // global index
    };
    std::vector<Vec3> controls;     // length T
    std::vector<AgentState> states; // length T, states at tau+1
    std::vector<Inspection> planned_inspections;
    double objective = 0.0;
    milp::SolveStatus status = milp::SolveStatus::Infeasible;
    long nodes = 0;
    double solve_time = 0.0;
};

/// Compile one planning step into a mixed-integer model.
P2Build build(const P2Instance& inst);

/// The sparse minimization objective: reward for each live inspection
/// indicator, decaying over the horizon, plus the weighted cost-to-go
/// epigraph variables.
milp::LinExpr objective_terms(const VarLayout& layout, const P2Instance& inst);

/// Decode a solution; verifies integrality and that the decoded states match
/// a forward simulation of the decoded controls.
StepPlan extract_plan(const milp::Solution& sol, const VarLayout& layout,
                      const P2Instance& inst);

} // namespace inspection

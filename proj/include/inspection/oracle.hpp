#pragma once

#include "inspection/milp/model.hpp"
#include "inspection/milp/solve.hpp"
#include "inspection/p2.hpp"

#include <vector>

namespace inspection::oracle {

struct MilpOracleResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> values;
    unsigned long assignment = 0; // winning binary bitmask, low bit = first binary
};

/// Exhaustive reference for solve_milp: every binary assignment, one LP
/// relaxation each, best objective wins (ties to the lowest assignment
/// encoding). Refuses more than 12 binaries.
MilpOracleResult milp_oracle(const milp::Model& m, bool parallel = true);

struct VertexOracleResult {
    bool feasible = false;
    double objective = 0.0;
};

/// Reference for solve_lp on tiny models: enumerates candidate active sets
/// from the rows plus the finite variable bounds, solves each square system
/// and keeps the best feasible vertex. Requires finite bounds on every
/// variable and at most 6 of them.
VertexOracleResult lp_vertex_oracle(const milp::Model& m);

struct GridPlan {
    bool feasible = false;
    double objective = 0.0;
    std::vector<Vec3> controls;
};

/// Exhaustive reference planner over the control grid {u_lo, 0, u_hi} per
/// axis and step: simulates every sequence with the exact dynamics, filters
/// with the geometric predicates only, and scores with the horizon-decayed
/// inspection reward plus the exact quadratic cost-to-go. Refuses horizons
/// longer than 3.
GridPlan grid_planner(const P2Instance& inst);

} // namespace inspection::oracle

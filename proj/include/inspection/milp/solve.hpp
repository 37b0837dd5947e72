#pragma once

#include "inspection/milp/model.hpp"

#include <utility>
#include <vector>

namespace inspection::milp {

enum class SolveStatus { Optimal, Infeasible, Unbounded, NodeLimit };

inline constexpr double eps_int = 1e-6; // binary integrality tolerance
inline constexpr double eps_lp = 1e-6;  // solution-level feasibility

struct SolveConfig {
    long node_limit = 0;   // 0 = unlimited
    double gap_tol = 1e-6; // absolute optimality gap
    bool parallel = true;  // OpenMP row-elimination kernel
};

struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> values; // per model variable; empty if none found
    double objective = 0.0;
    long nodes_explored = 0;
    double solve_time = 0.0; // seconds
    // (node id, objective) every time the incumbent improved
    std::vector<std::pair<long, double>> incumbent_history;

    bool has_values() const { return !values.empty(); }
};

/// Solve the LP relaxation (all integrality dropped). Deterministic for a
/// fixed model.
Solution solve_lp(const Model& m, bool parallel = true);

/// Branch-and-bound over the binary variables: best-bound node selection
/// with depth-first tie-break on node id, branching on the most fractional
/// binary (ties to the lowest variable index). Deterministic for a fixed
/// model and config.
Solution solve_milp(const Model& m, const SolveConfig& cfg = {});

} // namespace inspection::milp

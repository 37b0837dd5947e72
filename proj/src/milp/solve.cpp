#include "inspection/milp/solve.hpp"

#include "inspection/milp/tableau.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

namespace inspection::milp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> extract_values(const SimplexTableau& tab, int n) {
    std::vector<double> v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = tab.value(j);
    return v;
}

} // namespace

Solution solve_lp(const Model& m, bool parallel) {
    m.validate();
    const auto t0 = Clock::now();
    SimplexTableau tab(m, parallel);
    LpOutcome out = tab.solve_from_scratch();
    if (out == LpOutcome::Stalled) {
        // One clean retry; deterministic since the path to it is.
        out = tab.solve_from_scratch();
        if (out == LpOutcome::Stalled)
            throw std::runtime_error("solve_lp: simplex stalled");
    }
    Solution sol;
    sol.nodes_explored = 0;
    sol.solve_time = seconds_since(t0);
    switch (out) {
    case LpOutcome::Infeasible:
        sol.status = SolveStatus::Infeasible;
        break;
    case LpOutcome::Unbounded:
        sol.status = SolveStatus::Unbounded;
        break;
    default:
        sol.status = SolveStatus::Optimal;
        sol.values = extract_values(tab, m.num_vars());
        sol.objective = tab.objective_value();
        break;
    }
    sol.solve_time = seconds_since(t0);
    return sol;
}

namespace {

struct Node {
    double bound = 0.0;
    long id = 0;
    // Cumulative binary fixings along the path from the root.
    std::vector<std::pair<int, int>> fixes;
    // Basis the parent's LP finished with; shared between siblings.
    std::shared_ptr<const std::vector<VarStatus>> basis;
};

struct NodeOrder {
    // Max-heap: "worse" = larger bound, then older id (so equal bounds pop
    // the most recently created node first).
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id < b.id;
    }
};

int most_fractional_binary(const Model& m, const SimplexTableau& tab) {
    int pick = -1;
    double best = eps_int;
    for (int j = 0; j < m.num_vars(); ++j) {
        if (m.vars[static_cast<size_t>(j)].kind != VarKind::Binary) continue;
        if (tab.lower(j) == tab.upper(j)) continue;
        const double v = tab.value(j);
        const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
        const double dist = std::min(std::abs(v), std::abs(1.0 - v));
        const double score = std::min(frac, dist);
        if (score > best) {
            best = score;
            pick = j;
        }
    }
    return pick;
}

} // namespace

Solution solve_milp(const Model& m, const SolveConfig& cfg) {
    m.validate();
    const auto t0 = Clock::now();
    Solution sol;

    SimplexTableau tab(m, cfg.parallel);
    LpOutcome root = tab.solve_from_scratch();
    if (root == LpOutcome::Stalled) {
        root = tab.solve_from_scratch();
        if (root == LpOutcome::Stalled)
            throw std::runtime_error("solve_milp: simplex stalled at root");
    }
    sol.nodes_explored = 1;
    if (root == LpOutcome::Infeasible) {
        sol.status = SolveStatus::Infeasible;
        sol.solve_time = seconds_since(t0);
        return sol;
    }
    if (root == LpOutcome::Unbounded) {
        sol.status = SolveStatus::Unbounded;
        sol.solve_time = seconds_since(t0);
        return sol;
    }

    bool have_incumbent = false;
    double incumbent_obj = 0.0;
    std::vector<double> incumbent_values;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long next_id = 0;

    auto note_incumbent = [&](double obj, const SimplexTableau& t, long node_id) {
        if (!have_incumbent || obj < incumbent_obj) {
            have_incumbent = true;
            incumbent_obj = obj;
            incumbent_values = extract_values(t, m.num_vars());
            sol.incumbent_history.emplace_back(node_id, obj);
        }
    };

    auto branch = [&](const SimplexTableau& t, double bound,
                      const std::vector<std::pair<int, int>>& fixes, int var) {
        auto basis = std::make_shared<const std::vector<VarStatus>>(t.snapshot());
        for (int val : {0, 1}) {
            Node child;
            child.bound = bound;
            child.id = ++next_id;
            child.fixes = fixes;
            child.fixes.emplace_back(var, val);
            child.basis = basis;
            open.push(std::move(child));
        }
    };

    // Root node.
    {
        const int frac = most_fractional_binary(m, tab);
        if (frac < 0) {
            sol.status = SolveStatus::Optimal;
            sol.objective = tab.objective_value();
            sol.values = extract_values(tab, m.num_vars());
            sol.incumbent_history.emplace_back(0, sol.objective);
            sol.solve_time = seconds_since(t0);
            return sol;
        }
        branch(tab, tab.objective_value(), {}, frac);
    }

    bool hit_node_limit = false;
    while (!open.empty()) {
        if (have_incumbent && open.top().bound >= incumbent_obj - cfg.gap_tol)
            break; // best-bound order: every remaining node is pruned
        if (cfg.node_limit > 0 && sol.nodes_explored >= cfg.node_limit) {
            hit_node_limit = true;
            break;
        }
        Node node = open.top();
        open.pop();

        // Reset binary bounds, apply this node's fixings, warm-start from the
        // parent basis and repair with dual simplex.
        for (int j = 0; j < m.num_vars(); ++j) {
            const Model::Var& v = m.vars[static_cast<size_t>(j)];
            if (v.kind == VarKind::Binary) tab.set_bounds(j, v.lo, v.hi);
        }
        for (const auto& [var, val] : node.fixes)
            tab.set_bounds(var, val, val);
        tab.load_basis(*node.basis);
        LpOutcome out = tab.dual_reoptimize();
        ++sol.nodes_explored;
        // Stalled covers both iteration caps and repair paths blocked by
        // sub-floor pivots: refactorize and retry with the relaxed floor so a
        // near-singular warm start cannot masquerade as infeasibility. An
        // "optimal" point that fails feasibility gets the same treatment.
        if (out == LpOutcome::Optimal && tab.primal_residual(m) > eps_lp)
            out = LpOutcome::Stalled;
        if (out == LpOutcome::Stalled) {
            tab.restart_from_boxes();
            out = tab.dual_reoptimize(1e-10);
            if (out == LpOutcome::Stalled)
                throw std::runtime_error("solve_milp: node LP stalled");
            if (out == LpOutcome::Optimal && tab.primal_residual(m) > eps_lp)
                throw std::runtime_error("solve_milp: node LP degraded");
        }
        if (out == LpOutcome::Infeasible) continue;
        if (out == LpOutcome::Unbounded)
            throw std::runtime_error("solve_milp: node LP unbounded");

        const double bound = tab.objective_value();
        if (have_incumbent && bound >= incumbent_obj - cfg.gap_tol) continue;

        const int frac = most_fractional_binary(m, tab);
        if (frac < 0) {
            note_incumbent(bound, tab, node.id);
            continue;
        }
        branch(tab, bound, node.fixes, frac);
    }

    sol.solve_time = seconds_since(t0);
    if (hit_node_limit) {
        sol.status = SolveStatus::NodeLimit;
        if (have_incumbent) {
            sol.objective = incumbent_obj;
            sol.values = std::move(incumbent_values);
        }
        return sol;
    }
    if (!have_incumbent) {
        sol.status = SolveStatus::Infeasible;
        return sol;
    }
    sol.status = SolveStatus::Optimal;
    sol.objective = incumbent_obj;
    sol.values = std::move(incumbent_values);
    return sol;
}

} // namespace inspection::milp

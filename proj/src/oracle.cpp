#include "inspection/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace inspection::oracle {

using milp::Model;
using milp::Sense;
using milp::SolveStatus;
using milp::VarKind;

MilpOracleResult milp_oracle(const Model& m, bool parallel) {
    std::vector<int> bins;
    for (int j = 0; j < m.num_vars(); ++j) {
        if (m.vars[static_cast<size_t>(j)].kind == VarKind::Binary)
            bins.push_back(j);
    }
    if (bins.size() > 12)
        throw std::invalid_argument("milp_oracle: more than 12 binaries");
    const unsigned long count = 1ul << bins.size();

    MilpOracleResult best;
    // Enumeration is order-independent: candidates merge by (objective,
    // assignment), so the parallel split cannot change the winner.
    const auto better = [](double obj_a, unsigned long mask_a, double obj_b,
                           unsigned long mask_b) {
        if (obj_a != obj_b) return obj_a < obj_b;
        return mask_a < mask_b;
    };

#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
    {
        MilpOracleResult local;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (long mask_l = 0; mask_l < static_cast<long>(count); ++mask_l) {
            const unsigned long mask = static_cast<unsigned long>(mask_l);
            Model fixed = m;
            bool consistent = true;
            for (size_t b = 0; b < bins.size(); ++b) {
                const double v = (mask >> b) & 1 ? 1.0 : 0.0;
                const Model::Var& var = fixed.vars[static_cast<size_t>(bins[b])];
                if (v < var.lo || v > var.hi) {
                    consistent = false;
                    break;
                }
                fixed.fix(milp::VarId{bins[b]}, v);
            }
            if (!consistent) continue;
            milp::Solution lp = milp::solve_lp(fixed, false);
            if (lp.status == SolveStatus::Unbounded)
                throw std::runtime_error("milp_oracle: unbounded relaxation");
            if (lp.status != SolveStatus::Optimal) continue;
            if (!local.feasible ||
                better(lp.objective, mask, local.objective, local.assignment)) {
                local.feasible = true;
                local.objective = lp.objective;
                local.values = std::move(lp.values);
                local.assignment = mask;
            }
        }
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            if (local.feasible &&
                (!best.feasible || better(local.objective, local.assignment,
                                          best.objective, best.assignment))) {
                best = std::move(local);
            }
        }
    }
    return best;
}

namespace {

/// Solve the n-by-n system A x = b with partial pivoting; false if singular.
bool solve_square(std::vector<double> a, std::vector<double> b, int n,
                  std::vector<double>& x) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(a[static_cast<size_t>(r * n + col)]) >
                std::abs(a[static_cast<size_t>(piv * n + col)]))
                piv = r;
        }
        if (std::abs(a[static_cast<size_t>(piv * n + col)]) < 1e-10) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a[static_cast<size_t>(piv * n + c)],
                          a[static_cast<size_t>(col * n + c)]);
            std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(col)]);
        }
        const double d = a[static_cast<size_t>(col * n + col)];
        for (int r = col + 1; r < n; ++r) {
            const double f = a[static_cast<size_t>(r * n + col)] / d;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c)
                a[static_cast<size_t>(r * n + c)] -= f * a[static_cast<size_t>(col * n + c)];
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(col)];
        }
    }
    x.assign(static_cast<size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c)
            s -= a[static_cast<size_t>(r * n + c)] * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = s / a[static_cast<size_t>(r * n + r)];
    }
    return true;
}

} // namespace

VertexOracleResult lp_vertex_oracle(const Model& m) {
    const int n = m.num_vars();
    if (n > 6) throw std::invalid_argument("lp_vertex_oracle: too many variables");
    for (const Model::Var& v : m.vars) {
        if (!std::isfinite(v.lo) || !std::isfinite(v.hi))
            throw std::invalid_argument("lp_vertex_oracle: bounds must be finite");
    }

    // Candidate hyperplanes: every row as an equality, plus both bound planes
    // of every variable.
    struct Plane {
        std::vector<double> a;
        double b;
    };
    std::vector<Plane> planes;
    for (const Model::Row& r : m.rows) {
        Plane p;
        p.a.assign(static_cast<size_t>(n), 0.0);
        for (const milp::LinTerm& t : r.terms)
            p.a[static_cast<size_t>(t.var.index)] += t.coeff;
        p.b = r.rhs;
        planes.push_back(std::move(p));
    }
    for (int j = 0; j < n; ++j) {
        for (double bnd : {m.vars[static_cast<size_t>(j)].lo, m.vars[static_cast<size_t>(j)].hi}) {
            Plane p;
            p.a.assign(static_cast<size_t>(n), 0.0);
            p.a[static_cast<size_t>(j)] = 1.0;
            p.b = bnd;
            planes.push_back(std::move(p));
        }
    }

    const double ftol = 1e-7;
    const auto feasible_point = [&](const std::vector<double>& x) {
        for (int j = 0; j < n; ++j) {
            if (x[static_cast<size_t>(j)] < m.vars[static_cast<size_t>(j)].lo - ftol ||
                x[static_cast<size_t>(j)] > m.vars[static_cast<size_t>(j)].hi + ftol)
                return false;
        }
        for (const Model::Row& r : m.rows) {
            double lhs = 0.0;
            for (const milp::LinTerm& t : r.terms)
                lhs += t.coeff * x[static_cast<size_t>(t.var.index)];
            switch (r.sense) {
            case Sense::LE:
                if (lhs > r.rhs + ftol) return false;
                break;
            case Sense::GE:
                if (lhs < r.rhs - ftol) return false;
                break;
            case Sense::EQ:
                if (std::abs(lhs - r.rhs) > ftol) return false;
                break;
            }
        }
        return true;
    };

    VertexOracleResult res;
    const int np = static_cast<int>(planes.size());
    std::vector<int> pick(static_cast<size_t>(n));
    // Enumerate all n-subsets of planes.
    const auto visit = [&](const std::vector<int>& sel) {
        std::vector<double> a(static_cast<size_t>(n * n));
        std::vector<double> b(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c)
                a[static_cast<size_t>(r * n + c)] =
                    planes[static_cast<size_t>(sel[static_cast<size_t>(r)])].a[static_cast<size_t>(c)];
            b[static_cast<size_t>(r)] = planes[static_cast<size_t>(sel[static_cast<size_t>(r)])].b;
        }
        std::vector<double> x;
        if (!solve_square(std::move(a), std::move(b), n, x)) return;
        if (!feasible_point(x)) return;
        double obj = m.objective_constant;
        for (int j = 0; j < n; ++j)
            obj += m.objective[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        if (!res.feasible || obj < res.objective) {
            res.feasible = true;
            res.objective = obj;
        }
    };
    // Simple combination walk.
    std::vector<int> sel;
    const auto rec = [&](auto&& self, int from) -> void {
        if (static_cast<int>(sel.size()) == n) {
            visit(sel);
            return;
        }
        for (int i = from; i <= np - (n - static_cast<int>(sel.size())); ++i) {
            sel.push_back(i);
            self(self, i + 1);
            sel.pop_back();
        }
    };
    if (n > 0) rec(rec, 0);
    return res;
}

GridPlan grid_planner(const P2Instance& inst) {
    if (inst.horizon > 3)
        throw std::invalid_argument("grid_planner: horizon longer than 3");
    const int T = inst.horizon;
    if (static_cast<int>(inst.points.size()) > 64)
        throw std::invalid_argument("grid_planner: too many feature points");

    long total = 1;
    for (int i = 0; i < 3 * T; ++i) total *= 3;

    const auto level = [&](int axis, int code) {
        switch (code) {
        case 0: return inst.bounds.u_lo[axis];
        case 1: return 0.0;
        default: return inst.bounds.u_hi[axis];
        }
    };

    GridPlan best;
    std::vector<Vec3> controls(static_cast<size_t>(T));
    for (long seq = 0; seq < total; ++seq) {
        long rem = seq;
        // Most significant digit = first step, x axis.
        for (int tau = T - 1; tau >= 0; --tau) {
            for (int axis = 2; axis >= 0; --axis) {
                controls[static_cast<size_t>(tau)][axis] = level(axis, rem % 3);
                rem /= 3;
            }
        }

        AgentState s = inst.state;
        bool ok = true;
        double reward = 0.0;
        std::uint64_t counted = 0;
        double d2_target = 0.0;
        for (int tau = 0; tau < T && ok; ++tau) {
            s = step(inst.model, s, controls[static_cast<size_t>(tau)]);
            if (!check_bounds(inst.bounds, s, controls[static_cast<size_t>(tau)])) {
                ok = false;
                break;
            }
            if (inst.cuboid.strictly_inside(s.p)) {
                ok = false;
                break;
            }
            if (tau == T - 1) d2_target = (s.p - inst.target.pos).norm2();

            // Viewed face: lowest id whose view predicate holds.
            int viewed = -1;
            for (const Face& f : inst.cuboid.faces) {
                if (!f.inspectable) continue;
                if (face_view_predicate(f, s.p)) {
                    viewed = f.id;
                    break;
                }
            }
            if (viewed < 0) continue;
            const Face& f = inst.cuboid.face(viewed);
            for (size_t pt = 0; pt < inst.points.size(); ++pt) {
                if (inst.points[pt].face_id != viewed) continue;
                if (inst.memory.size() > 0 && inst.memory.inspected(static_cast<int>(pt)))
                    continue;
                if (counted & (1ull << pt)) continue;
                if (inspects(inst.camera, f, s.p, inst.points[pt])) {
                    counted |= 1ull << pt;
                    reward -= static_cast<double>(T - tau) / static_cast<double>(T);
                }
            }
        }
        if (!ok) continue;
        const double obj = reward + inst.weight_w * d2_target;
        if (!best.feasible || obj < best.objective) {
            best.feasible = true;
            best.objective = obj;
            best.controls = controls;
        }
    }
    return best;
}

} // namespace inspection::oracle

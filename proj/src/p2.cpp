#include "inspection/p2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace inspection {

using milp::LinExpr;
using milp::LinTerm;
using milp::Model;
using milp::Sense;
using milp::VarId;

namespace {

std::string tag(const char* base, int a) { return std::string(base) + std::to_string(a); }
std::string tag(const char* base, int a, int b) {
    return std::string(base) + std::to_string(a) + "_" + std::to_string(b);
}
std::string tag(const char* base, int a, int b, int c) {
    return tag(base, a, b) + "_" + std::to_string(c);
}

enum class Cond { Always, Never, Contingent };

// How a "expr <= rhs" condition behaves over the declared variable boxes.
Cond classify(const Model& m, const LinExpr& expr, double rhs) {
    if (m.expr_inf(expr) > rhs) return Cond::Never;
    if (m.expr_sup(expr) <= rhs) return Cond::Always;
    return Cond::Contingent;
}

} // namespace

milp::LinExpr objective_terms(const VarLayout& layout, const P2Instance& inst) {
    LinExpr obj;
    const int T = layout.horizon;
    for (int tau = 0; tau < T; ++tau) {
        const double reward = -static_cast<double>(T - tau) / static_cast<double>(T);
        for (int pt = 0; pt < layout.n_points(); ++pt) {
            const VarId k2 = layout.k2[static_cast<size_t>(layout.pidx(tau, pt))];
            if (k2.valid()) obj.push_back({k2, reward});
        }
    }
    for (int k = 0; k < 3; ++k)
        obj.push_back({layout.q[static_cast<size_t>(k)], inst.weight_w});
    return obj;
}

P2Build build(const P2Instance& inst) {
    const int T = inst.horizon;
    if (T < 1) throw std::invalid_argument("horizon must be at least 1");
    if (!inst.model.valid()) throw std::invalid_argument("invalid dynamics parameters");
    if (!inst.camera.valid()) throw std::invalid_argument("invalid camera parameters");
    if (inst.n_tan < 2) throw std::invalid_argument("need at least two cost-to-go tangents");
    if (static_cast<int>(inst.points.size()) != inst.memory.size() &&
        inst.memory.size() != 0)
        throw std::invalid_argument("memory size does not match point count");

    const OperatingBounds& B = inst.bounds;
    const DynamicsModel& dyn = inst.model;
    // State feedback rides the box bounds, so tolerate solver-level spill and
    // clamp the modeling constants back onto the boxes.
    AgentState s0 = inst.state;
    for (int k = 0; k < 3; ++k) {
        if (s0.p[k] < B.workspace_lo[k] - milp::eps_lp ||
            s0.p[k] > B.workspace_hi[k] + milp::eps_lp)
            throw BuildError("start state outside workspace");
        if (s0.v[k] < B.v_lo[k] - milp::eps_lp || s0.v[k] > B.v_hi[k] + milp::eps_lp)
            throw BuildError("start velocity outside bounds");
        if (B.u_lo[k] > B.u_hi[k]) throw std::invalid_argument("empty control box");
        s0.p[k] = std::clamp(s0.p[k], B.workspace_lo[k], B.workspace_hi[k]);
        s0.v[k] = std::clamp(s0.v[k], B.v_lo[k], B.v_hi[k]);
    }
    // The first planned position is fully determined by the current state.
    Vec3 p1 = s0.p + s0.v * dyn.dt;
    for (int k = 0; k < 3; ++k) {
        if (p1[k] < B.workspace_lo[k] - milp::eps_lp ||
            p1[k] > B.workspace_hi[k] + milp::eps_lp)
            throw BuildError("first planned position leaves the workspace");
        p1[k] = std::clamp(p1[k], B.workspace_lo[k], B.workspace_hi[k]);
    }

    P2Build out;
    Model& M = out.model;
    VarLayout& L = out.layout;
    L.horizon = T;

    for (const Face& f : inst.cuboid.faces)
        if (f.inspectable) L.face_ids.push_back(f.id);
    const int NF = L.n_faces();
    if (NF == 0) throw std::invalid_argument("no inspectable faces");

    L.point_face_slot.resize(inst.points.size());
    for (size_t i = 0; i < inst.points.size(); ++i) {
        const int fid = inst.points[i].face_id;
        auto it = std::find(L.face_ids.begin(), L.face_ids.end(), fid);
        if (it == L.face_ids.end())
            throw std::invalid_argument("feature point on a non-inspectable face");
        L.point_face_slot[i] = static_cast<int>(it - L.face_ids.begin());
    }
    const int NP = L.n_points();

    // Reachable position box per tau (position at step tau+1). The first is
    // a single point; later ones grow by the velocity box per step.
    std::vector<Vec3> plo(static_cast<size_t>(T)), phi(static_cast<size_t>(T));
    for (int tau = 0; tau < T; ++tau) {
        for (int k = 0; k < 3; ++k) {
            if (inst.tighten) {
                const double grow_lo = p1[k] + tau * dyn.dt * B.v_lo[k];
                const double grow_hi = p1[k] + tau * dyn.dt * B.v_hi[k];
                plo[static_cast<size_t>(tau)][k] = std::max(B.workspace_lo[k], grow_lo);
                phi[static_cast<size_t>(tau)][k] = std::min(B.workspace_hi[k], grow_hi);
                if (plo[static_cast<size_t>(tau)][k] > phi[static_cast<size_t>(tau)][k])
                    throw BuildError("dynamics force the plan out of the workspace");
            } else {
                plo[static_cast<size_t>(tau)][k] = B.workspace_lo[k];
                phi[static_cast<size_t>(tau)][k] = B.workspace_hi[k];
            }
        }
    }

    // --- variables ------------------------------------------------------
    L.u.resize(static_cast<size_t>(3 * T));
    L.xp.resize(static_cast<size_t>(3 * T));
    L.xv.resize(static_cast<size_t>(3 * T));
    for (int tau = 0; tau < T; ++tau) {
        for (int k = 0; k < 3; ++k) {
            L.u[static_cast<size_t>(3 * tau + k)] =
                M.add_continuous(B.u_lo[k], B.u_hi[k], tag("u_", tau, k));
            L.xp[static_cast<size_t>(3 * tau + k)] =
                M.add_continuous(plo[static_cast<size_t>(tau)][k],
                                 phi[static_cast<size_t>(tau)][k], tag("p_", tau + 1, k));
            L.xv[static_cast<size_t>(3 * tau + k)] =
                M.add_continuous(B.v_lo[k], B.v_hi[k], tag("v_", tau + 1, k));
        }
    }

    const size_t nfT = static_cast<size_t>(NF * T);
    L.e.resize(nfT);
    L.ep.resize(nfT);
    L.em.resize(nfT);
    L.d.resize(nfT);
    L.ell.resize(nfT);
    L.s.resize(nfT);
    L.b1.resize(nfT * 5);
    L.b2.resize(nfT);
    const size_t npT = static_cast<size_t>(NP * T);
    L.b3.resize(npT * 4);
    L.b4.resize(npT);
    L.k1.resize(npT);
    L.k2.resize(npT);
    L.o.resize(static_cast<size_t>(6 * T));

    // --- dynamics ---------------------------------------------------------
    const double a_drag = dyn.alpha();
    const double b_thr = dyn.beta();
    for (int k = 0; k < 3; ++k) {
        // First step: position is constant, velocity depends on u only.
        if (!inst.tighten) {
            M.add_row({{L.p_at(0, k), 1.0}}, Sense::EQ, p1[k], tag("dyn_p1_", k));
        }
        M.add_row({{L.v_at(0, k), 1.0}, {L.u_at(0, k), -b_thr}}, Sense::EQ,
                  a_drag * s0.v[k], tag("dyn_v1_", k));
        for (int tau = 1; tau < T; ++tau) {
            M.add_row({{L.p_at(tau, k), 1.0},
                       {L.p_at(tau - 1, k), -1.0},
                       {L.v_at(tau - 1, k), -dyn.dt}},
                      Sense::EQ, 0.0, tag("dyn_p_", tau + 1, k));
            M.add_row({{L.v_at(tau, k), 1.0},
                       {L.v_at(tau - 1, k), -a_drag},
                       {L.u_at(tau, k), -b_thr}},
                      Sense::EQ, 0.0, tag("dyn_v_", tau + 1, k));
        }
    }

    // --- per (tau, face): distance, footprint size, face-view system ------
    std::vector<char> face_dead(nfT, 0);
    for (int tau = 0; tau < T; ++tau) {
        for (int fs = 0; fs < NF; ++fs) {
            const Face& f = inst.cuboid.face(L.face_ids[static_cast<size_t>(fs)]);
            const int fi = L.fidx(tau, fs);
            const FaceMatrices fm = build_face_matrices(f);

            // Classify the five view conditions over the position box.
            std::array<Cond, 5> cond;
            bool dead = false;
            for (int c = 0; c < 5; ++c) {
                LinExpr row;
                for (int k = 0; k < 3; ++k) {
                    if (fm.J[static_cast<size_t>(c)][static_cast<size_t>(k)] != 0.0)
                        row.push_back({L.p_at(tau, k),
                                       fm.J[static_cast<size_t>(c)][static_cast<size_t>(k)]});
                }
                cond[static_cast<size_t>(c)] = classify(M, row, fm.K[static_cast<size_t>(c)]);
                if (cond[static_cast<size_t>(c)] == Cond::Never) dead = true;
            }
            face_dead[static_cast<size_t>(fi)] = dead ? 1 : 0;

            if (dead) {
                // No reward can flow through this face at this step; park the
                // whole block at zero.
                L.e[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("e_", tau, fs));
                L.ep[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("epos_", tau, fs));
                L.em[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("eneg_", tau, fs));
                L.d[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("d_", tau, fs));
                L.ell[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("l_", tau, fs));
                L.s[static_cast<size_t>(fi)] = M.add_binary(tag("s_", tau, fs));
                M.fix(L.s[static_cast<size_t>(fi)], 0.0);
                for (int c = 0; c < 5; ++c) {
                    VarId b = M.add_binary(tag("b1_", tau, fs, c));
                    M.fix(b, 0.0);
                    L.b1[static_cast<size_t>(fi * 5 + c)] = b;
                }
                VarId b2 = M.add_binary(tag("b2_", tau, fs));
                M.fix(b2, 0.0);
                L.b2[static_cast<size_t>(fi)] = b2;
                continue;
            }

            // Signed offset from the face plane and its exact absolute value.
            const double e_lo = plo[static_cast<size_t>(tau)][f.axis] - f.plane;
            const double e_hi = phi[static_cast<size_t>(tau)][f.axis] - f.plane;
            const double d_hi = std::max(std::abs(e_lo), std::abs(e_hi));
            const double d_lo =
                (e_lo <= 0.0 && e_hi >= 0.0) ? 0.0 : std::min(std::abs(e_lo), std::abs(e_hi));
            VarId e = M.add_continuous(e_lo, e_hi, tag("e_", tau, fs));
            L.e[static_cast<size_t>(fi)] = e;
            M.add_row({{e, 1.0}, {L.p_at(tau, f.axis), -1.0}}, Sense::EQ, -f.plane,
                      tag("edef_", tau, fs));
            VarId dv = M.add_continuous(d_lo, d_hi, tag("d_", tau, fs));
            VarId s = M.add_binary(tag("s_", tau, fs));
            if (e_lo >= 0.0) {
                // Plane provably on the agent's negative side: d = e.
                L.ep[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("epos_", tau, fs));
                L.em[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("eneg_", tau, fs));
                M.fix(s, 1.0);
                M.add_row({{dv, 1.0}, {e, -1.0}}, Sense::EQ, 0.0, tag("dabs_", tau, fs));
            } else if (e_hi <= 0.0) {
                L.ep[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("epos_", tau, fs));
                L.em[static_cast<size_t>(fi)] = M.add_continuous(0, 0, tag("eneg_", tau, fs));
                M.fix(s, 0.0);
                M.add_row({{dv, 1.0}, {e, 1.0}}, Sense::EQ, 0.0, tag("dabs_", tau, fs));
            } else {
                // Split e into nonnegative parts gated by the sign binary so
                // that d is exactly |e|, not merely an upper bound of it.
                VarId ep = M.add_continuous(0.0, e_hi, tag("epos_", tau, fs));
                VarId em = M.add_continuous(0.0, -e_lo, tag("eneg_", tau, fs));
                L.ep[static_cast<size_t>(fi)] = ep;
                L.em[static_cast<size_t>(fi)] = em;
                M.add_indicator_leq(s, {{e, -1.0}}, 0.0, -e_lo, tag("esign0_", tau, fs));
                // e <= e_hi * s  <=>  e - e_hi*s <= 0 (s = 0 forces e <= 0)
                M.add_row({{e, 1.0}, {s, -e_hi}}, Sense::LE, 0.0, tag("esign1_", tau, fs));
                M.add_row({{ep, 1.0}, {s, -e_hi}}, Sense::LE, 0.0, tag("epub_", tau, fs));
                M.add_row({{em, 1.0}, {s, -e_lo}}, Sense::LE, -e_lo, tag("emub_", tau, fs));
                M.add_row({{e, 1.0}, {ep, -1.0}, {em, 1.0}}, Sense::EQ, 0.0,
                          tag("esplit_", tau, fs));
                M.add_row({{dv, 1.0}, {ep, -1.0}, {em, -1.0}}, Sense::EQ, 0.0,
                          tag("dsum_", tau, fs));
            }
            L.d[static_cast<size_t>(fi)] = dv;

            const double l_lo = inst.camera.z1 * d_lo + inst.camera.z0;
            const double l_hi = inst.camera.z1 * d_hi + inst.camera.z0;
            VarId ell = M.add_continuous(l_lo, l_hi, tag("l_", tau, fs));
            L.ell[static_cast<size_t>(fi)] = ell;
            M.add_row({{ell, 1.0}, {dv, -inst.camera.z1}}, Sense::EQ, inst.camera.z0,
                      tag("ldef_", tau, fs));

            // Face-view indicator rows: five closed conditions, one binary
            // each, then the aggregated face indicator.
            for (int c = 0; c < 5; ++c) {
                VarId b = M.add_binary(tag("b1_", tau, fs, c));
                L.b1[static_cast<size_t>(fi * 5 + c)] = b;
                if (cond[static_cast<size_t>(c)] == Cond::Always) {
                    M.fix(b, 1.0);
                    continue;
                }
                LinExpr row;
                for (int k = 0; k < 3; ++k) {
                    if (fm.J[static_cast<size_t>(c)][static_cast<size_t>(k)] != 0.0)
                        row.push_back({L.p_at(tau, k),
                                       fm.J[static_cast<size_t>(c)][static_cast<size_t>(k)]});
                }
                const double rhs = fm.K[static_cast<size_t>(c)];
                const double slack = M.expr_sup(row) - rhs;
                M.add_indicator_leq(b, std::move(row), rhs, slack,
                                    tag("fv_", tau, fs, c));
            }
            VarId b2 = M.add_binary(tag("b2_", tau, fs));
            L.b2[static_cast<size_t>(fi)] = b2;
            LinExpr agg{{b2, 5.0}};
            for (int c = 0; c < 5; ++c)
                agg.push_back({L.b1[static_cast<size_t>(fi * 5 + c)], -1.0});
            M.add_row(std::move(agg), Sense::LE, 0.0, tag("fagg_", tau, fs));
        }

        // At most one face viewed per step.
        LinExpr excl;
        for (int fs = 0; fs < NF; ++fs) {
            const int fi = L.fidx(tau, fs);
            if (!face_dead[static_cast<size_t>(fi)])
                excl.push_back({L.b2[static_cast<size_t>(fi)], 1.0});
        }
        if (!excl.empty())
            M.add_row(std::move(excl), Sense::LE, 1.0, tag("fexcl_", tau));
    }

    // --- per (tau, point): footprint containment and inspection chain -----
    for (int tau = 0; tau < T; ++tau) {
        for (int pt = 0; pt < NP; ++pt) {
            const int fs = L.point_face_slot[static_cast<size_t>(pt)];
            const int fi = L.fidx(tau, fs);
            const int pi = L.pidx(tau, pt);
            const Face& f = inst.cuboid.face(L.face_ids[static_cast<size_t>(fs)]);
            const FeaturePoint& xi = inst.points[static_cast<size_t>(pt)];
            const bool observed =
                inst.memory.size() > 0 && inst.memory.inspected(pt);

            const double d_lo_face =
                M.vars[static_cast<size_t>(L.d[static_cast<size_t>(fi)].index)].lo;
            const double d_hi_face =
                M.vars[static_cast<size_t>(L.d[static_cast<size_t>(fi)].index)].hi;

            // Classify the four footprint-containment conditions.
            const int axes[2] = {f.axis_a, f.axis_b};
            std::array<LinExpr, 4> fov_expr;
            std::array<double, 4> fov_rhs{};
            bool dead = face_dead[static_cast<size_t>(fi)] != 0;
            std::array<Cond, 4> cond{};
            if (!dead) {
                for (int c = 0; c < 4; ++c) {
                    const int ax = axes[c / 2];
                    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
                    // sign*(xi - p) - l/2 <= 0
                    fov_expr[static_cast<size_t>(c)] = {
                        {L.p_at(tau, ax), -sign},
                        {L.ell[static_cast<size_t>(fi)], -0.5}};
                    fov_rhs[static_cast<size_t>(c)] = -sign * xi.pos[ax];
                    cond[static_cast<size_t>(c)] =
                        classify(M, fov_expr[static_cast<size_t>(c)],
                                 fov_rhs[static_cast<size_t>(c)]);
                    if (cond[static_cast<size_t>(c)] == Cond::Never) dead = true;
                }
            }
            if (!observed && d_lo_face > inst.camera.d_max) dead = true;

            if (dead) {
                for (int c = 0; c < 4; ++c) {
                    VarId b = M.add_binary(tag("b3_", tau, pt, c));
                    M.fix(b, 0.0);
                    L.b3[static_cast<size_t>(pi * 4 + c)] = b;
                }
                VarId b4 = M.add_binary(tag("b4_", tau, pt));
                M.fix(b4, 0.0);
                L.b4[static_cast<size_t>(pi)] = b4;
                VarId k1 = M.add_binary(tag("k1_", tau, pt));
                M.fix(k1, 0.0);
                L.k1[static_cast<size_t>(pi)] = k1;
                if (!observed) {
                    VarId k2 = M.add_binary(tag("k2_", tau, pt));
                    M.fix(k2, 0.0);
                    L.k2[static_cast<size_t>(pi)] = k2;
                } // observed points carry no inspection variable at all
                continue;
            }

            for (int c = 0; c < 4; ++c) {
                VarId b = M.add_binary(tag("b3_", tau, pt, c));
                L.b3[static_cast<size_t>(pi * 4 + c)] = b;
                if (cond[static_cast<size_t>(c)] == Cond::Always) {
                    M.fix(b, 1.0);
                    continue;
                }
                const double rhs = fov_rhs[static_cast<size_t>(c)];
                M.add_indicator_leq(b, fov_expr[static_cast<size_t>(c)], rhs,
                                    M.expr_sup(fov_expr[static_cast<size_t>(c)]) - rhs,
                                    tag("fov_", tau, pt, c));
            }
            VarId b4 = M.add_binary(tag("b4_", tau, pt));
            L.b4[static_cast<size_t>(pi)] = b4;
            LinExpr agg{{b4, 4.0}};
            for (int c = 0; c < 4; ++c)
                agg.push_back({L.b3[static_cast<size_t>(pi * 4 + c)], -1.0});
            M.add_row(std::move(agg), Sense::LE, 0.0, tag("fovagg_", tau, pt));

            // kappa1 = b2 AND b4
            VarId k1 = M.add_binary(tag("k1_", tau, pt));
            L.k1[static_cast<size_t>(pi)] = k1;
            VarId b2 = L.b2[static_cast<size_t>(fi)];
            M.add_row({{k1, 1.0}, {b2, -1.0}}, Sense::LE, 0.0, tag("conj_a_", tau, pt));
            M.add_row({{k1, 1.0}, {b4, -1.0}}, Sense::LE, 0.0, tag("conj_b_", tau, pt));
            M.add_row({{k1, -1.0}, {b2, 1.0}, {b4, 1.0}}, Sense::LE, 1.0,
                      tag("conj_c_", tau, pt));

            if (!observed) {
                VarId k2 = M.add_binary(tag("k2_", tau, pt));
                L.k2[static_cast<size_t>(pi)] = k2;
                M.add_row({{k2, 1.0}, {k1, -1.0}}, Sense::LE, 0.0, tag("mem_", tau, pt));
                if (d_hi_face > inst.camera.d_max) {
                    M.add_indicator_leq(k2, {{L.d[static_cast<size_t>(fi)], 1.0}},
                                        inst.camera.d_max,
                                        d_hi_face - inst.camera.d_max,
                                        tag("cut_", tau, pt));
                }
            }
        }
    }

    // Each point inspected at most once inside the horizon.
    for (int pt = 0; pt < NP; ++pt) {
        LinExpr once;
        for (int tau = 0; tau < T; ++tau) {
            const VarId k2 = L.k2[static_cast<size_t>(L.pidx(tau, pt))];
            if (k2.valid() && !M.is_fixed(k2)) once.push_back({k2, 1.0});
        }
        if (once.size() >= 2)
            M.add_row(std::move(once), Sense::LE, 1.0, tag("once_", pt));
    }

    // --- collision avoidance ----------------------------------------------
    for (int tau = 0; tau < T; ++tau) {
        bool provably_outside = false;
        for (const Face& f : inst.cuboid.faces) {
            const LinExpr row{{L.p_at(tau, f.axis), f.sign}};
            if (M.expr_inf(row) >= f.offset()) {
                provably_outside = true;
                break;
            }
        }
        if (provably_outside) {
            for (int l = 0; l < 6; ++l) {
                VarId o = M.add_binary(tag("o_", tau, l));
                M.fix(o, 0.0);
                L.o[static_cast<size_t>(tau * 6 + l)] = o;
            }
            continue;
        }
        LinExpr agg;
        for (int l = 0; l < 6; ++l) {
            const Face& f = inst.cuboid.face(l);
            VarId o = M.add_binary(tag("o_", tau, l));
            L.o[static_cast<size_t>(tau * 6 + l)] = o;
            const LinExpr row{{L.p_at(tau, f.axis), f.sign}};
            const double big_m = f.offset() - M.expr_inf(row);
            // phi.p >= gamma - M*o
            M.add_row({{L.p_at(tau, f.axis), f.sign}, {o, big_m}}, Sense::GE,
                      f.offset(), tag("col_", tau, l));
            agg.push_back({o, 1.0});
        }
        M.add_row(std::move(agg), Sense::LE, 5.0, tag("colagg_", tau));
    }

    // --- cost-to-go epigraph ------------------------------------------------
    // The steering term acts on the horizon-terminal position: with the
    // double-integrator dynamics the first planned position is fixed by the
    // current state, so a terminal quadratic is the earliest point where the
    // controls can actually pull the trajectory toward the target.
    for (int k = 0; k < 3; ++k) {
        const double w_lo = B.workspace_lo[k], w_hi = B.workspace_hi[k];
        const double goal = inst.target.pos[k];
        const double q_hi =
            std::max((w_lo - goal) * (w_lo - goal), (w_hi - goal) * (w_hi - goal));
        VarId q = M.add_continuous(0.0, q_hi, tag("q_", k));
        L.q[static_cast<size_t>(k)] = q;
        std::vector<std::pair<double, double>> tangents;
        const double span = (w_hi - w_lo) / static_cast<double>(inst.n_tan - 1);
        for (int i = 0; i < inst.n_tan; ++i) {
            const double a = w_lo + span * i;
            const double slope = 2.0 * (a - goal);
            const double intercept = (a - goal) * (a - goal) - slope * a;
            tangents.emplace_back(slope, intercept);
        }
        M.add_pwl_convex_min(q, L.p_at(T - 1, k), tangents, tag("ctg_", k));
    }

    for (const LinTerm& t : objective_terms(L, inst))
        M.set_objective(t.var, t.coeff);

    M.validate();
    return out;
}

StepPlan extract_plan(const milp::Solution& sol, const VarLayout& layout,
                      const P2Instance& inst) {
    if (!sol.has_values())
        throw std::invalid_argument("extract_plan: solution carries no values");
    const auto val = [&](VarId v) { return sol.values[static_cast<size_t>(v.index)]; };

    StepPlan plan;
    plan.status = sol.status;
    plan.objective = sol.objective;
    plan.nodes = sol.nodes_explored;
    plan.solve_time = sol.solve_time;

    const int T = layout.horizon;
    plan.controls.resize(static_cast<size_t>(T));
    plan.states.resize(static_cast<size_t>(T));
    for (int tau = 0; tau < T; ++tau) {
        for (int k = 0; k < 3; ++k) {
            double u = val(layout.u_at(tau, k));
            u = std::clamp(u, inst.bounds.u_lo[k], inst.bounds.u_hi[k]);
            plan.controls[static_cast<size_t>(tau)][k] = u;
            plan.states[static_cast<size_t>(tau)].p[k] = val(layout.p_at(tau, k));
            plan.states[static_cast<size_t>(tau)].v[k] = val(layout.v_at(tau, k));
        }
    }

    // Decoded states must agree with a forward simulation of the controls.
    AgentState sim = inst.state;
    for (int tau = 0; tau < T; ++tau) {
        sim = step(inst.model, sim, plan.controls[static_cast<size_t>(tau)]);
        for (int k = 0; k < 3; ++k) {
            const double tol_p = milp::eps_lp * (1.0 + std::abs(sim.p[k]));
            const double tol_v = milp::eps_lp * (1.0 + std::abs(sim.v[k]));
            if (std::abs(sim.p[k] - plan.states[static_cast<size_t>(tau)].p[k]) > tol_p ||
                std::abs(sim.v[k] - plan.states[static_cast<size_t>(tau)].v[k]) > tol_v)
                throw std::runtime_error("extract_plan: decoded states do not roll out");
        }
    }

    // Hard integrality check on every declared binary.
    const auto check_bin = [&](VarId v) {
        if (!v.valid()) return;
        const double x = val(v);
        if (std::abs(x - std::round(x)) > milp::eps_int)
            throw std::runtime_error("extract_plan: integrality violation");
    };
    for (VarId v : layout.s) check_bin(v);
    for (VarId v : layout.b1) check_bin(v);
    for (VarId v : layout.b2) check_bin(v);
    for (VarId v : layout.b3) check_bin(v);
    for (VarId v : layout.b4) check_bin(v);
    for (VarId v : layout.k1) check_bin(v);
    for (VarId v : layout.k2) check_bin(v);
    for (VarId v : layout.o) check_bin(v);

    for (int tau = 0; tau < T; ++tau) {
        for (int pt = 0; pt < layout.n_points(); ++pt) {
            const VarId k2 = layout.k2[static_cast<size_t>(layout.pidx(tau, pt))];
            if (!k2.valid()) continue;
            if (val(k2) > 0.5) {
                plan.planned_inspections.push_back(
                    {tau, inst.points[static_cast<size_t>(pt)].face_id, pt});
            }
        }
    }
    return plan;
}

} // namespace inspection

#include "inspection/milp/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace inspection::milp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDropTol = 1e-12;   // treat as structural zero in scans
constexpr double kRatioTie = 1e-9;   // ratio-test tie window
constexpr int kStallLimit = 60;      // degenerate steps before Bland kicks in
} // namespace

namespace detail {

void eliminate_rows(double* tab, long nrows, long stride, long prow, long pcol,
                    bool parallel) {
    const double* pr = tab + prow * stride;
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long r = 0; r < nrows; ++r) {
            if (r == prow) continue;
            double* row = tab + r * stride;
            const double f = row[pcol];
            if (f == 0.0) continue;
            for (long c = 0; c < stride; ++c) row[c] -= f * pr[c];
            row[pcol] = 0.0;
        }
    } else {
        for (long r = 0; r < nrows; ++r) {
            if (r == prow) continue;
            double* row = tab + r * stride;
            const double f = row[pcol];
            if (f == 0.0) continue;
            for (long c = 0; c < stride; ++c) row[c] -= f * pr[c];
            row[pcol] = 0.0;
        }
    }
}

} // namespace detail

SimplexTableau::SimplexTableau(const Model& m, bool parallel)
    : model_(&m), parallel_(parallel) {
    m_ = m.num_rows();
    n_struct_ = m.num_vars();
    lo_.resize(static_cast<size_t>(n_struct_));
    hi_.resize(static_cast<size_t>(n_struct_));
    for (int j = 0; j < n_struct_; ++j) {
        lo_[static_cast<size_t>(j)] = m.vars[static_cast<size_t>(j)].lo;
        hi_[static_cast<size_t>(j)] = m.vars[static_cast<size_t>(j)].hi;
    }
}

void SimplexTableau::set_bounds(int col, double lo, double hi) {
    lo_[static_cast<size_t>(col)] = lo;
    hi_[static_cast<size_t>(col)] = hi;
    if (!tab_.empty() && col < static_cast<int>(status_.size()) &&
        status_[static_cast<size_t>(col)] != VarStatus::Basic) {
        set_nonbasic_to_bound(col);
    }
}

void SimplexTableau::set_nonbasic_to_bound(int col) {
    const size_t c = static_cast<size_t>(col);
    double lo = lo_[c], hi = hi_[c];
    if (lo == hi) {
        status_[c] = VarStatus::AtLower;
        xval_[c] = lo;
    } else if (status_[c] == VarStatus::AtUpper && hi < kInf) {
        xval_[c] = hi;
    } else if (status_[c] == VarStatus::AtUpper) {
        status_[c] = lo > -kInf ? VarStatus::AtLower : VarStatus::FreeZero;
        xval_[c] = lo > -kInf ? lo : 0.0;
    } else if (status_[c] == VarStatus::AtLower && lo > -kInf) {
        xval_[c] = lo;
    } else if (status_[c] == VarStatus::AtLower) {
        status_[c] = hi < kInf ? VarStatus::AtUpper : VarStatus::FreeZero;
        xval_[c] = hi < kInf ? hi : 0.0;
    } else { // FreeZero
        if (lo > -kInf) {
            status_[c] = VarStatus::AtLower;
            xval_[c] = lo;
        } else if (hi < kInf) {
            status_[c] = VarStatus::AtUpper;
            xval_[c] = hi;
        } else {
            xval_[c] = 0.0;
        }
    }
}

void SimplexTableau::build_columns() {
    const Model& m = *model_;
    // Nonbasic structural start point: nearest bound, free vars at zero.
    std::vector<double> start(static_cast<size_t>(n_struct_));
    std::vector<VarStatus> sstat(static_cast<size_t>(n_struct_));
    for (int j = 0; j < n_struct_; ++j) {
        const size_t c = static_cast<size_t>(j);
        if (lo_[c] > -kInf) {
            start[c] = lo_[c];
            sstat[c] = VarStatus::AtLower;
        } else if (hi_[c] < kInf) {
            start[c] = hi_[c];
            sstat[c] = VarStatus::AtUpper;
        } else {
            start[c] = 0.0;
            sstat[c] = VarStatus::FreeZero;
        }
    }
    // Row residuals decide which rows need a phase-1 artificial.
    std::vector<double> resid(static_cast<size_t>(m_));
    std::vector<int> art_of_row(static_cast<size_t>(m_), -1);
    n_art_ = 0;
    for (int i = 0; i < m_; ++i) {
        const Model::Row& row = m.rows[static_cast<size_t>(i)];
        double r = row.rhs;
        for (const LinTerm& t : row.terms)
            r -= t.coeff * start[static_cast<size_t>(t.var.index)];
        resid[static_cast<size_t>(i)] = r;
        bool need = false;
        switch (row.sense) {
        case Sense::LE: need = r < 0.0; break;
        case Sense::GE: need = r > 0.0; break;
        case Sense::EQ: need = r != 0.0; break;
        }
        if (need) art_of_row[static_cast<size_t>(i)] = n_art_++;
    }

    n_cols_ = n_struct_ + m_ + n_art_;
    stride_ = n_cols_ + 1;
    tab_.assign(static_cast<size_t>(m_ + 1) * stride_, 0.0);
    lo_.resize(static_cast<size_t>(n_cols_));
    hi_.resize(static_cast<size_t>(n_cols_));
    xval_.assign(static_cast<size_t>(n_cols_), 0.0);
    status_.assign(static_cast<size_t>(n_cols_), VarStatus::AtLower);
    xb_.assign(static_cast<size_t>(m_), 0.0);
    basic_var_.assign(static_cast<size_t>(m_), -1);
    row_of_.assign(static_cast<size_t>(n_cols_), -1);
    cost_.assign(static_cast<size_t>(n_cols_), 0.0);

    for (int j = 0; j < n_struct_; ++j) {
        status_[static_cast<size_t>(j)] = sstat[static_cast<size_t>(j)];
        xval_[static_cast<size_t>(j)] = start[static_cast<size_t>(j)];
    }

    for (int i = 0; i < m_; ++i) {
        const Model::Row& row = m.rows[static_cast<size_t>(i)];
        for (const LinTerm& t : row.terms)
            at(i, t.var.index) += t.coeff;
        const int slack = n_struct_ + i;
        at(i, slack) = 1.0;
        at(i, rhs_col()) = row.rhs;
        double slo = 0.0, shi = 0.0;
        switch (row.sense) {
        case Sense::LE: slo = 0.0; shi = kInf; break;
        case Sense::GE: slo = -kInf; shi = 0.0; break;
        case Sense::EQ: slo = 0.0; shi = 0.0; break;
        }
        lo_[static_cast<size_t>(slack)] = slo;
        hi_[static_cast<size_t>(slack)] = shi;

        const double r = resid[static_cast<size_t>(i)];
        const int art = art_of_row[static_cast<size_t>(i)];
        if (art < 0) {
            // Slack absorbs the residual and starts basic.
            basic_var_[static_cast<size_t>(i)] = slack;
            row_of_[static_cast<size_t>(slack)] = i;
            status_[static_cast<size_t>(slack)] = VarStatus::Basic;
            xb_[static_cast<size_t>(i)] = r;
        } else {
            // Slack parks at the bound nearest the residual; the artificial
            // carries the remainder with a nonnegative basic value.
            const double park = r > shi ? shi : slo;
            xval_[static_cast<size_t>(slack)] = park;
            status_[static_cast<size_t>(slack)] =
                park == slo ? VarStatus::AtLower : VarStatus::AtUpper;
            const double rem = r - park;
            const int acol = n_struct_ + m_ + art;
            at(i, acol) = rem > 0.0 ? 1.0 : -1.0;
            lo_[static_cast<size_t>(acol)] = 0.0;
            hi_[static_cast<size_t>(acol)] = kInf;
            basic_var_[static_cast<size_t>(i)] = acol;
            row_of_[static_cast<size_t>(acol)] = i;
            status_[static_cast<size_t>(acol)] = VarStatus::Basic;
            xb_[static_cast<size_t>(i)] = std::abs(rem);
        }
    }

    // Keep the raw equations for rebuilds before normalizing the start basis.
    orig_.assign(tab_.begin(), tab_.begin() + static_cast<long>(m_) * stride_);

    // A basic column must be a unit column: flip rows whose artificial
    // entered with a negative coefficient.
    for (int i = 0; i < m_; ++i) {
        const int bv = basic_var_[static_cast<size_t>(i)];
        if (is_artificial(bv) && at(i, bv) < 0.0) {
            double* row = tab_.data() + static_cast<long>(i) * stride_;
            for (long c = 0; c < stride_; ++c) row[c] = -row[c];
        }
    }
    pivots_since_rebuild_ = 0;
    bland_ = false;
    stall_ = 0;
}

void SimplexTableau::rebuild_cost_row() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    if (phase1_) {
        for (int j = n_struct_ + m_; j < n_cols_; ++j)
            cost_[static_cast<size_t>(j)] = 1.0;
    } else {
        for (int j = 0; j < n_struct_; ++j)
            cost_[static_cast<size_t>(j)] = model_->objective[static_cast<size_t>(j)];
    }
    double* crow = tab_.data() + static_cast<long>(m_) * stride_;
    std::fill(crow, crow + stride_, 0.0);
    for (int j = 0; j < n_cols_; ++j) crow[j] = cost_[static_cast<size_t>(j)];
    for (int i = 0; i < m_; ++i) {
        const double cb = cost_[static_cast<size_t>(basic_var_[static_cast<size_t>(i)])];
        if (cb == 0.0) continue;
        const double* row = tab_.data() + static_cast<long>(i) * stride_;
        for (long c = 0; c < stride_; ++c) crow[c] -= cb * row[c];
    }
}

void SimplexTableau::recompute_basic_values() {
    for (int i = 0; i < m_; ++i)
        xb_[static_cast<size_t>(i)] = at(i, rhs_col());
    for (int j = 0; j < n_cols_; ++j) {
        if (row_of_[static_cast<size_t>(j)] >= 0) continue;
        const double v = xval_[static_cast<size_t>(j)];
        if (v == 0.0) continue;
        for (int i = 0; i < m_; ++i) {
            const double a = at(i, j);
            if (a != 0.0) xb_[static_cast<size_t>(i)] -= a * v;
        }
    }
}

void SimplexTableau::pivot(int prow, int pcol) {
    double* row = tab_.data() + static_cast<long>(prow) * stride_;
    const double piv = row[pcol];
    const double inv = 1.0 / piv;
    for (long c = 0; c < stride_; ++c) row[c] *= inv;
    row[pcol] = 1.0;
    detail::eliminate_rows(tab_.data(), m_ + 1, stride_, prow, pcol, parallel_);
    ++pivots_;
    ++pivots_since_rebuild_;
}

double SimplexTableau::value(int col) const {
    const int r = row_of_[static_cast<size_t>(col)];
    return r >= 0 ? xb_[static_cast<size_t>(r)] : xval_[static_cast<size_t>(col)];
}

double SimplexTableau::objective_value() const {
    double obj = model_->objective_constant;
    for (int j = 0; j < n_struct_; ++j)
        obj += model_->objective[static_cast<size_t>(j)] * value(j);
    return obj;
}

double SimplexTableau::primal_residual(const Model& m) const {
    double worst = row_residual(m);
    for (int j = 0; j < n_cols_; ++j) {
        const double v = value(j);
        worst = std::max(worst, lo_[static_cast<size_t>(j)] - v);
        worst = std::max(worst, v - hi_[static_cast<size_t>(j)]);
    }
    return worst;
}

double SimplexTableau::row_residual(const Model& m) const {
    // A basic solution satisfies the rows by construction; anything beyond
    // roundoff here means the pivot chain degraded the tableau.
    double worst = 0.0;
    for (const Model::Row& row : m.rows) {
        double lhs = 0.0;
        for (const LinTerm& t : row.terms)
            lhs += t.coeff * value(t.var.index);
        switch (row.sense) {
        case Sense::LE: worst = std::max(worst, lhs - row.rhs); break;
        case Sense::GE: worst = std::max(worst, row.rhs - lhs); break;
        case Sense::EQ: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

void SimplexTableau::restart_from_boxes() {
    // Pristine refactorized start: all-slack basis over the original rows,
    // every nonbasic parked on the bound its objective sign prefers, which
    // makes the start dual-feasible without phase-1 artificials.
    if (tab_.empty()) throw std::logic_error("restart before any solve");
    std::copy(orig_.begin(), orig_.end(), tab_.begin());
    std::fill(row_of_.begin(), row_of_.end(), -1);
    for (int i = 0; i < m_; ++i) {
        const int slack = n_struct_ + i;
        basic_var_[static_cast<size_t>(i)] = slack;
        row_of_[static_cast<size_t>(slack)] = i;
        status_[static_cast<size_t>(slack)] = VarStatus::Basic;
    }
    for (int j = 0; j < n_cols_; ++j) {
        const size_t c = static_cast<size_t>(j);
        if (row_of_[c] >= 0) continue;
        const double cost = j < n_struct_ ? model_->objective[c] : 0.0;
        if (lo_[c] == hi_[c]) {
            status_[c] = VarStatus::AtLower;
        } else if (cost > 0.0) {
            if (lo_[c] == -kInf)
                throw std::runtime_error("restart_from_boxes: unbounded cost direction");
            status_[c] = VarStatus::AtLower;
        } else if (cost < 0.0) {
            if (hi_[c] == kInf)
                throw std::runtime_error("restart_from_boxes: unbounded cost direction");
            status_[c] = VarStatus::AtUpper;
        } else {
            status_[c] = lo_[c] > -kInf ? VarStatus::AtLower
                                        : (hi_[c] < kInf ? VarStatus::AtUpper
                                                         : VarStatus::FreeZero);
        }
        set_nonbasic_to_bound(j);
    }
    phase1_ = false;
    rebuild_cost_row();
    recompute_basic_values();
    pivots_since_rebuild_ = 0;
    bland_ = false;
    stall_ = 0;
}

LpOutcome SimplexTableau::primal_iterate(long iter_limit) {
    const double* crow = tab_.data() + static_cast<long>(m_) * stride_;
    for (long iter = 0; iter < iter_limit; ++iter) {
        // Pricing: Dantzig normally, lowest-index (Bland) while stalled.
        int enter = -1, dir = 0;
        double best_score = tol::dual;
        for (int j = 0; j < n_cols_; ++j) {
            const size_t c = static_cast<size_t>(j);
            if (row_of_[c] >= 0 || fixed(j) || is_artificial(j)) continue;
            const double d = crow[j];
            int cand_dir = 0;
            switch (status_[c]) {
            case VarStatus::AtLower:
                if (d < -tol::dual) cand_dir = 1;
                break;
            case VarStatus::AtUpper:
                if (d > tol::dual) cand_dir = -1;
                break;
            case VarStatus::FreeZero:
                if (d < -tol::dual) cand_dir = 1;
                else if (d > tol::dual) cand_dir = -1;
                break;
            default: break;
            }
            if (cand_dir == 0) continue;
            if (bland_) {
                enter = j;
                dir = cand_dir;
                break;
            }
            const double score = std::abs(d);
            if (score > best_score) {
                best_score = score;
                enter = j;
                dir = cand_dir;
            }
        }
        if (enter < 0) return LpOutcome::Optimal;

        // Two-pass ratio test: first a relaxed minimum step that tolerates
        // tol::feas bound drift, then the largest pivot among rows whose
        // exact limit fits under it.
        const size_t ec = static_cast<size_t>(enter);
        const double own =
            (lo_[ec] > -kInf && hi_[ec] < kInf) ? hi_[ec] - lo_[ec] : kInf;
        double t_bound = own;
        for (int i = 0; i < m_; ++i) {
            const double a = at(i, enter);
            if (std::abs(a) < kDropTol) continue;
            const double delta = -dir * a;
            const int bv = basic_var_[static_cast<size_t>(i)];
            const size_t bc = static_cast<size_t>(bv);
            double rel;
            if (delta > 0.0) {
                if (hi_[bc] == kInf) continue;
                rel = (hi_[bc] + tol::feas - xb_[static_cast<size_t>(i)]) / delta;
            } else {
                if (lo_[bc] == -kInf) continue;
                rel = (xb_[static_cast<size_t>(i)] - (lo_[bc] - tol::feas)) / (-delta);
            }
            if (rel < 0.0) rel = 0.0;
            if (rel < t_bound) t_bound = rel;
        }
        if (t_bound == kInf) return LpOutcome::Unbounded;

        int leave = -1;
        double leave_a = 0.0, t = 0.0;
        int leave_hit = 0; // 0 = lower bound, 1 = upper bound
        for (int i = 0; i < m_; ++i) {
            const double a = at(i, enter);
            if (std::abs(a) < kDropTol) continue;
            const double delta = -dir * a;
            const int bv = basic_var_[static_cast<size_t>(i)];
            const size_t bc = static_cast<size_t>(bv);
            double limit;
            int hit;
            if (delta > 0.0) {
                if (hi_[bc] == kInf) continue;
                limit = (hi_[bc] - xb_[static_cast<size_t>(i)]) / delta;
                hit = 1;
            } else {
                if (lo_[bc] == -kInf) continue;
                limit = (xb_[static_cast<size_t>(i)] - lo_[bc]) / (-delta);
                hit = 0;
            }
            if (limit < 0.0) limit = 0.0;
            if (limit > t_bound) continue;
            bool take = false;
            if (leave < 0) {
                take = true;
            } else if (bland_) {
                take = bv < basic_var_[static_cast<size_t>(leave)];
            } else if (std::abs(a) > std::abs(leave_a)) {
                take = true;
            }
            if (take) {
                leave = i;
                leave_a = a;
                leave_hit = hit;
                t = limit;
            }
        }

        if (leave < 0) {
            // No binding row: the entering variable flips to its other bound.
            for (int i = 0; i < m_; ++i) {
                const double a = at(i, enter);
                if (a != 0.0) xb_[static_cast<size_t>(i)] -= a * (dir * own);
            }
            status_[ec] = dir > 0 ? VarStatus::AtUpper : VarStatus::AtLower;
            xval_[ec] = dir > 0 ? hi_[ec] : lo_[ec];
            if (own > tol::degen) {
                stall_ = 0;
                bland_ = false;
            }
            continue;
        }

        const double step = dir * t;
        for (int i = 0; i < m_; ++i) {
            if (i == leave) continue;
            const double a = at(i, enter);
            if (a != 0.0) xb_[static_cast<size_t>(i)] -= a * step;
        }
        const double enter_val = xval_[ec] + step;
        const int old_bv = basic_var_[static_cast<size_t>(leave)];
        const size_t oc = static_cast<size_t>(old_bv);
        status_[oc] = leave_hit ? VarStatus::AtUpper : VarStatus::AtLower;
        xval_[oc] = leave_hit ? hi_[oc] : lo_[oc];
        row_of_[oc] = -1;
        pivot(leave, enter);
        basic_var_[static_cast<size_t>(leave)] = enter;
        row_of_[ec] = leave;
        status_[ec] = VarStatus::Basic;
        xb_[static_cast<size_t>(leave)] = enter_val;
        if (t <= tol::degen) {
            if (++stall_ > kStallLimit) bland_ = true;
        } else {
            stall_ = 0;
            bland_ = false;
        }
    }
    return LpOutcome::Stalled;
}

LpOutcome SimplexTableau::dual_iterate(long iter_limit, double pivot_floor) {
    const double* crow = tab_.data() + static_cast<long>(m_) * stride_;
    for (long iter = 0; iter < iter_limit; ++iter) {
        // Leaving: the basic variable most outside its bounds (lowest index
        // while in Bland mode).
        int lrow = -1;
        bool above = false;
        double worst = tol::feas;
        for (int i = 0; i < m_; ++i) {
            const int bv = basic_var_[static_cast<size_t>(i)];
            const size_t bc = static_cast<size_t>(bv);
            const double v = xb_[static_cast<size_t>(i)];
            const double vh = v - hi_[bc];
            const double vl = lo_[bc] - v;
            const double viol = std::max(vh, vl);
            if (viol <= tol::feas) continue;
            bool take = false;
            if (lrow < 0) {
                take = true;
            } else if (bland_) {
                take = bv < basic_var_[static_cast<size_t>(lrow)];
            } else {
                take = viol > worst;
            }
            if (take) {
                worst = viol;
                lrow = i;
                above = vh >= vl;
            }
        }
        if (lrow < 0) return LpOutcome::Optimal;

        // Entering: minimum dual ratio among sign-eligible nonbasics. A
        // repair path that only exists through sub-floor pivots is reported
        // as Stalled so the caller can refactorize and retry instead of
        // wrongly declaring infeasibility.
        int enter = -1;
        double best_ratio = kInf, enter_a = 0.0;
        bool tiny_escape = false;
        for (int j = 0; j < n_cols_; ++j) {
            const size_t c = static_cast<size_t>(j);
            if (row_of_[c] >= 0 || fixed(j) || is_artificial(j)) continue;
            const double a = at(lrow, j);
            if (std::abs(a) < kDropTol) continue;
            bool ok = false;
            switch (status_[c]) {
            case VarStatus::AtLower: ok = above ? a > 0.0 : a < 0.0; break;
            case VarStatus::AtUpper: ok = above ? a < 0.0 : a > 0.0; break;
            case VarStatus::FreeZero: ok = true; break;
            default: break;
            }
            if (!ok) continue;
            if (std::abs(a) < pivot_floor) {
                // Entries under 1e-10 are cancellation noise at this data
                // scale, not a usable repair path.
                if (std::abs(a) >= 1e-10) tiny_escape = true;
                continue;
            }
            const double ratio = std::abs(crow[j]) / std::abs(a);
            bool take = false;
            if (ratio < best_ratio - kRatioTie * std::max(1.0, best_ratio)) {
                take = true;
            } else if (ratio < best_ratio + kRatioTie * std::max(1.0, best_ratio)) {
                if (enter < 0) {
                    take = true;
                } else if (bland_) {
                    take = j < enter;
                } else if (std::abs(a) > std::abs(enter_a)) {
                    take = true;
                }
            }
            if (take) {
                best_ratio = std::min(best_ratio, ratio);
                enter = j;
                enter_a = a;
            }
        }
        if (enter < 0) return tiny_escape ? LpOutcome::Stalled : LpOutcome::Infeasible;

        const size_t ec = static_cast<size_t>(enter);
        const int old_bv = basic_var_[static_cast<size_t>(lrow)];
        const size_t oc = static_cast<size_t>(old_bv);
        const double target = above ? hi_[oc] : lo_[oc];
        const double delta = (xb_[static_cast<size_t>(lrow)] - target) / enter_a;
        for (int i = 0; i < m_; ++i) {
            if (i == lrow) continue;
            const double a = at(i, enter);
            if (a != 0.0) xb_[static_cast<size_t>(i)] -= a * delta;
        }
        const double enter_val = xval_[ec] + delta;
        status_[oc] = above ? VarStatus::AtUpper : VarStatus::AtLower;
        xval_[oc] = target;
        row_of_[oc] = -1;
        pivot(lrow, enter);
        basic_var_[static_cast<size_t>(lrow)] = enter;
        row_of_[ec] = lrow;
        status_[ec] = VarStatus::Basic;
        xb_[static_cast<size_t>(lrow)] = enter_val;
        if (std::abs(delta) <= tol::degen) {
            if (++stall_ > kStallLimit) bland_ = true;
        } else {
            stall_ = 0;
            bland_ = false;
        }
    }
    return LpOutcome::Stalled;
}

LpOutcome SimplexTableau::solve_from_scratch() {
    build_columns();
    const long limit = 20000 + 5L * (m_ + n_cols_);
    if (n_art_ > 0) {
        phase1_ = true;
        rebuild_cost_row();
        LpOutcome r = primal_iterate(limit);
        if (r == LpOutcome::Stalled) return r;
        double infeas = 0.0;
        for (int j = n_struct_ + m_; j < n_cols_; ++j) infeas += value(j);
        if (infeas > 1e-7) {
            phase1_ = false;
            return LpOutcome::Infeasible;
        }
        // Swap surviving artificials out of the basis where possible, then
        // freeze them at zero.
        for (int i = 0; i < m_; ++i) {
            const int bv = basic_var_[static_cast<size_t>(i)];
            if (!is_artificial(bv)) continue;
            int pick = -1;
            double best = tol::pivot;
            for (int j = 0; j < n_struct_ + m_; ++j) {
                if (row_of_[static_cast<size_t>(j)] >= 0) continue;
                const double a = std::abs(at(i, j));
                if (a > best) {
                    best = a;
                    pick = j;
                }
            }
            if (pick < 0) continue; // redundant row; artificial stays at zero
            const size_t pc = static_cast<size_t>(pick);
            const double keep = xval_[pc];
            status_[static_cast<size_t>(bv)] = VarStatus::AtLower;
            xval_[static_cast<size_t>(bv)] = 0.0;
            row_of_[static_cast<size_t>(bv)] = -1;
            pivot(i, pick);
            basic_var_[static_cast<size_t>(i)] = pick;
            row_of_[pc] = i;
            status_[pc] = VarStatus::Basic;
            xb_[static_cast<size_t>(i)] = keep;
        }
        for (int j = n_struct_ + m_; j < n_cols_; ++j) {
            lo_[static_cast<size_t>(j)] = 0.0;
            hi_[static_cast<size_t>(j)] = 0.0;
            if (row_of_[static_cast<size_t>(j)] < 0) {
                status_[static_cast<size_t>(j)] = VarStatus::AtLower;
                xval_[static_cast<size_t>(j)] = 0.0;
            }
        }
        phase1_ = false;
    }
    rebuild_cost_row();
    bland_ = false;
    stall_ = 0;
    return primal_iterate(limit);
}

LpOutcome SimplexTableau::dual_reoptimize(double pivot_floor) {
    if (tab_.empty())
        throw std::logic_error("dual_reoptimize before any solve");
    const long limit = 20000 + 5L * (m_ + n_cols_);
    LpOutcome r = dual_iterate(limit, pivot_floor);
    if (r != LpOutcome::Optimal) return r;
    // Reduced costs can drift across warm starts; polish with primal steps.
    return primal_iterate(limit);
}

void SimplexTableau::load_basis(const std::vector<VarStatus>& target) {
    if (static_cast<int>(target.size()) != n_cols_)
        throw std::logic_error("basis snapshot size mismatch");
    if (pivots_since_rebuild_ > 6000) {
        rebuild_from_status(target);
        return;
    }
    for (int j = 0; j < n_cols_; ++j) {
        if (target[static_cast<size_t>(j)] != VarStatus::Basic) continue;
        if (row_of_[static_cast<size_t>(j)] >= 0) continue;
        int pick = -1;
        double best = 1e-5; // dubious pivots: prefer a rebuild from fresh data
        for (int i = 0; i < m_; ++i) {
            const int bv = basic_var_[static_cast<size_t>(i)];
            if (target[static_cast<size_t>(bv)] == VarStatus::Basic) continue;
            const double a = std::abs(at(i, j));
            if (a > best) {
                best = a;
                pick = i;
            }
        }
        if (pick < 0) {
            rebuild_from_status(target);
            return;
        }
        const int old_bv = basic_var_[static_cast<size_t>(pick)];
        row_of_[static_cast<size_t>(old_bv)] = -1;
        pivot(pick, j);
        basic_var_[static_cast<size_t>(pick)] = j;
        row_of_[static_cast<size_t>(j)] = pick;
    }
    adopt_statuses(target);
}

void SimplexTableau::adopt_statuses(const std::vector<VarStatus>& target) {
    // Statuses follow the basis actually reached; a target-basic column that
    // could not be pivoted in parks at a bound and the later dual/primal
    // iterations take it from there.
    for (int j = 0; j < n_cols_; ++j) {
        const size_t c = static_cast<size_t>(j);
        if (row_of_[c] >= 0) {
            status_[c] = VarStatus::Basic;
            continue;
        }
        status_[c] = target[c] == VarStatus::Basic ? VarStatus::AtLower : target[c];
        set_nonbasic_to_bound(j);
    }
    rebuild_cost_row();
    recompute_basic_values();
    bland_ = false;
    stall_ = 0;
}

void SimplexTableau::rebuild_from_status(const std::vector<VarStatus>& target) {
    std::copy(orig_.begin(), orig_.end(), tab_.begin());
    std::fill(row_of_.begin(), row_of_.end(), -1);
    for (int i = 0; i < m_; ++i) {
        const int slack = n_struct_ + i;
        basic_var_[static_cast<size_t>(i)] = slack;
        row_of_[static_cast<size_t>(slack)] = i;
    }
    pivots_since_rebuild_ = 0;
    for (int j = 0; j < n_cols_; ++j) {
        if (target[static_cast<size_t>(j)] != VarStatus::Basic) continue;
        if (row_of_[static_cast<size_t>(j)] >= 0) continue;
        int pick = -1;
        double best = 1e-9;
        for (int i = 0; i < m_; ++i) {
            const int bv = basic_var_[static_cast<size_t>(i)];
            if (target[static_cast<size_t>(bv)] == VarStatus::Basic) continue;
            const double a = std::abs(at(i, j));
            if (a > best) {
                best = a;
                pick = i;
            }
        }
        if (pick < 0) continue; // numerically unreachable; keep the slack basic
        const int old_bv = basic_var_[static_cast<size_t>(pick)];
        row_of_[static_cast<size_t>(old_bv)] = -1;
        pivot(pick, j);
        basic_var_[static_cast<size_t>(pick)] = j;
        row_of_[static_cast<size_t>(j)] = pick;
    }
    adopt_statuses(target);
}

} // namespace inspection::milp

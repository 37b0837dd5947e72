#pragma once

#include "inspection/milp/model.hpp"

#include <cstdint>
#include <vector>

namespace inspection::milp {

namespace tol {
inline constexpr double feas = 1e-9;   // bound / row feasibility
inline constexpr double dual = 1e-9;   // reduced-cost optimality
inline constexpr double pivot = 1e-8;  // smallest acceptable pivot
inline constexpr double degen = 1e-11; // step treated as degenerate
} // namespace tol

enum class VarStatus : std::uint8_t { AtLower, AtUpper, Basic, FreeZero };

enum class LpOutcome : std::uint8_t { Optimal, Infeasible, Unbounded, Stalled };

namespace detail {
/// Subtract multiples of the (already scaled) pivot row from every other row,
/// zeroing the pivot column. One call per pivot; this is the hot loop of the
/// whole solver. Rows are independent, so the parallel path is bit-identical
/// to the serial one.
void eliminate_rows(double* tab, long nrows, long stride, long prow, long pcol,
                    bool parallel);
} // namespace detail

/// Dense bounded-variable simplex over the equality form A x + s = b.
///
/// Columns: structural variables, one slack per row, phase-1 artificials,
/// then the right-hand-side column. The tableau holds B^-1 [A I b]; nonbasic
/// variables sit at one of their bounds and basic values are tracked
/// incrementally. Branch-and-bound restarts go through load_basis() followed
/// by dual_reoptimize() after bound changes.
class SimplexTableau {
public:
    SimplexTableau(const Model& m, bool parallel);

    int num_rows() const { return m_; }
    int num_structural() const { return n_struct_; }
    int num_columns() const { return n_cols_; } // excludes the rhs column

    void set_bounds(int col, double lo, double hi);
    double lower(int col) const { return lo_[static_cast<size_t>(col)]; }
    double upper(int col) const { return hi_[static_cast<size_t>(col)]; }

    /// Two-phase primal simplex from the all-slack basis. Allocates phase-1
    /// artificial columns on first call (the column layout is frozen after).
    LpOutcome solve_from_scratch();

    /// Restore primal feasibility from the current (dual-feasible) basis
    /// after bound changes; falls through to primal iterations if reduced
    /// costs drifted. Requires a prior solve_from_scratch(). Returns Stalled
    /// when the only repair path runs through pivots below the floor, in
    /// which case the caller should refactorize and retry.
    LpOutcome dual_reoptimize(double pivot_floor = tol::pivot);

    std::vector<VarStatus> snapshot() const { return status_; }

    /// Pivot the tableau to the given basis (typically a parent node's end
    /// basis), then adopt its nonbasic bound assignments under the current
    /// bounds and refresh basic values and reduced costs.
    void load_basis(const std::vector<VarStatus>& target);

    double value(int col) const;
    double objective_value() const;
    long pivot_count() const { return pivots_; }

    /// Max violation of the model rows/bounds at the current point; used to
    /// detect numerical drift before trusting a solution.
    double primal_residual(const Model& m) const;
    /// Row violations only (bounds excluded); nonzero beyond roundoff means
    /// the tableau itself has degraded.
    double row_residual(const Model& m) const;

    /// Drop the current basis entirely: refactorized all-slack start with
    /// nonbasic variables parked dual-feasibly on their bounds. Requires the
    /// cost-bearing variables to have finite bounds.
    void restart_from_boxes();

private:
    const Model* model_;
    bool parallel_;
    int m_ = 0;        // rows
    int n_struct_ = 0; // structural columns
    int n_art_ = 0;    // artificial columns
    int n_cols_ = 0;   // struct + slacks + artificials
    long stride_ = 0;  // n_cols_ + 1 (rhs)
    bool columns_frozen_ = false;

    std::vector<double> tab_;  // (m_+1) x stride_, row m_ = reduced costs
    std::vector<double> orig_; // pristine copy of rows 0..m_-1 for rebuilds
    std::vector<double> lo_, hi_;
    std::vector<double> xval_;   // nonbasic values (basic entries stale)
    std::vector<double> xb_;     // basic values per row
    std::vector<int> basic_var_; // column basic in each row
    std::vector<int> row_of_;    // row of a basic column, -1 otherwise
    std::vector<VarStatus> status_;
    std::vector<double> cost_;  // active objective per column
    bool phase1_ = false;
    long pivots_ = 0;
    long pivots_since_rebuild_ = 0;
    bool bland_ = false;
    int stall_ = 0;

    double& at(int r, int c) { return tab_[static_cast<size_t>(r) * stride_ + c]; }
    double at(int r, int c) const { return tab_[static_cast<size_t>(r) * stride_ + c]; }
    int rhs_col() const { return n_cols_; }

    void build_columns();
    void set_nonbasic_to_bound(int col);
    void adopt_statuses(const std::vector<VarStatus>& target);
    void recompute_basic_values();
    void rebuild_cost_row();
    void pivot(int prow, int pcol);
    LpOutcome primal_iterate(long iter_limit);
    LpOutcome dual_iterate(long iter_limit, double pivot_floor);
    bool fixed(int col) const {
        return lo_[static_cast<size_t>(col)] == hi_[static_cast<size_t>(col)];
    }
    bool is_artificial(int col) const {
        return col >= n_struct_ + m_ && col < n_cols_;
    }
    void rebuild_from_status(const std::vector<VarStatus>& target);
};

} // namespace inspection::milp

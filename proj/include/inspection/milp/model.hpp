#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace inspection::milp {

enum class VarKind : std::uint8_t { Continuous, Binary };
enum class Sense : std::uint8_t { LE, EQ, GE };

struct VarId {
    int index = -1;
    bool valid() const { return index >= 0; }
    bool operator==(const VarId&) const = default;
};

struct LinTerm {
    VarId var;
    double coeff = 0.0;
};
using LinExpr = std::vector<LinTerm>;

/// Mixed-integer linear program: variables with box bounds, linear rows, and
/// a linear minimization objective. Binary variables always carry [0,1]
/// bounds (possibly fixed tighter).
class Model {
public:
    struct Var {
        VarKind kind = VarKind::Continuous;
        double lo = 0.0;
        double hi = 0.0;
        std::string name;
    };
    struct Row {
        LinExpr terms;
        Sense sense = Sense::LE;
        double rhs = 0.0;
        std::string name;
    };

    std::vector<Var> vars;
    std::vector<Row> rows;
    std::vector<double> objective; // dense per variable, minimization
    double objective_constant = 0.0;

    VarId add_continuous(double lo, double hi, std::string name);
    VarId add_binary(std::string name);

    /// Collapse a variable's bounds to a single value.
    void fix(VarId v, double value);
    bool is_fixed(VarId v) const;

    void add_row(LinExpr terms, Sense sense, double rhs, std::string name);
    void set_objective(VarId v, double coeff);

    /// Enforce expr <= rhs when b = 1. big_m_slack must bound
    /// sup(expr) - rhs over the variable box; when b = 0 the emitted row
    /// expr + big_m_slack * b <= rhs + big_m_slack is vacuous.
    /// Rejects non-binary b and nonpositive slack.
    void add_indicator_leq(VarId b, LinExpr expr, double rhs,
                           double big_m_slack, std::string name);

    /// Lower-envelope epigraph of a convex function of `in`: one row
    /// out >= slope * in + intercept per tangent. Rejects an empty tangent
    /// set. `out` is expected to carry a positive objective coefficient so
    /// that minimization presses it onto the envelope.
    void add_pwl_convex_min(VarId out, VarId in,
                            const std::vector<std::pair<double, double>>& tangents,
                            const std::string& name);

    int num_vars() const { return static_cast<int>(vars.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }
    int num_binaries() const;

    /// Largest value a linear expression can take over the variable box.
    double expr_sup(const LinExpr& e) const;
    double expr_inf(const LinExpr& e) const;

    /// Throws if a row references an undeclared variable, a coefficient or
    /// bound is NaN, or a binary has bounds outside [0,1].
    void validate() const;
};

/// Plain-text LP interchange format (objective, rows, bounds, binaries; one
/// item per line, names preserved) for cross-checking with external solvers.
void write_lp_format(const Model& m, std::ostream& os);

} // namespace inspection::milp

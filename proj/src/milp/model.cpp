#include "inspection/milp/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace inspection::milp {

VarId Model::add_continuous(double lo, double hi, std::string name) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
        throw std::invalid_argument("bad bounds for variable " + name);
    vars.push_back(Var{VarKind::Continuous, lo, hi, std::move(name)});
    objective.push_back(0.0);
    return VarId{static_cast<int>(vars.size()) - 1};
}

VarId Model::add_binary(std::string name) {
    vars.push_back(Var{VarKind::Binary, 0.0, 1.0, std::move(name)});
    objective.push_back(0.0);
    return VarId{static_cast<int>(vars.size()) - 1};
}

void Model::fix(VarId v, double value) {
    Var& var = vars.at(static_cast<size_t>(v.index));
    var.lo = value;
    var.hi = value;
}

bool Model::is_fixed(VarId v) const {
    const Var& var = vars.at(static_cast<size_t>(v.index));
    return var.lo == var.hi;
}

void Model::add_row(LinExpr terms, Sense sense, double rhs, std::string name) {
    rows.push_back(Row{std::move(terms), sense, rhs, std::move(name)});
}

void Model::set_objective(VarId v, double coeff) {
    objective.at(static_cast<size_t>(v.index)) = coeff;
}

void Model::add_indicator_leq(VarId b, LinExpr expr, double rhs,
                              double big_m_slack, std::string name) {
    if (!b.valid() || vars.at(static_cast<size_t>(b.index)).kind != VarKind::Binary)
        throw std::invalid_argument("indicator variable must be binary: " + name);
    if (!(big_m_slack > 0.0) || !std::isfinite(big_m_slack))
        throw std::invalid_argument("indicator slack must be positive: " + name);
    expr.push_back(LinTerm{b, big_m_slack});
    add_row(std::move(expr), Sense::LE, rhs + big_m_slack, std::move(name));
}

void Model::add_pwl_convex_min(VarId out, VarId in,
                               const std::vector<std::pair<double, double>>& tangents,
                               const std::string& name) {
    if (tangents.empty())
        throw std::invalid_argument("empty tangent set: " + name);
    int k = 0;
    for (const auto& [slope, intercept] : tangents) {
        // out - slope * in >= intercept
        add_row({LinTerm{out, 1.0}, LinTerm{in, -slope}}, Sense::GE, intercept,
                name + "_t" + std::to_string(k++));
    }
}

int Model::num_binaries() const {
    int n = 0;
    for (const Var& v : vars)
        if (v.kind == VarKind::Binary) ++n;
    return n;
}

double Model::expr_sup(const LinExpr& e) const {
    double s = 0.0;
    for (const LinTerm& t : e) {
        const Var& v = vars.at(static_cast<size_t>(t.var.index));
        s += t.coeff >= 0.0 ? t.coeff * v.hi : t.coeff * v.lo;
    }
    return s;
}

double Model::expr_inf(const LinExpr& e) const {
    double s = 0.0;
    for (const LinTerm& t : e) {
        const Var& v = vars.at(static_cast<size_t>(t.var.index));
        s += t.coeff >= 0.0 ? t.coeff * v.lo : t.coeff * v.hi;
    }
    return s;
}

void Model::validate() const {
    for (const Var& v : vars) {
        if (std::isnan(v.lo) || std::isnan(v.hi) || v.lo > v.hi)
            throw std::logic_error("bad bounds on variable " + v.name);
        if (v.kind == VarKind::Binary && (v.lo < 0.0 || v.hi > 1.0))
            throw std::logic_error("binary bounds outside [0,1]: " + v.name);
    }
    for (const Row& r : rows) {
        if (!std::isfinite(r.rhs))
            throw std::logic_error("non-finite rhs in row " + r.name);
        for (const LinTerm& t : r.terms) {
            if (t.var.index < 0 || t.var.index >= num_vars())
                throw std::logic_error("row " + r.name + " references undeclared variable");
            if (!std::isfinite(t.coeff))
                throw std::logic_error("non-finite coefficient in row " + r.name);
        }
    }
    if (objective.size() != vars.size())
        throw std::logic_error("objective size mismatch");
}

} // namespace inspection::milp

#include "inspection/milp/model.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace inspection::milp {

namespace {

void write_number(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

void write_expr(std::ostream& os, const Model& m, const LinExpr& e) {
    bool first = true;
    for (const LinTerm& t : e) {
        if (t.coeff == 0.0) continue;
        double c = t.coeff;
        if (first) {
            if (c < 0) {
                os << "- ";
                c = -c;
            }
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
            c = std::abs(c);
        }
        write_number(os, c);
        os << ' ' << m.vars[static_cast<size_t>(t.var.index)].name;
    }
    if (first) os << "0";
}

} // namespace

void write_lp_format(const Model& m, std::ostream& os) {
    os << "Minimize\n obj: ";
    LinExpr obj;
    for (int j = 0; j < m.num_vars(); ++j) {
        if (m.objective[static_cast<size_t>(j)] != 0.0)
            obj.push_back({VarId{j}, m.objective[static_cast<size_t>(j)]});
    }
    write_expr(os, m, obj);
    os << "\nSubject To\n";
    for (const Model::Row& r : m.rows) {
        os << ' ' << r.name << ": ";
        write_expr(os, m, r.terms);
        switch (r.sense) {
        case Sense::LE: os << " <= "; break;
        case Sense::EQ: os << " = "; break;
        case Sense::GE: os << " >= "; break;
        }
        write_number(os, r.rhs);
        os << '\n';
    }
    os << "Bounds\n";
    const double inf = std::numeric_limits<double>::infinity();
    for (const Model::Var& v : m.vars) {
        os << ' ';
        if (v.lo == v.hi) {
            os << v.name << " = ";
            write_number(os, v.lo);
        } else {
            if (v.lo == -inf)
                os << "-inf";
            else
                write_number(os, v.lo);
            os << " <= " << v.name << " <= ";
            if (v.hi == inf)
                os << "+inf";
            else
                write_number(os, v.hi);
        }
        os << '\n';
    }
    bool any_bin = false;
    for (const Model::Var& v : m.vars) {
        if (v.kind == VarKind::Binary) {
            if (!any_bin) {
                os << "Binaries\n";
                any_bin = true;
            }
            os << ' ' << v.name << '\n';
        }
    }
    os << "End\n";
}

} // namespace inspection::milp

#include "inspection/vehicle.hpp"

namespace inspection {

AgentState step(const DynamicsModel& m, const AgentState& s, const Vec3& u) {
    AgentState out;
    out.p = s.p + s.v * m.dt;
    out.v = s.v * m.alpha() + u * m.beta();
    return out;
}

namespace {

bool in_box(const Vec3& lo, const Vec3& hi, const Vec3& v, double tol) {
    for (int k = 0; k < 3; ++k) {
        if (v[k] < lo[k] - tol || v[k] > hi[k] + tol) return false;
    }
    return true;
}

} // namespace

bool check_bounds(const OperatingBounds& b, const AgentState& s, const Vec3& u,
                  double tol) {
    return in_box(b.workspace_lo, b.workspace_hi, s.p, tol) &&
           in_box(b.v_lo, b.v_hi, s.v, tol) && in_box(b.u_lo, b.u_hi, u, tol);
}

} // namespace inspection

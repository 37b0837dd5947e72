#pragma once

#include "inspection/geometry.hpp"

namespace inspection {

struct AgentState {
    Vec3 p; // position, m
    Vec3 v; // velocity, m/s
};

/// Discrete-time double integrator with linear drag:
///   p' = p + dt v,  v' = (1 - drag) v + (dt / mass) u.
struct DynamicsModel {
    double dt = 1.0;   // s
    double mass = 1.0; // kg
    double drag = 0.0; // fraction of velocity shed per step, in [0, 1)

    double alpha() const { return 1.0 - drag; }
    double beta() const { return dt / mass; }
    bool valid() const { return dt > 0.0 && mass > 0.0 && drag >= 0.0 && drag < 1.0; }
};

/// Box bounds on position, velocity and control force.
struct OperatingBounds {
    Vec3 workspace_lo, workspace_hi;
    Vec3 v_lo, v_hi;
    Vec3 u_lo, u_hi;
};

AgentState step(const DynamicsModel& m, const AgentState& s, const Vec3& u);

bool check_bounds(const OperatingBounds& b, const AgentState& s, const Vec3& u,
                  double tol = 0.0);

} // namespace inspection

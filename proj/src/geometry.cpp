#include "inspection/geometry.hpp"

#include <stdexcept>

namespace inspection {

const std::array<const char*, 6> kFaceNames = {"xmin", "xmax", "ymin",
                                               "ymax", "zmin", "zmax"};

int face_id_from_name(const std::string& name) {
    for (int i = 0; i < 6; ++i) {
        if (name == kFaceNames[static_cast<size_t>(i)]) return i;
    }
    return -1;
}

namespace {

void in_plane_axes(int normal_axis, int& a, int& b) {
    switch (normal_axis) {
    case 0: a = 1; b = 2; break;
    case 1: a = 0; b = 2; break;
    default: a = 0; b = 1; break;
    }
}

} // namespace

Cuboid Cuboid::from_box(const Vec3& lo, const Vec3& hi) {
    if (!lo.finite() || !hi.finite())
        throw std::invalid_argument("cuboid corners must be finite");
    for (int k = 0; k < 3; ++k) {
        if (!(lo[k] < hi[k]))
            throw std::invalid_argument("cuboid must have nonempty interior");
    }
    Cuboid c;
    c.lo = lo;
    c.hi = hi;
    for (int axis = 0; axis < 3; ++axis) {
        for (int side = 0; side < 2; ++side) {
            Face f;
            f.id = axis * 2 + side;
            f.axis = axis;
            f.sign = side == 0 ? -1.0 : 1.0;
            f.plane = side == 0 ? lo[axis] : hi[axis];
            in_plane_axes(axis, f.axis_a, f.axis_b);
            f.lo_a = lo[f.axis_a];
            f.hi_a = hi[f.axis_a];
            f.lo_b = lo[f.axis_b];
            f.hi_b = hi[f.axis_b];
            c.faces[static_cast<size_t>(f.id)] = f;
        }
    }
    return c;
}

bool Cuboid::contains(const Vec3& p, double tol) const {
    for (const Face& f : faces) {
        if (f.sign * p[f.axis] > f.offset() + tol) return false;
    }
    return true;
}

bool Cuboid::strictly_inside(const Vec3& p, double tol) const {
    for (const Face& f : faces) {
        if (f.sign * p[f.axis] >= f.offset() - tol) return false;
    }
    return true;
}

double face_distance(const Face& f, const Vec3& p) {
    return std::abs(p[f.axis] - f.plane);
}

bool face_view_predicate(const Face& f, const Vec3& p, double tol) {
    const double a = p[f.axis_a];
    const double b = p[f.axis_b];
    if (a < f.lo_a - tol || a > f.hi_a + tol) return false;
    if (b < f.lo_b - tol || b > f.hi_b + tol) return false;
    return f.sign * p[f.axis] >= f.offset() - tol;
}

FaceMatrices build_face_matrices(const Face& f) {
    FaceMatrices fm;
    // Rows 1..4: -pa <= -lo_a, pa <= hi_a, -pb <= -lo_b, pb <= hi_b.
    fm.J[0][f.axis_a] = -1.0;
    fm.K[0] = -f.lo_a;
    fm.J[1][f.axis_a] = 1.0;
    fm.K[1] = f.hi_a;
    fm.J[2][f.axis_b] = -1.0;
    fm.K[2] = -f.lo_b;
    fm.J[3][f.axis_b] = 1.0;
    fm.K[3] = f.hi_b;
    // Row 5: the outward half-space phi.p >= gamma written as -phi.p <= -gamma.
    fm.J[4][f.axis] = -f.sign;
    fm.K[4] = -f.offset();
    return fm;
}

bool point_on_face(const Face& f, const Vec3& pos, double tol) {
    if (std::abs(pos[f.axis] - f.plane) > tol) return false;
    const double a = pos[f.axis_a];
    const double b = pos[f.axis_b];
    return a >= f.lo_a - tol && a <= f.hi_a + tol && b >= f.lo_b - tol &&
           b <= f.hi_b + tol;
}

} // namespace inspection

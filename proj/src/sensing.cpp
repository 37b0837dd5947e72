#include "inspection/sensing.hpp"

#include <stdexcept>

namespace inspection {

double fov_side(const CameraModel& c, double d) {
    if (d < 0.0) throw std::invalid_argument("fov_side: negative distance");
    return c.z1 * d + c.z0;
}

Footprint footprint(const CameraModel& c, const Face& f, const Vec3& p) {
    Footprint fp;
    fp.face_id = f.id;
    fp.axis_a = f.axis_a;
    fp.axis_b = f.axis_b;
    fp.center_a = p[f.axis_a];
    fp.center_b = p[f.axis_b];
    fp.side = fov_side(c, face_distance(f, p));
    return fp;
}

bool point_in_fov(const Footprint& fp, const FeaturePoint& xi, double tol) {
    if (xi.face_id != fp.face_id)
        throw std::invalid_argument("point_in_fov: feature point face mismatch");
    const double half = fp.side / 2.0;
    return std::abs(xi.pos[fp.axis_a] - fp.center_a) <= half + tol &&
           std::abs(xi.pos[fp.axis_b] - fp.center_b) <= half + tol;
}

bool inspects(const CameraModel& c, const Face& f, const Vec3& p,
              const FeaturePoint& xi, double tol) {
    if (!face_view_predicate(f, p, tol)) return false;
    if (face_distance(f, p) > c.d_max + tol) return false;
    return point_in_fov(footprint(c, f, p), xi, tol);
}

} // namespace inspection

#pragma once

#include "inspection/geometry.hpp"

namespace inspection {

/// Downward-counting camera model: the projected square footprint on a face
/// has side z1 * d + z0 at perpendicular distance d, and inspection only
/// counts up to the cut-off distance d_max.
struct CameraModel {
    double z0 = 0.0;    // footprint side at zero distance, m
    double z1 = 0.0;    // side growth per meter of distance
    double d_max = 0.0; // inspection cut-off distance, m

    bool valid() const { return z0 >= 0.0 && z1 >= 0.0 && d_max > 0.0; }
};

/// Square footprint the camera would project on a face, in that face's
/// in-plane axes.
struct Footprint {
    int face_id = -1;
    int axis_a = 1, axis_b = 2;
    double center_a = 0.0, center_b = 0.0;
    double side = 0.0;
};

/// side = z1 * d + z0. Rejects negative distances.
double fov_side(const CameraModel& c, double d);

/// Hypothetical footprint of the camera on face f from position p; exists for
/// every face regardless of whether the face is actually being viewed.
Footprint footprint(const CameraModel& c, const Face& f, const Vec3& p);

/// True iff both in-plane coordinates of the feature point lie within
/// center +/- side/2 (closed). Rejects mismatched face ids.
bool point_in_fov(const Footprint& fp, const FeaturePoint& xi, double tol = 0.0);

/// Full geometric inspection predicate: the face is viewed, the point is in
/// the projected footprint, and the face distance is within the cut-off.
bool inspects(const CameraModel& c, const Face& f, const Vec3& p,
              const FeaturePoint& xi, double tol = 0.0);

} // namespace inspection

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace inspection {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double operator[](int axis) const {
        return axis == 0 ? x : (axis == 1 ? y : z);
    }
    double& operator[](int axis) {
        return axis == 0 ? x : (axis == 1 ? y : z);
    }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    double inf_norm() const {
        return std::max({std::abs(x), std::abs(y), std::abs(z)});
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Closed half-space phi . x >= gamma (or <= depending on use site).
struct HalfSpace {
    Vec3 normal;
    double offset = 0.0;
};

/// One axis-aligned cuboid face: the plane x[axis] = plane together with the
/// rectangle it occupies in the two in-plane axes (ascending axis order).
struct Face {
    int id = -1;
    int axis = 0;       // normal axis, 0=x 1=y 2=z
    double sign = 1.0;  // outward direction along that axis
    double plane = 0.0; // plane coordinate along the normal axis
    int axis_a = 1;     // first in-plane axis
    int axis_b = 2;     // second in-plane axis
    double lo_a = 0.0, hi_a = 0.0;
    double lo_b = 0.0, hi_b = 0.0;
    bool inspectable = false;

    Vec3 normal() const {
        Vec3 n;
        n[axis] = sign;
        return n;
    }
    /// gamma such that the face plane is normal() . x = gamma.
    double offset() const { return sign * plane; }
    HalfSpace halfspace() const { return {normal(), offset()}; }
};

struct FeaturePoint {
    int face_id = -1;
    int idx = -1;
    Vec3 pos;
};

/// Axis-aligned cuboid as six outward half-spaces. Face order is fixed:
/// xmin, xmax, ymin, ymax, zmin, zmax.
struct Cuboid {
    Vec3 lo, hi;
    std::array<Face, 6> faces;

    static Cuboid from_box(const Vec3& lo, const Vec3& hi);

    /// All six normal . p <= offset rows hold (closed set).
    bool contains(const Vec3& p, double tol = 0.0) const;
    /// All six rows hold strictly; boundary points are not inside.
    bool strictly_inside(const Vec3& p, double tol = 0.0) const;

    const Face& face(int id) const { return faces[static_cast<size_t>(id)]; }
};

/// Names for the fixed face order, used by scenario files.
extern const std::array<const char*, 6> kFaceNames;
int face_id_from_name(const std::string& name); // -1 if unknown

/// Perpendicular distance |p[axis] - plane| between p and the face plane.
double face_distance(const Face& f, const Vec3& p);

/// True iff the in-plane projection of p lies inside the face rectangle
/// (closed) and p is in the outward half-space of the face plane.
bool face_view_predicate(const Face& f, const Vec3& p, double tol = 0.0);

/// Five rows J p <= K: four bound the in-plane projection inside the face
/// rectangle, the fifth keeps p in the outward half-space.
struct FaceMatrices {
    std::array<std::array<double, 3>, 5> J{};
    std::array<double, 5> K{};
};
FaceMatrices build_face_matrices(const Face& f);

/// True iff the feature point sits on the face plane inside its rectangle.
bool point_on_face(const Face& f, const Vec3& pos, double tol = 1e-9);

} // namespace inspection

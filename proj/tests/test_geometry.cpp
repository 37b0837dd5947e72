#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "inspection/geometry.hpp"
#include "inspection/scenario.hpp"

using namespace inspection;

namespace {

Cuboid unit_cube() { return Cuboid::from_box({0, 0, 0}, {1, 1, 1}); }

// Face x = 150 with rectangle y in [150, 250], z in [0, 150], outward +x.
Face paper_style_face() {
    Face f;
    f.id = 1;
    f.axis = 0;
    f.sign = 1.0;
    f.plane = 150.0;
    f.axis_a = 1;
    f.axis_b = 2;
    f.lo_a = 150.0;
    f.hi_a = 250.0;
    f.lo_b = 0.0;
    f.hi_b = 150.0;
    f.inspectable = true;
    return f;
}

} // namespace

TEST_CASE("cuboid containment is closed") {
    const Cuboid c = unit_cube();
    CHECK(c.contains({0.5, 0.5, 0.5}));
    CHECK_FALSE(c.contains({1.5, 0.5, 0.5}));
    CHECK(c.contains({1.0, 0.5, 0.5})); // boundary counts as inside
    CHECK_FALSE(c.strictly_inside({1.0, 0.5, 0.5}));
    CHECK(c.strictly_inside({0.5, 0.5, 0.5}));
}

TEST_CASE("cuboid construction rejects empty boxes") {
    CHECK_THROWS(Cuboid::from_box({0, 0, 0}, {0, 1, 1}));
    CHECK_THROWS(Cuboid::from_box({2, 0, 0}, {1, 1, 1}));
}

TEST_CASE("face distance is the perpendicular plane distance") {
    Face f = paper_style_face();
    CHECK(face_distance(f, {250, 100, 30}) == doctest::Approx(100).epsilon(1e-15));
    CHECK(face_distance(f, {150, 200, 75}) == 0.0);

    Face g;
    g.axis = 1;
    g.sign = -1.0;
    g.plane = 0.0;
    g.axis_a = 0;
    g.axis_b = 2;
    CHECK(face_distance(g, {3, -7, 2}) == doctest::Approx(7).epsilon(1e-15));
}

TEST_CASE("face distance is invariant under in-plane translation") {
    const Face f = paper_style_face();
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Vec3 p{rng.uniform() * 400, rng.uniform() * 400, rng.uniform() * 200};
        Vec3 q = p;
        q[f.axis_a] += rng.uniform() * 50 - 25;
        q[f.axis_b] += rng.uniform() * 50 - 25;
        CHECK(face_distance(f, p) == face_distance(f, q));
    }
}

TEST_CASE("face view predicate") {
    const Face f = paper_style_face();
    CHECK(face_view_predicate(f, {250, 200, 75}));
    CHECK_FALSE(face_view_predicate(f, {100, 200, 75})); // wrong half-space
    CHECK_FALSE(face_view_predicate(f, {250, 300, 75})); // projection outside
    CHECK(face_view_predicate(f, {150, 150, 0}));        // boundary, closed
}

TEST_CASE("face matrices encode the view predicate row by row") {
    const Face f = paper_style_face();
    const FaceMatrices fm = build_face_matrices(f);
    // Rows as displayed for a +x face with rectangle [y1,y2] x [z1,z2]:
    // [-y; +y; -z; +z; -x] against [-y1; y2; -z1; z2; -gamma].
    CHECK(fm.J[0][1] == -1.0);
    CHECK(fm.K[0] == -150.0);
    CHECK(fm.J[1][1] == 1.0);
    CHECK(fm.K[1] == 250.0);
    CHECK(fm.J[2][2] == -1.0);
    CHECK(fm.K[2] == -0.0);
    CHECK(fm.J[3][2] == 1.0);
    CHECK(fm.K[3] == 150.0);
    CHECK(fm.J[4][0] == -1.0);
    CHECK(fm.K[4] == -150.0);
}

TEST_CASE("predicate equals conjunction of the five rows") {
    const Cuboid c = Cuboid::from_box({185, 250, 0}, {315, 350, 150});
    SplitMix64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 p{rng.uniform() * 500, rng.uniform() * 500, rng.uniform() * 250};
        for (const Face& f : c.faces) {
            const FaceMatrices fm = build_face_matrices(f);
            bool rows = true;
            for (int r = 0; r < 5; ++r) {
                double lhs = 0;
                for (int k = 0; k < 3; ++k) lhs += fm.J[r][k] * p[k];
                if (lhs > fm.K[r]) rows = false;
            }
            CHECK(rows == face_view_predicate(f, p));
        }
    }
}

TEST_CASE("viewing a face implies being outside the cuboid") {
    const Cuboid c = Cuboid::from_box({185, 250, 0}, {315, 350, 150});
    SplitMix64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 p{rng.uniform() * 500, rng.uniform() * 500, rng.uniform() * 250};
        for (const Face& f : c.faces) {
            if (face_view_predicate(f, p) && face_distance(f, p) > 0)
                CHECK_FALSE(c.strictly_inside(p));
        }
    }
}

TEST_CASE("at most one face viewed away from edge prolongations") {
    const Cuboid c = Cuboid::from_box({185, 250, 0}, {315, 350, 150});
    SplitMix64 rng(29);
    const double eps = 1e-6;
    int sampled = 0;
    for (int i = 0; i < 5000; ++i) {
        const Vec3 p{rng.uniform() * 500, rng.uniform() * 500, rng.uniform() * 250};
        if (c.contains(p)) continue;
        // Skip the measure-zero shell where a coordinate sits on a face plane.
        bool near_plane = false;
        for (const Face& f : c.faces)
            if (face_distance(f, p) < eps) near_plane = true;
        if (near_plane) continue;
        ++sampled;
        int viewed = 0;
        for (const Face& f : c.faces)
            if (face_view_predicate(f, p)) ++viewed;
        CHECK(viewed <= 1);
    }
    CHECK(sampled > 1000);
}

TEST_CASE("points validate against their face") {
    const Cuboid c = Cuboid::from_box({185, 250, 0}, {315, 350, 150});
    const Face& ymin = c.face(2);
    CHECK(point_on_face(ymin, {245, 250, 120}));
    CHECK_FALSE(point_on_face(ymin, {245, 251, 120}));
    CHECK_FALSE(point_on_face(ymin, {100, 250, 120})); // outside rectangle
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <dataware/config.hpp>
#include <dataware/encoder.hpp>
#include <dataware/errors.hpp>
#include <dataware/mesh.hpp>
#include <dataware/mesher.hpp>
#include <dataware/vessels.hpp>

#include "test_helpers.hpp"

using namespace dataware;
using testutil::make_box;

namespace {

// Area of the inscribed n-gon: the exact cross-section of a revolved solid.
double ngon_area(double radius, int n) {
    return 0.5 * n * radius * radius * std::sin(2.0 * std::numbers::pi / n);
}

MugSpec sweep_mug_spec(int perforations) {
    MugSpec spec;
    spec.diameter_mm = 80.0;
    spec.pitch_mm = 5.0;
    spec.spiral_length_mm = 6000.0;
    spec.spiral_turns = spec.spiral_length_mm / 251.37714328667968;
    spec.height_mm = spec.spiral_turns * spec.pitch_mm;
    spec.perforation_count = perforations;
    spec.perforation_spacing_mm = 260.0;
    return spec;
}

}  // namespace

TEST_CASE("hand-wound box is watertight with the right volume") {
    const TriangleMesh box = make_box(2.0, 3.0, 5.0);
    const MeshStats st = mesh_stats(box);
    CHECK(st.watertight);
    CHECK(st.vertex_count == 8);
    CHECK(st.edge_count == 18);  // 12 sides + 6 face diagonals
    CHECK(st.triangle_count == 12);
    CHECK(st.euler == 2);
    CHECK(st.genus == 0);
    CHECK(st.signed_volume_mm3 == doctest::Approx(30.0).epsilon(1e-12));
    CHECK(st.min_wall_estimate_mm > 0.0);
}

TEST_CASE("mesh diagnostics flag holes, duplicated faces, and flips") {
    TriangleMesh holed = make_box(1.0, 1.0, 1.0);
    holed.triangles.pop_back();
    CHECK_FALSE(mesh_stats(holed, false).watertight);
    CHECK(mesh_stats(holed, false).genus == -1);

    TriangleMesh doubled = make_box(1.0, 1.0, 1.0);
    doubled.triangles.push_back(doubled.triangles.front());
    CHECK_FALSE(mesh_stats(doubled, false).watertight);

    TriangleMesh flipped = make_box(1.0, 1.0, 1.0);
    std::swap(flipped.triangles.front()[0], flipped.triangles.front()[1]);
    CHECK_FALSE(mesh_stats(flipped, false).watertight);

    TriangleMesh degen = make_box(1.0, 1.0, 1.0);
    degen.add_triangle(0, 0, 1);
    CHECK_FALSE(mesh_stats(degen, false).watertight);
}

TEST_CASE("regular tetrahedron volume matches the closed form") {
    // Edge length 1: vertices of a unit-edge regular tetrahedron.
    TriangleMesh t;
    const double s = 1.0 / std::sqrt(2.0);
    const auto a = t.add_vertex({+0.5, 0.0, -0.5 * s});
    const auto b = t.add_vertex({-0.5, 0.0, -0.5 * s});
    const auto c = t.add_vertex({0.0, +0.5, +0.5 * s});
    const auto d = t.add_vertex({0.0, -0.5, +0.5 * s});
    t.add_triangle(a, b, c);
    t.add_triangle(a, c, d);
    t.add_triangle(a, d, b);
    t.add_triangle(b, d, c);
    const MeshStats st = mesh_stats(t, false);
    CHECK(st.watertight);
    CHECK(std::abs(st.signed_volume_mm3) ==
          doctest::Approx(0.11785113019775793).epsilon(1e-12));
}

TEST_CASE("revolved cylinder volume converges to pi r^2 h") {
    const Profile2D rect({{0.0, 0.0}, {40.0, 0.0}, {40.0, 50.0}, {0.0, 50.0}});
    const double analytic = std::numbers::pi * 40.0 * 40.0 * 50.0;
    double prev_err = 1.0;
    for (int n : {32, 64, 256}) {
        const TriangleMesh mesh = revolve(rect, n);
        const MeshStats st = mesh_stats(mesh, false);
        CHECK(st.watertight);
        CHECK(st.euler == 2);
        CHECK(st.genus == 0);
        // The mesh is exactly the inscribed prism.
        CHECK(st.signed_volume_mm3 ==
              doctest::Approx(ngon_area(40.0, n) * 50.0).epsilon(1e-12));
        const double err = std::abs(st.signed_volume_mm3 - analytic) / analytic;
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 0.005);  // 256 segments: about 0.01%
    CHECK(prev_err == doctest::Approx(0.00010039578385823145).epsilon(1e-9));
}

TEST_CASE("revolve collapses axis points and survives tiny segment counts") {
    const Profile2D square({{0.0, 0.0}, {10.0, 0.0}, {10.0, 10.0}, {0.0, 10.0}});
    const TriangleMesh prism = revolve(square, 3);
    const MeshStats st = mesh_stats(prism, false);
    CHECK(st.watertight);
    CHECK(st.euler == 2);
    // 3 side columns x 2 rings + 2 axis vertices.
    CHECK(st.vertex_count == 8);
    CHECK_THROWS_AS(revolve(square, 2), MeshError);
}

TEST_CASE("profile winding is normalized before revolving") {
    const Profile2D ccw({{0.0, 0.0}, {10.0, 0.0}, {10.0, 4.0}, {0.0, 4.0}});
    const Profile2D cw({{0.0, 4.0}, {10.0, 4.0}, {10.0, 0.0}, {0.0, 0.0}});
    const double va = mesh_stats(revolve(ccw, 48), false).signed_volume_mm3;
    const double vb = mesh_stats(revolve(cw, 48), false).signed_volume_mm3;
    CHECK(va > 0.0);
    CHECK(va == doctest::Approx(vb).epsilon(1e-15));
}

TEST_CASE("profiles reject negative radii and self-intersections") {
    CHECK_THROWS_AS(Profile2D({{-1.0, 0.0}, {5.0, 0.0}, {5.0, 5.0}}), GeometryError);
    CHECK_THROWS_AS(Profile2D({{0.0, 0.0}, {5.0, 5.0}, {5.0, 0.0}, {0.0, 5.0}}),
                    GeometryError);
    CHECK_THROWS_AS(Profile2D({{0.0, 0.0}, {5.0, 0.0}}), GeometryError);
}

TEST_CASE("full-circle pie is seamless; wedge volume is angle-proportional") {
    const TriangleMesh full = pie_segment(30.0, 5.0, 360.0, 256);
    const MeshStats full_st = mesh_stats(full, false);
    CHECK(full_st.watertight);
    CHECK(full_st.genus == 0);
    CHECK(full_st.signed_volume_mm3 ==
          doctest::Approx(ngon_area(30.0, 256) * 5.0).epsilon(1e-12));

    // Angles on a step boundary are exactly proportional.
    const TriangleMesh half = pie_segment(30.0, 5.0, 180.0, 256);
    const MeshStats half_st = mesh_stats(half, false);
    CHECK(half_st.watertight);
    CHECK(half_st.signed_volume_mm3 ==
          doctest::Approx(full_st.signed_volume_mm3 / 2.0).epsilon(1e-12));

    // Off-step angles stay proportional to within the last partial facet.
    const double angle = 43.65;
    const TriangleMesh wedge = pie_segment(30.0, 5.0, angle, 256);
    const MeshStats wedge_st = mesh_stats(wedge, false);
    CHECK(wedge_st.watertight);
    CHECK(wedge_st.genus == 0);
    const double ratio = wedge_st.signed_volume_mm3 / full_st.signed_volume_mm3;
    CHECK(ratio == doctest::Approx(angle / 360.0).epsilon(1e-5));
}

TEST_CASE("pie segment rejects out-of-domain parameters") {
    CHECK_THROWS_AS(pie_segment(0.0, 5.0, 90.0, 256), MeshError);
    CHECK_THROWS_AS(pie_segment(30.0, -1.0, 90.0, 256), MeshError);
    CHECK_THROWS_AS(pie_segment(30.0, 5.0, 0.0, 256), MeshError);
    CHECK_THROWS_AS(pie_segment(30.0, 5.0, 361.0, 256), MeshError);
    CHECK_THROWS_AS(pie_segment(30.0, 5.0, 90.0, 2), MeshError);
}

TEST_CASE("spiral points sit on the arc-length parameterized helix") {
    const MugSpec spec = sweep_mug_spec(12);
    const double base_z = 6.5;
    const std::vector<Vec3> pts = spiral_points(spec, base_z);
    REQUIRE(pts.size() == 12);
    const double turn_length = 251.37714328667968;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double s = (k + 1) * spec.perforation_spacing_mm;
        const double theta = 2.0 * std::numbers::pi * s / turn_length;
        CHECK(pts[k].x == doctest::Approx(40.0 * std::cos(theta)).epsilon(1e-12));
        CHECK(pts[k].y == doctest::Approx(40.0 * std::sin(theta)).epsilon(1e-12));
        CHECK(pts[k].z ==
              doctest::Approx(base_z + 2.5 + 5.0 * s / turn_length).epsilon(1e-12));
        CHECK(std::hypot(pts[k].x, pts[k].y) == doctest::Approx(40.0).epsilon(1e-12));
    }
    CHECK(spiral_points(sweep_mug_spec(0), base_z).empty());
}

TEST_CASE("each perforation raises the genus by one") {
    const Config cfg;
    for (int n : {0, 1, 3}) {
        const TriangleMesh mug = build_mug(sweep_mug_spec(n), cfg);
        const MeshStats st = mesh_stats(mug, false);
        CHECK(st.watertight);
        CHECK(st.genus == n);
        CHECK(st.euler == 2 - 2 * n);
        CHECK(st.signed_volume_mm3 > 0.0);
    }
}

TEST_CASE("perforation rejects overlapping holes") {
    const Config cfg;
    MugSpec spec = sweep_mug_spec(2);
    spec.perforation_spacing_mm = 1.0;  // two bores one millimeter apart
    CHECK_THROWS_AS(build_mug(spec, cfg), MeshError);
}

TEST_CASE("tilt cut keeps the lower part and caps the section") {
    const Profile2D rect({{0.0, 0.0}, {40.0, 0.0}, {40.0, 100.0}, {0.0, 100.0}});
    const TriangleMesh cylinder = revolve(rect, 256);

    // Symmetric cut: the oblique cap gains above y=0 what it loses below,
    // so the volume equals prism area x pivot height, exactly.
    const TriangleMesh cut = tilt_cut(cylinder, 30.0, 50.0);
    const MeshStats st = mesh_stats(cut, false);
    CHECK(st.watertight);
    CHECK(st.genus == 0);
    CHECK(st.signed_volume_mm3 ==
          doctest::Approx(ngon_area(40.0, 256) * 50.0).epsilon(1e-9));
    const double analytic = std::numbers::pi * 40.0 * 40.0 * 50.0;
    CHECK(std::abs(st.signed_volume_mm3 - analytic) / analytic < 2e-4);
}

TEST_CASE("tilt cut handles planes that miss or swallow the mesh") {
    const Profile2D rect({{0.0, 0.0}, {40.0, 0.0}, {40.0, 100.0}, {0.0, 100.0}});
    const TriangleMesh cylinder = revolve(rect, 64);
    const TriangleMesh same = tilt_cut(cylinder, 0.0, 150.0);
    CHECK(same.vertices.size() == cylinder.vertices.size());
    CHECK(same.triangles.size() == cylinder.triangles.size());
    CHECK_THROWS_AS(tilt_cut(cylinder, 0.0, -5.0), MeshError);
    CHECK_THROWS_AS(tilt_cut(TriangleMesh{}, 5.0, 0.0), MeshError);
}

TEST_CASE("tilt cut stays watertight where wall crossings are collinear") {
    // Dish cross-section whose outer wall is a straight cylinder: the cut
    // meets each planar wall facet in a straight line, producing exactly
    // collinear cap-boundary triples.  Regression for the annular cap.
    const Profile2D dish(
        {{0.0, 0.0}, {110.0, 0.0}, {110.0, 45.0}, {102.0, 45.0}, {55.0, 8.0}, {0.0, 8.0}});
    for (int n : {32, 96, 256}) {
        const TriangleMesh uncut = revolve(dish, n);
        for (double tilt : {0.0, 2.862405226111748, 9.648045316098157, 14.036243467926479}) {
            const TriangleMesh cut = tilt_cut(uncut, tilt, 33.75);
            const MeshStats st = mesh_stats(cut, false);
            CAPTURE(n);
            CAPTURE(tilt);
            CHECK(st.watertight);
            CHECK(st.genus == 0);
            CHECK(st.signed_volume_mm3 > 0.0);
        }
    }
}

TEST_CASE("deep plate volume decreases as the tilt grows") {
    const Config cfg;
    DeepPlateSpec spec;
    spec.diameter_mm = cfg.encoder.deep_plate_diameter_mm;
    double prev = 1e18;
    for (double tilt : {0.0, 2.862405226111748, 6.84277341263094, 14.036243467926479}) {
        spec.tilt_angle_deg = tilt;
        spec.slope_percent = 100.0 * std::tan(tilt * std::numbers::pi / 180.0);
        const DeepPlateBuild built = build_deep_plate(spec, cfg);
        const MeshStats st = mesh_stats(built.plate, false);
        CHECK(st.watertight);
        CHECK(st.genus == 0);
        CHECK(st.signed_volume_mm3 < prev);
        prev = st.signed_volume_mm3;
        CHECK(mesh_stats(built.uncut, false).watertight);
    }
}

TEST_CASE("jug insert occupies the encoded share of the interior") {
    const Config cfg;
    JugSpec spec;
    spec.height_mm = 90.0;
    spec.diameter_mm = 90.0;
    spec.concrete_fraction = 0.37;
    spec.concrete_sector_angle_deg = 360.0 * 0.37;
    const JugBuild built = build_jug(spec, cfg);
    REQUIRE(built.concrete.has_value());
    CHECK(mesh_stats(built.body, false).watertight);
    CHECK(mesh_stats(*built.concrete, false).watertight);
    CHECK(built.interior_volume_mm3 > 0.0);
    CHECK(built.concrete_volume_mm3 / built.interior_volume_mm3 ==
          doctest::Approx(0.37).epsilon(0.01));

    spec.concrete_fraction = 0.0;
    spec.concrete_sector_angle_deg = 0.0;
    const JugBuild empty = build_jug(spec, cfg);
    CHECK_FALSE(empty.concrete.has_value());
    CHECK(empty.concrete_volume_mm3 == 0.0);
}

TEST_CASE("suppressed sector plates are fired plain") {
    const Config cfg;
    PlateSectorSpec spec;
    spec.diameter_mm = 160.0;
    spec.fraction = 0.003;
    spec.segment_angle_deg = 0.0;
    spec.suppressed = true;
    const SectorPlateBuild built = build_sector_plate(spec, cfg);
    CHECK(mesh_stats(built.plate, false).watertight);
    CHECK_FALSE(built.concrete.has_value());

    spec.fraction = 0.12;
    spec.segment_angle_deg = 43.2;
    spec.suppressed = false;
    const SectorPlateBuild with = build_sector_plate(spec, cfg);
    REQUIRE(with.concrete.has_value());
    CHECK(mesh_stats(*with.concrete, false).watertight);
    CHECK(with.concrete_volume_mm3 > 0.0);
}

TEST_CASE("hollow wall thickness shows up in the minimum wall estimate") {
    const Profile2D hollow({{0.0, 0.0},
                            {40.0, 0.0},
                            {40.0, 30.0},
                            {35.0, 30.0},
                            {35.0, 5.0},
                            {0.0, 5.0}});
    const MeshStats st = mesh_stats(revolve(hollow, 128), true);
    CHECK(st.watertight);
    CHECK(st.min_wall_estimate_mm > 3.0);
    CHECK(st.min_wall_estimate_mm < 7.0);
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <dataware/contour.hpp>
#include <dataware/errors.hpp>
#include <dataware/geodata.hpp>
#include <dataware/geojson.hpp>
#include <dataware/raster.hpp>
#include <dataware/records.hpp>

#include "test_helpers.hpp"

using namespace dataware;

namespace {

RasterGrid ramp_grid(int ncols, int nrows, double cellsize, double base, double gx,
                     double gy) {
    RasterGrid g;
    g.ncols = ncols;
    g.nrows = nrows;
    g.xllcorner = 0.0;
    g.yllcorner = 0.0;
    g.cellsize = cellsize;
    g.values.resize(static_cast<std::size_t>(ncols) * nrows);
    for (int row = 0; row < nrows; ++row) {
        for (int col = 0; col < ncols; ++col) {
            g.value(col, row) = base + gx * g.center_x(col) + gy * g.center_y(row);
        }
    }
    return g;
}

}  // namespace

TEST_CASE("ascii grid parses headers case-insensitively and flips rows") {
    const std::string text =
        "NCOLS 3\n"
        "nrows 2\n"
        "Xllcorner 10\n"
        "yllcorner 20\n"
        "CELLSIZE 5\n"
        "NODATA_value -9999\n"
        "1 2 3\n"
        "4 5 -9999\n";
    const RasterGrid g = parse_ascii_grid(text);
    CHECK(g.ncols == 3);
    CHECK(g.nrows == 2);
    CHECK(g.xllcorner == 10.0);
    CHECK(g.yllcorner == 20.0);
    CHECK(g.cellsize == 5.0);
    REQUIRE(g.nodata.has_value());
    CHECK(*g.nodata == -9999.0);
    // File lists the top row first; row 0 is the bottom row internally.
    CHECK(g.value(0, 0) == 4.0);
    CHECK(g.value(2, 1) == 3.0);
    CHECK(g.is_nodata(2, 0));
    CHECK_FALSE(g.is_nodata(2, 1));
    CHECK(g.center_x(0) == 12.5);
    CHECK(g.center_y(1) == 27.5);
}

TEST_CASE("ascii grid round-trips exactly through the serializer") {
    RasterGrid g = ramp_grid(4, 3, 0.1, 100.0, 0.31, -0.07);
    g.xllcorner = -3.25;
    g.yllcorner = 7.5;
    g.nodata = -9999.0;
    g.value(2, 1) = -9999.0;
    g.value(0, 2) = 0.1;  // shortest round-trip must preserve this digit-for-digit
    const RasterGrid back = parse_ascii_grid(serialize_ascii_grid(g));
    CHECK(back == g);
    const std::string twice = serialize_ascii_grid(back);
    CHECK(twice == serialize_ascii_grid(g));
}

TEST_CASE("ascii grid errors carry 1-based line and column") {
    CHECK_THROWS_AS(parse_ascii_grid("ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\n1 2\n"),
                    ParseError);
    try {
        parse_ascii_grid("ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 oops\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
        CHECK(e.column() > 1);
    }
    // Value count mismatch and nonpositive cellsize are both rejected.
    CHECK_THROWS_AS(parse_ascii_grid("ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 2\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_ascii_grid("ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 0\n1\n"),
                    ParseError);
}

TEST_CASE("zonal mean matches a hand-computed rectangle") {
    RasterGrid g;
    g.ncols = 4;
    g.nrows = 3;
    g.cellsize = 1.0;
    g.values = {10, 20, 30, 40,   //
                50, 60, 70, 80,   //
                90, 100, 0, 10};  // bottom row first
    // Centers x in {0.5,1.5,2.5,3.5}, y in {0.5,1.5,2.5}.
    const Polygon2D zone({{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {0.0, 2.0}});
    const ZonalResult zr = builtup_fraction(g, zone);
    // Inside: centers (0.5,0.5),(1.5,0.5),(0.5,1.5),(1.5,1.5) -> 10,20,50,60.
    CHECK(zr.cells == 4);
    CHECK(zr.fraction == doctest::Approx((10 + 20 + 50 + 60) / 4.0 / 100.0).epsilon(1e-15));
}

TEST_CASE("zonal inclusion counts centers exactly on the zone boundary") {
    RasterGrid g;
    g.ncols = 2;
    g.nrows = 1;
    g.cellsize = 1.0;
    g.values = {40, 80};
    // Right edge passes exactly through the second center (1.5, 0.5).
    const Polygon2D zone({{0.0, 0.0}, {1.5, 0.0}, {1.5, 1.0}, {0.0, 1.0}});
    const ZonalResult zr = builtup_fraction(g, zone);
    CHECK(zr.cells == 2);
    CHECK(zr.fraction == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("zonal mean equals the brute-force loop bit for bit") {
    std::mt19937_64 rng(20260814);
    std::uniform_real_distribution<double> score(0.0, 100.0);
    for (int trial = 0; trial < 20; ++trial) {
        RasterGrid g;
        g.ncols = 17;
        g.nrows = 13;
        g.cellsize = 2.0;
        g.xllcorner = -5.0;
        g.yllcorner = 3.0;
        g.values.resize(static_cast<std::size_t>(g.ncols) * g.nrows);
        for (double& v : g.values) v = score(rng);

        // Random triangle big enough to cover some centers.
        std::uniform_real_distribution<double> px(-5.0, -5.0 + g.extent_width());
        std::uniform_real_distribution<double> py(3.0, 3.0 + g.extent_height());
        std::vector<Vec2> tri;
        do {
            tri = {{px(rng), py(rng)}, {px(rng), py(rng)}, {px(rng), py(rng)}};
        } while (std::abs(cross(tri[1] - tri[0], tri[2] - tri[0])) < 30.0);
        const Polygon2D zone(tri);

        double sum = 0.0;
        long long cells = 0;
        for (int row = 0; row < g.nrows; ++row) {
            for (int col = 0; col < g.ncols; ++col) {
                if (g.is_nodata(col, row)) continue;
                if (!zone.contains({g.center_x(col), g.center_y(row)})) continue;
                sum += g.value(col, row) / 100.0;
                ++cells;
            }
        }
        if (cells == 0) {
            CHECK_THROWS_AS(builtup_fraction(g, zone), GeometryError);
            continue;
        }
        const ZonalResult zr = builtup_fraction(g, zone);
        CHECK(zr.cells == cells);
        CHECK(zr.fraction == sum / static_cast<double>(cells));  // exact
    }
}

TEST_CASE("zonal rejects empty zones and out-of-range scores") {
    RasterGrid g;
    g.ncols = 2;
    g.nrows = 2;
    g.cellsize = 1.0;
    g.values = {10, 20, 30, 40};
    const Polygon2D far_away({{50.0, 50.0}, {51.0, 50.0}, {51.0, 51.0}});
    CHECK_THROWS_AS(builtup_fraction(g, far_away), GeometryError);
    g.value(0, 0) = 150.0;
    const Polygon2D all({{0.0, 0.0}, {2.0, 0.0}, {2.0, 2.0}, {0.0, 2.0}});
    CHECK_THROWS_AS(builtup_fraction(g, all), GeometryError);
}

TEST_CASE("profile sampling reproduces an affine surface exactly") {
    const RasterGrid g = ramp_grid(40, 30, 50.0, 100.0, 0.05, 0.12);
    const Vec2 a{200.0, 300.0};
    const Vec2 b{1700.0, 1200.0};
    const ElevationProfile prof = extract_profile(g, a, b, 33);
    REQUIRE(prof.samples.size() == 33);
    CHECK(prof.samples.front().distance == 0.0);
    const double seg_len = distance(a, b);
    CHECK(prof.samples.back().distance == doctest::Approx(seg_len).epsilon(1e-12));
    for (std::size_t i = 0; i < prof.samples.size(); ++i) {
        const double t = prof.samples[i].distance / seg_len;
        const Vec2 p = a + (b - a) * t;
        const double expect = 100.0 + 0.05 * p.x + 0.12 * p.y;
        CHECK(prof.samples[i].elevation == doctest::Approx(expect).epsilon(1e-12));
        if (i > 0) CHECK(prof.samples[i].distance > prof.samples[i - 1].distance);
    }
}

TEST_CASE("profile sampling renormalizes around nodata neighbors") {
    RasterGrid g = ramp_grid(10, 10, 1.0, 7.0, 0.0, 0.0);  // constant 7
    g.nodata = -1.0;
    g.value(4, 4) = -1.0;
    g.value(5, 5) = -1.0;
    const ElevationProfile prof = extract_profile(g, {1.0, 1.0}, {8.5, 8.5}, 64);
    for (const ProfileSample& s : prof.samples) CHECK(s.elevation == doctest::Approx(7.0).epsilon(1e-12));

    // All four neighbors missing is an error.
    for (int col = 3; col <= 6; ++col)
        for (int row = 3; row <= 6; ++row) g.value(col, row) = -1.0;
    CHECK_THROWS_AS(extract_profile(g, {4.5, 4.5}, {5.2, 5.2}, 4), GeometryError);
}

TEST_CASE("profile sampling rejects degenerate and out-of-extent segments") {
    const RasterGrid g = ramp_grid(10, 10, 1.0, 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(extract_profile(g, {2.0, 2.0}, {2.0, 2.0}, 8), GeometryError);
    CHECK_THROWS_AS(extract_profile(g, {-1.0, 2.0}, {5.0, 2.0}, 8), GeometryError);
    CHECK_THROWS_AS(extract_profile(g, {2.0, 2.0}, {5.0, 999.0}, 8), GeometryError);
}

TEST_CASE("slope fits the least-squares line of the samples") {
    ElevationProfile prof({{0.0, 10.0}, {100.0, 23.0}});
    CHECK(slope_percent(prof) == doctest::Approx(13.0).epsilon(1e-12));
    // Downhill reports magnitude.
    ElevationProfile down({{0.0, 50.0}, {200.0, 10.0}});
    CHECK(slope_percent(down) == doctest::Approx(20.0).epsilon(1e-12));
    // A bump that is symmetric about the midpoint is orthogonal to the
    // centered distance, so it cannot move the fitted slope.
    ElevationProfile kinked({{0.0, 0.0}, {50.0, 5.0 + 1.0}, {100.0, 10.0}, {150.0, 15.0 + 1.0}, {200.0, 20.0}});
    CHECK(slope_percent(kinked) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("contour crosses a linear ramp at the interpolated abscissa") {
    // Centers at x = 5, 15, 25, 35, 45 with values 0..4: level 1.3 crosses x = 18.
    RasterGrid g;
    g.ncols = 5;
    g.nrows = 4;
    g.cellsize = 10.0;
    g.values.resize(20);
    for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 5; ++col) g.value(col, row) = col;
    const std::vector<Polygon2D> rings = extract_contour(g, 1.3);
    REQUIRE(rings.size() == 1);
    const Polygon2D& ring = rings.front();
    CHECK(ring.signed_area() > 0.0);  // counter-clockwise
    CHECK_FALSE(ring.self_intersects());
    double max_x = -1e30;
    for (const Vec2& v : ring.vertices()) max_x = std::max(max_x, v.x);
    CHECK(max_x == doctest::Approx(18.0).epsilon(1e-12));
    CHECK(ring.contains({6.0, 20.0}));        // below-level side enclosed
    CHECK_FALSE(ring.contains({30.0, 20.0}));  // above-level side excluded
}

TEST_CASE("contour rings stay simple on a saddle and enclose each low center once") {
    RasterGrid g;
    g.ncols = 3;
    g.nrows = 3;
    g.cellsize = 1.0;
    g.values = {0, 9, 0,  //
                9, 0, 9,  //
                0, 9, 0};
    const std::vector<Polygon2D> rings = extract_contour(g, 4.5);
    CHECK(!rings.empty());
    for (const Polygon2D& ring : rings) {
        CHECK(ring.signed_area() > 0.0);
        CHECK_FALSE(ring.self_intersects());
    }
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
            if (g.value(col, row) > 4.5) continue;
            const Vec2 c{g.center_x(col), g.center_y(row)};
            int containing = 0;
            for (const Polygon2D& ring : rings) containing += ring.contains(c) ? 1 : 0;
            CHECK(containing == 1);
        }
    }
}

TEST_CASE("contour outside the value range is empty; all-nodata is an error") {
    RasterGrid g = ramp_grid(4, 4, 1.0, 0.0, 1.0, 0.0);
    CHECK(extract_contour(g, 99.0).empty());
    g.nodata = -7.0;
    for (double& v : g.values) v = -7.0;
    CHECK_THROWS_AS(extract_contour(g, 1.0), GeometryError);
}

TEST_CASE("scaled outlines center in the frame and report fit") {
    // 2240 m wide, 1120 m tall at 1:22,400 -> 100 mm x 50 mm.
    const Polyline2D line({{1000.0, 500.0}, {3240.0, 500.0}, {3240.0, 1620.0}});
    const ScaledOutline so = scale_polyline(line, 22400.0, {260.0, 260.0});
    CHECK(so.width_mm == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(so.height_mm == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(so.fits_frame);
    BBox2 box = so.outline.bounds();
    CHECK(box.center().x == doctest::Approx(130.0).epsilon(1e-12));
    CHECK(box.center().y == doctest::Approx(130.0).epsilon(1e-12));

    const ScaledOutline too_big = scale_polyline(line, 224.0, {260.0, 260.0});
    CHECK_FALSE(too_big.fits_frame);

    CHECK_THROWS_AS(scale_polyline(line, 0.0, {260.0, 260.0}), GeometryError);
    const Polyline2D degenerate({{5.0, 5.0}, {5.0, 5.0}});
    CHECK_THROWS_AS(scale_polyline(degenerate, 22400.0, {260.0, 260.0}), GeometryError);
}

TEST_CASE("geojson features parse polygons and linestrings with names") {
    const std::string text = R"({
      "type": "FeatureCollection",
      "features": [
        {"type": "Feature", "properties": {"name": "Zone A"},
         "geometry": {"type": "Polygon", "coordinates": [[[0,0],[4,0],[4,3],[0,3],[0,0]]]}},
        {"type": "Feature", "properties": {"name": "Line B"},
         "geometry": {"type": "LineString", "coordinates": [[1,1],[2,2],[3,1]]}}
      ]})";
    const std::vector<GeoFeature> feats = parse_geojson(text);
    REQUIRE(feats.size() == 2);
    CHECK(feats[0].name == "Zone A");
    REQUIRE(feats[0].is_polygon());
    CHECK(feats[0].polygon().size() == 4);  // closing vertex stripped
    CHECK(feats[0].polygon().area() == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(feats[1].name == "Line B");
    REQUIRE_FALSE(feats[1].is_polygon());
    CHECK(feats[1].polyline().points.size() == 3);
}

TEST_CASE("geojson rejects unsupported geometries, holes, and bad json") {
    CHECK_THROWS_AS(parse_geojson("{"), ParseError);
    CHECK_THROWS_AS(parse_geojson(R"({"type":"FeatureCollection","features":[
        {"type":"Feature","properties":{"name":"M"},
         "geometry":{"type":"MultiPolygon","coordinates":[]}}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_geojson(R"({"type":"FeatureCollection","features":[
        {"type":"Feature","properties":{"name":"H"},
         "geometry":{"type":"Polygon","coordinates":[
            [[0,0],[9,0],[9,9],[0,9],[0,0]],
            [[3,3],[4,3],[4,4],[3,4],[3,3]]]}}]})"),
                    ParseError);
}

TEST_CASE("contour rings serialize to parseable geojson") {
    const RasterGrid g = ramp_grid(6, 6, 1.0, 0.0, 1.0, 0.0);
    const std::vector<Polygon2D> rings = extract_contour(g, 2.6);
    REQUIRE(!rings.empty());
    const std::string out = write_contours_geojson(rings, 2.6);
    const std::vector<GeoFeature> back = parse_geojson(out);
    CHECK(back.size() == rings.size());
    CHECK(write_contours_geojson(rings, 2.6) == out);  // deterministic
}

TEST_CASE("records csv accepts comments, any column order, optional flag") {
    const std::string text =
        "# survey export\n"
        "\n"
        "coastline_length_m,name,reedbed_length_m,reedbed_cuts,avg_cut_distance_m,"
        "artificial_shoreline_m,builtup_fraction,slope_percent\n"
        "4000,Alpha,2500,10,180,1000,0.12,9\n"
        "3000,Beta,1200,0,0,600,0.05,4\n";
    const std::vector<MunicipalityRecord> recs = parse_records_csv(text);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].name == "Alpha");
    CHECK(recs[0].coastline_length_m == 4000.0);
    CHECK(recs[0].reedbed_cuts == 10);
    CHECK_FALSE(recs[0].reconstructed);
    CHECK(recs[1].reedbed_cuts == 0);

    const std::string with_flag =
        "name,reedbed_length_m,reedbed_cuts,avg_cut_distance_m,coastline_length_m,"
        "artificial_shoreline_m,builtup_fraction,slope_percent,reconstructed\n"
        "Gamma,900,2,150,2000,0,0.01,3,true\n";
    CHECK(parse_records_csv(with_flag).front().reconstructed);
}

TEST_CASE("records csv reports the offending line") {
    const std::string header =
        "name,reedbed_length_m,reedbed_cuts,avg_cut_distance_m,coastline_length_m,"
        "artificial_shoreline_m,builtup_fraction,slope_percent\n";
    try {
        parse_records_csv(header + "Alpha,xx,10,180,4000,1000,0.12,9\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_records_csv(header + "Alpha,2500,10,180,4000,1000,0.12\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_records_csv("name,slope_percent\nA,9\n"), ParseError);
    CHECK_THROWS_AS(parse_records_csv(""), ParseError);
}

TEST_CASE("record validation names the first violated invariant") {
    using testutil::sample_record;
    CHECK_NOTHROW(sample_record().validate());
    auto bad = sample_record();
    bad.artificial_shoreline_m = bad.coastline_length_m + 1.0;
    CHECK_THROWS_AS(bad.validate(), EncodeError);
    bad = sample_record();
    bad.builtup_fraction = 1.5;
    CHECK_THROWS_AS(bad.validate(), EncodeError);
    bad = sample_record();
    bad.reedbed_cuts = -2;
    CHECK_THROWS_AS(bad.validate(), EncodeError);
    bad = sample_record();
    bad.name.clear();
    CHECK_THROWS_AS(bad.validate(), EncodeError);
}

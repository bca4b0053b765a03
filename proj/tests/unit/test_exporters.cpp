#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include <dataware/errors.hpp>
#include <dataware/exporters.hpp>
#include <dataware/mesher.hpp>

#include "test_helpers.hpp"

using namespace dataware;
using testutil::make_box;

namespace {

std::uint32_t read_u32(const std::string& bytes, std::size_t off) {
    std::uint32_t v = 0;
    std::memcpy(&v, bytes.data() + off, 4);
    return v;
}

float read_f32(const std::string& bytes, std::size_t off) {
    float v = 0;
    std::memcpy(&v, bytes.data() + off, 4);
    return v;
}

}  // namespace

TEST_CASE("binary stl layout: header text, triangle count, zero attributes") {
    const TriangleMesh box = make_box(10.0, 10.0, 10.0);
    const std::string bytes = stl_bytes(box);
    REQUIRE(bytes.size() == 84 + 50 * box.triangles.size());
    CHECK(bytes.substr(0, 40).find("dataware binary STL (units: millimeters)") == 0);
    CHECK(read_u32(bytes, 80) == box.triangles.size());
    for (std::size_t t = 0; t < box.triangles.size(); ++t) {
        const std::size_t attr_off = 84 + 50 * t + 48;
        CHECK(bytes[attr_off] == '\0');
        CHECK(bytes[attr_off + 1] == '\0');
    }
}

TEST_CASE("facet normals are unit outward vectors; degenerate facets get zero") {
    TriangleMesh quad;
    const auto a = quad.add_vertex({0.0, 0.0, 0.0});
    const auto b = quad.add_vertex({1.0, 0.0, 0.0});
    const auto c = quad.add_vertex({1.0, 1.0, 0.0});
    quad.add_triangle(a, b, c);  // normal +z
    const std::string bytes = stl_bytes(quad);
    CHECK(read_f32(bytes, 84 + 0) == 0.0f);
    CHECK(read_f32(bytes, 84 + 4) == 0.0f);
    CHECK(read_f32(bytes, 84 + 8) == 1.0f);

    TriangleMesh sliver;
    const auto p = sliver.add_vertex({0.0, 0.0, 0.0});
    const auto q = sliver.add_vertex({1.0, 0.0, 0.0});
    const auto r = sliver.add_vertex({2.0, 0.0, 0.0});  // collinear
    sliver.add_triangle(p, q, r);
    const std::string degen = stl_bytes(sliver);
    CHECK(read_f32(degen, 84 + 0) == 0.0f);
    CHECK(read_f32(degen, 84 + 4) == 0.0f);
    CHECK(read_f32(degen, 84 + 8) == 0.0f);
}

TEST_CASE("stl export, parse, and re-export byte-identically") {
    const Profile2D prof({{0.0, 0.0}, {31.7, 0.0}, {31.7, 12.3}, {25.0, 12.3}, {25.0, 4.0},
                          {0.0, 4.0}});
    const TriangleMesh mesh = revolve(prof, 96);
    const std::string first = stl_bytes(mesh);
    const TriangleMesh parsed = parse_stl(first, "round-trip");
    CHECK(parsed.triangles.size() == mesh.triangles.size());
    const std::string second = stl_bytes(parsed);
    CHECK(second == first);
}

TEST_CASE("stl import merges vertices that share float bit patterns") {
    const TriangleMesh box = make_box(5.0, 5.0, 5.0);
    const TriangleMesh back = parse_stl(stl_bytes(box), "box");
    CHECK(back.vertices.size() == 8);  // not 36
    CHECK(back.triangles.size() == 12);
    CHECK(mesh_stats(back, false).watertight);
}

TEST_CASE("stl parser rejects truncated and mis-sized buffers") {
    const std::string good = stl_bytes(make_box(1.0, 1.0, 1.0));
    CHECK_THROWS_AS(parse_stl(good.substr(0, 60), "short"), ParseError);
    CHECK_THROWS_AS(parse_stl(good.substr(0, good.size() - 7), "chopped"), ParseError);
    try {
        parse_stl(good + "xx", "padded");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("size mismatch") != std::string::npos);
    }
}

TEST_CASE("stl files write and read through the filesystem helpers") {
    testutil::TempDir tmp;
    const TriangleMesh box = make_box(3.0, 4.0, 5.0);
    const auto path = tmp.path / "box.stl";
    export_stl(box, path);
    const TriangleMesh back = import_stl(path);
    CHECK(stl_bytes(back) == stl_bytes(box));
    CHECK_THROWS_AS(import_stl(tmp.path / "missing.stl"), ParseError);
}

TEST_CASE("svg outlines flip y into the frame and trim trailing zeros") {
    const std::vector<Vec2> outline = {{10.5, 20.25}, {50.0, 40.0}};
    const std::string svg = svg_outline(outline, 260.0, 260.0);
    CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(svg.find("stroke=\"#888888\"") != std::string::npos);  // frame
    CHECK(svg.find("stroke=\"#000000\"") != std::string::npos);  // outline
    CHECK(svg.find("10.5,239.75") != std::string::npos);
    CHECK(svg.find("50,220") != std::string::npos);
    CHECK(svg.find("1.5000") == std::string::npos);
    // Deterministic: same input, same bytes.
    CHECK(svg_outline(outline, 260.0, 260.0) == svg);
}

TEST_CASE("atomic writes land completely and leave no temp files") {
    testutil::TempDir tmp;
    const auto path = tmp.path / "nested.txt";
    write_file_atomic(path, "payload");
    CHECK(testutil::read_file(path) == "payload");
    write_file_atomic(path, "replacement");
    CHECK(testutil::read_file(path) == "replacement");
    int entries = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(tmp.path)) {
        ++entries;
    }
    CHECK(entries == 1);
}

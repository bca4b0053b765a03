#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dataware/geometry.hpp"

namespace dataware {

/// Indexed triangle mesh in millimeters.  Triangles are counter-clockwise
/// when viewed from outside the solid.
struct TriangleMesh {
    std::vector<Vec3> vertices;
    std::vector<std::array<std::uint32_t, 3>> triangles;

    std::uint32_t add_vertex(Vec3 p) {
        vertices.push_back(p);
        return static_cast<std::uint32_t>(vertices.size() - 1);
    }
    void add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        triangles.push_back({a, b, c});
    }
    void append(const TriangleMesh& other);  ///< concatenates, reindexing `other`
    void translate(Vec3 offset);

    BBox3 bounds() const;
};

struct MeshStats {
    std::int64_t vertex_count = 0;
    std::int64_t edge_count = 0;     ///< unique undirected edges
    std::int64_t triangle_count = 0;
    std::int64_t euler = 0;          ///< V - E + F
    int genus = -1;                  ///< (2 - euler) / 2 when watertight, else -1
    bool watertight = false;  ///< every edge in exactly 2 opposite-orientation triangles
    double signed_volume_mm3 = 0.0;  ///< divergence theorem; positive = outward winding
    double min_wall_estimate_mm = 0.0;  ///< sampled inward ray casts; 0 when unknown
};

/// Topology and volume diagnostics.  `estimate_wall` toggles the sampled
/// minimum-wall-thickness ray casting (the only non-O(n) part).
MeshStats mesh_stats(const TriangleMesh& mesh, bool estimate_wall = true);

}  // namespace dataware

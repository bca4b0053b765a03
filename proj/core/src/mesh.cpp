#include "dataware/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace dataware {

void TriangleMesh::append(const TriangleMesh& other) {
    const std::uint32_t base = static_cast<std::uint32_t>(vertices.size());
    vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
    triangles.reserve(triangles.size() + other.triangles.size());
    for (const auto& t : other.triangles) {
        triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
    }
}

void TriangleMesh::translate(Vec3 offset) {
    for (Vec3& v : vertices) v = v + offset;
}

BBox3 TriangleMesh::bounds() const {
    BBox3 box;
    for (const Vec3& v : vertices) box.expand(v);
    return box;
}

namespace {

struct EdgeUse {
    int total = 0;
    int forward = 0;   // uses as (lo, hi)
    int backward = 0;  // uses as (hi, lo)
};

struct EdgeKeyHash {
    std::size_t operator()(std::uint64_t k) const noexcept {
        // splitmix64 finalizer
        k += 0x9e3779b97f4a7c15ULL;
        k = (k ^ (k >> 30)) * 0xbf58476d1ce4e5b9ULL;
        k = (k ^ (k >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(k ^ (k >> 31));
    }
};

// Möller–Trumbore ray/triangle intersection; returns t >= 0 or a negative
// value when there is no hit.
double ray_triangle(Vec3 origin, Vec3 dir, Vec3 a, Vec3 b, Vec3 c) {
    constexpr double eps = 1e-12;
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 p = cross(dir, e2);
    const double det = dot(e1, p);
    if (std::abs(det) < eps) return -1.0;
    const double inv_det = 1.0 / det;
    const Vec3 s = origin - a;
    const double u = dot(s, p) * inv_det;
    if (u < -1e-9 || u > 1.0 + 1e-9) return -1.0;
    const Vec3 q = cross(s, e1);
    const double v = dot(dir, q) * inv_det;
    if (v < -1e-9 || u + v > 1.0 + 1e-9) return -1.0;
    return dot(e2, q) * inv_det;
}

double estimate_min_wall(const TriangleMesh& mesh) {
    if (mesh.triangles.empty()) return 0.0;
    // Deterministic subsample: cast an inward ray from the centroid of every
    // k-th triangle and take the closest opposing surface.
    constexpr std::size_t target_samples = 32;
    const std::size_t stride = std::max<std::size_t>(1, mesh.triangles.size() / target_samples);
    double min_wall = std::numeric_limits<double>::infinity();
    for (std::size_t ti = 0; ti < mesh.triangles.size(); ti += stride) {
        const auto& t = mesh.triangles[ti];
        const Vec3 a = mesh.vertices[t[0]];
        const Vec3 b = mesh.vertices[t[1]];
        const Vec3 c = mesh.vertices[t[2]];
        Vec3 n = cross(b - a, c - a);
        const double len = n.norm();
        if (len < 1e-12) continue;
        n = n * (1.0 / len);
        const Vec3 centroid = (a + b + c) * (1.0 / 3.0);
        const Vec3 dir = n * -1.0;  // inward for outward-wound triangles
        const double offset = 1e-6;
        const Vec3 origin = centroid + dir * offset;
        for (std::size_t tj = 0; tj < mesh.triangles.size(); ++tj) {
            if (tj == ti) continue;
            const auto& u = mesh.triangles[tj];
            const double hit = ray_triangle(origin, dir, mesh.vertices[u[0]],
                                            mesh.vertices[u[1]], mesh.vertices[u[2]]);
            if (hit > 1e-9) min_wall = std::min(min_wall, hit + offset);
        }
    }
    return std::isfinite(min_wall) ? min_wall : 0.0;
}

}  // namespace

MeshStats mesh_stats(const TriangleMesh& mesh, bool estimate_wall) {
    MeshStats stats;
    stats.vertex_count = static_cast<std::int64_t>(mesh.vertices.size());
    stats.triangle_count = static_cast<std::int64_t>(mesh.triangles.size());

    std::unordered_map<std::uint64_t, EdgeUse, EdgeKeyHash> edges;
    edges.reserve(mesh.triangles.size() * 2);
    bool degenerate = false;
    double volume6 = 0.0;
    for (const auto& t : mesh.triangles) {
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            degenerate = true;
            continue;
        }
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t from = t[k];
            const std::uint32_t to = t[(k + 1) % 3];
            const std::uint32_t lo = std::min(from, to);
            const std::uint32_t hi = std::max(from, to);
            EdgeUse& use = edges[(static_cast<std::uint64_t>(lo) << 32) | hi];
            ++use.total;
            if (from == lo) {
                ++use.forward;
            } else {
                ++use.backward;
            }
        }
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        volume6 += dot(a, cross(b, c));
    }
    stats.edge_count = static_cast<std::int64_t>(edges.size());
    stats.euler = stats.vertex_count - stats.edge_count + stats.triangle_count;
    stats.signed_volume_mm3 = volume6 / 6.0;

    stats.watertight = !degenerate && !mesh.triangles.empty();
    for (const auto& [key, use] : edges) {
        if (use.total != 2 || use.forward != 1 || use.backward != 1) {
            stats.watertight = false;
            break;
        }
    }
    if (stats.watertight && (2 - stats.euler) % 2 == 0 && stats.euler <= 2) {
        stats.genus = static_cast<int>((2 - stats.euler) / 2);
    }
    if (estimate_wall) {
        stats.min_wall_estimate_mm = estimate_min_wall(mesh);
    }
    return stats;
}

}  // namespace dataware

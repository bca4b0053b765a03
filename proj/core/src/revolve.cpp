#include <algorithm>
#include <cmath>
#include <numbers>

#include "dataware/errors.hpp"
#include "dataware/mesher.hpp"

namespace dataware {

Profile2D::Profile2D(std::vector<Vec2> points) : points_(std::move(points)) {
    if (points_.size() >= 2 && points_.front() == points_.back()) {
        points_.pop_back();
    }
    if (points_.size() < 3) {
        throw GeometryError("profile needs at least 3 vertices");
    }
    double area2 = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Vec2 a = points_[i];
        const Vec2 b = points_[(i + 1) % points_.size()];
        if (a.x < 0.0) {
            throw GeometryError("profile radius must be >= 0 everywhere");
        }
        area2 += cross(a, b);
    }
    if (area2 == 0.0) {
        throw GeometryError("profile has zero area");
    }
    if (area2 < 0.0) {
        std::reverse(points_.begin(), points_.end());
    }
    // Self-intersection check (profiles are short; O(n^2) is fine).
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(points_[i], points_[(i + 1) % n], points_[j],
                                   points_[(j + 1) % n])) {
                throw GeometryError("profile is self-intersecting");
            }
        }
    }
}

TriangleMesh revolve(const Profile2D& profile, int segments) {
    if (segments < 3) {
        throw MeshError("revolve needs at least 3 segments");
    }
    const std::vector<Vec2>& pts = profile.points();
    const std::size_t m = pts.size();
    const int n = segments;

    TriangleMesh mesh;
    // Per profile point: either one axis vertex (r == 0) or a ring of n.
    std::vector<std::uint32_t> first_index(m);
    std::vector<bool> on_axis(m);
    for (std::size_t i = 0; i < m; ++i) {
        on_axis[i] = pts[i].x == 0.0;
        if (on_axis[i]) {
            first_index[i] = mesh.add_vertex({0.0, 0.0, pts[i].y});
        } else {
            first_index[i] = static_cast<std::uint32_t>(mesh.vertices.size());
            for (int k = 0; k < n; ++k) {
                const double theta = 2.0 * std::numbers::pi * k / n;
                mesh.add_vertex({pts[i].x * std::cos(theta), pts[i].x * std::sin(theta),
                                 pts[i].y});
            }
        }
    }
    auto ring_vertex = [&](std::size_t i, int k) {
        return first_index[i] + static_cast<std::uint32_t>(k % n);
    };

    // Each directed profile edge (CCW in the (r, z) half-plane) sweeps a
    // band whose triangles wind outward.
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = (i + 1) % m;
        if (pts[i] == pts[j]) continue;
        if (on_axis[i] && on_axis[j]) continue;  // edge on the axis: no surface
        for (int k = 0; k < n; ++k) {
            const int k1 = k + 1;
            if (on_axis[i]) {
                mesh.add_triangle(first_index[i], ring_vertex(j, k1), ring_vertex(j, k));
            } else if (on_axis[j]) {
                mesh.add_triangle(ring_vertex(i, k), ring_vertex(i, k1), first_index[j]);
            } else {
                mesh.add_triangle(ring_vertex(i, k), ring_vertex(i, k1), ring_vertex(j, k1));
                mesh.add_triangle(ring_vertex(i, k), ring_vertex(j, k1), ring_vertex(j, k));
            }
        }
    }
    return mesh;
}

}  // namespace dataware

#include <cmath>
#include <numbers>

#include "dataware/errors.hpp"
#include "dataware/mesher.hpp"

namespace dataware {

TriangleMesh pie_segment(double outer_radius, double thickness, double angle_deg,
                         int segments_full_circle) {
    if (!(outer_radius > 0.0) || !(thickness > 0.0)) {
        throw MeshError("pie segment needs positive radius and thickness");
    }
    if (!(angle_deg > 0.0) || angle_deg > 360.0 + 1e-9) {
        throw MeshError("pie segment angle must be in (0, 360] degrees");
    }
    if (segments_full_circle < 3) {
        throw MeshError("pie segment needs at least 3 segments per full circle");
    }

    const double r = outer_radius;
    const double t = thickness;
    const bool full_circle = angle_deg >= 360.0 - 1e-9;
    const double step_deg = 360.0 / segments_full_circle;

    TriangleMesh mesh;
    const std::uint32_t axis_b = mesh.add_vertex({0.0, 0.0, 0.0});
    const std::uint32_t axis_t = mesh.add_vertex({0.0, 0.0, t});

    if (full_circle) {
        // Seamless disc: shared angular step, no seam walls.
        const int n = segments_full_circle;
        std::vector<std::uint32_t> bottom(n), top(n);
        for (int k = 0; k < n; ++k) {
            const double a = 2.0 * std::numbers::pi * k / n;
            bottom[k] = mesh.add_vertex({r * std::cos(a), r * std::sin(a), 0.0});
            top[k] = mesh.add_vertex({r * std::cos(a), r * std::sin(a), t});
        }
        for (int k = 0; k < n; ++k) {
            const int k1 = (k + 1) % n;
            mesh.add_triangle(axis_b, bottom[k1], bottom[k]);
            mesh.add_triangle(axis_t, top[k], top[k1]);
            mesh.add_triangle(bottom[k], bottom[k1], top[k1]);
            mesh.add_triangle(bottom[k], top[k1], top[k]);
        }
        return mesh;
    }

    // Wedge: full steps plus one (possibly partial) final step, so the
    // sector stays angle-proportional to the full-circle tessellation.
    const int full_steps = static_cast<int>(std::floor(angle_deg / step_deg + 1e-9));
    const int arcs = (full_steps * step_deg >= angle_deg - 1e-9) ? full_steps : full_steps + 1;
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(arcs) + 1);
    for (int j = 0; j <= arcs; ++j) {
        angles.push_back(std::min(j * step_deg, angle_deg));
    }
    angles.back() = angle_deg;

    std::vector<std::uint32_t> bottom, top;
    for (double deg : angles) {
        const double a = deg * std::numbers::pi / 180.0;
        bottom.push_back(mesh.add_vertex({r * std::cos(a), r * std::sin(a), 0.0}));
        top.push_back(mesh.add_vertex({r * std::cos(a), r * std::sin(a), t}));
    }
    const std::size_t arc_count = angles.size() - 1;
    for (std::size_t j = 0; j < arc_count; ++j) {
        mesh.add_triangle(axis_b, bottom[j + 1], bottom[j]);
        mesh.add_triangle(axis_t, top[j], top[j + 1]);
        mesh.add_triangle(bottom[j], bottom[j + 1], top[j + 1]);
        mesh.add_triangle(bottom[j], top[j + 1], top[j]);
    }
    // Seam wall at angle 0 (faces -tangential) ...
    mesh.add_triangle(axis_b, bottom.front(), top.front());
    mesh.add_triangle(axis_b, top.front(), axis_t);
    // ... and at angle_deg (faces +tangential).
    mesh.add_triangle(axis_b, top.back(), bottom.back());
    mesh.add_triangle(axis_b, axis_t, top.back());
    return mesh;
}

}  // namespace dataware

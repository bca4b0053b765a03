#pragma once

#include <span>
#include <vector>

#include "dataware/encoder.hpp"
#include "dataware/geometry.hpp"
#include "dataware/mesh.hpp"

namespace dataware {

/// Closed cross-section of a solid of revolution in the (r, z) half-plane.
/// Construction validates r >= 0, at least 3 vertices, nonzero area, no
/// self-intersection, and normalizes the winding to counter-clockwise.
class Profile2D {
public:
    explicit Profile2D(std::vector<Vec2> points);

    const std::vector<Vec2>& points() const noexcept { return points_; }

private:
    std::vector<Vec2> points_;
};

/// Revolves the profile around the z axis into a closed manifold mesh.
/// Vertices with r == 0 collapse onto shared axis vertices.  `segments`
/// is the number of angular steps (>= 3).
TriangleMesh revolve(const Profile2D& profile, int segments);

/// Closed pie-sector solid: radius x thickness disc sector spanning
/// `angle_deg` degrees from angle 0, counter-clockwise, based at z = 0.
/// A full 360° yields a seamless disc with no interior seam faces.  The
/// angular step equals a full circle divided into `segments_full_circle`
/// steps, so sector volumes stay exactly proportional to the angle.
TriangleMesh pie_segment(double outer_radius, double thickness, double angle_deg,
                         int segments_full_circle);

/// Perforation centers along the mug's spiral: points on the helix of
/// radius diameter/2 and pitch p starting at z = base_z + p/2, the k-th
/// point at arc length (k+1) * spacing.
std::vector<Vec3> spiral_points(const MugSpec& spec, double base_z = 0.0);

/// Cuts through-wall tunnels at `centers` (which must lie on a revolved
/// cylindrical wall) of the given radius, stitching each hole ring to the
/// wall explicitly.  The result stays closed and orientable; genus grows
/// by one per hole.  Throws MeshError for overlapping holes (naming the
/// pair), holes off the wall, or holes too close to a wall boundary.
TriangleMesh perforate(const TriangleMesh& mesh, std::span<const Vec3> centers,
                       double radius);

/// Keeps the part of the mesh below the plane through (0, 0, pivot_z)
/// tilted by tilt_deg about the x axis, and triangulates the cut face.
/// Throws MeshError when nothing remains.
TriangleMesh tilt_cut(const TriangleMesh& mesh, double tilt_deg, double pivot_z);

}  // namespace dataware

#include <cmath>
#include <vector>

#include "dataware/errors.hpp"
#include "dataware/vessels.hpp"

namespace dataware {

namespace {

// Hollow open-top cylinder: outer radius r, wall/floor thickness t,
// outer height h.  The cavity spans z in [t, h] with radius r - t.
Profile2D hollow_cylinder_profile(double r, double t, double h) {
    return Profile2D{{{0.0, 0.0},
                      {r, 0.0},
                      {r, h},
                      {r - t, h},
                      {r - t, t},
                      {0.0, t}}};
}

}  // namespace

TriangleMesh build_mug(const MugSpec& spec, const Config& cfg) {
    const double r = spec.diameter_mm / 2.0;
    const double t = cfg.mesh.wall_thickness_mm;
    const double p = spec.pitch_mm;
    if (r <= t) {
        throw MeshError("mug wall thickness leaves no cavity");
    }
    // One pitch of clearance below the first hole and above the last.
    const double total_h = spec.height_mm + t + 2.0 * p;
    TriangleMesh body =
        revolve(hollow_cylinder_profile(r, t, total_h), cfg.mesh.revolve_segments);
    const std::vector<Vec3> centers = spiral_points(spec, t + p / 2.0);
    if (centers.empty()) return body;
    return perforate(body, centers, cfg.encoder.perforation_radius_mm);
}

JugBuild build_jug(const JugSpec& spec, const Config& cfg) {
    const double r = spec.diameter_mm / 2.0;
    const double t = cfg.mesh.wall_thickness_mm;
    const double h = spec.height_mm;
    if (r <= t) {
        throw MeshError("jug wall thickness leaves no cavity");
    }
    if (h <= 0.0) {
        throw MeshError("jug interior height must be positive");
    }
    JugBuild out;
    out.body = revolve(hollow_cylinder_profile(r, t, h + t), cfg.mesh.revolve_segments);

    // Measure capacity on a mesh tessellated exactly like the insert so the
    // polygonal-area factor cancels out of the volume ratio.
    TriangleMesh interior =
        pie_segment(r - t, h, 360.0, cfg.mesh.revolve_segments);
    out.interior_volume_mm3 = mesh_stats(interior, false).signed_volume_mm3;

    if (spec.concrete_sector_angle_deg > 0.0) {
        TriangleMesh insert = pie_segment(r - t, h, spec.concrete_sector_angle_deg,
                                          cfg.mesh.revolve_segments);
        insert.translate({0.0, 0.0, t});
        out.concrete_volume_mm3 = mesh_stats(insert, false).signed_volume_mm3;
        out.concrete = std::move(insert);
    }
    return out;
}

DeepPlateBuild build_deep_plate(const DeepPlateSpec& spec, const Config& cfg) {
    const double r = spec.diameter_mm / 2.0;
    const double depth = cfg.mesh.deep_plate_depth_mm;
    const double base = cfg.mesh.deep_plate_base_mm;
    const double rim_w = base;            // rim land as wide as the base is thick
    const double floor_r = 0.25 * spec.diameter_mm;  // flat landing radius
    if (floor_r >= r - rim_w) {
        throw MeshError("deep plate rim leaves no bowl surface");
    }
    Profile2D profile{{{0.0, 0.0},
                       {r, 0.0},
                       {r, depth},
                       {r - rim_w, depth},
                       {floor_r, base},
                       {0.0, base}}};
    DeepPlateBuild out;
    out.uncut = revolve(profile, cfg.mesh.revolve_segments);
    out.plate = tilt_cut(out.uncut, spec.tilt_angle_deg,
                         cfg.mesh.deep_plate_pivot_fraction * depth);
    return out;
}

SectorPlateBuild build_sector_plate(const PlateSectorSpec& spec, const Config& cfg) {
    const double r = spec.diameter_mm / 2.0;
    const double depth = cfg.mesh.plate_depth_mm;
    const double base = cfg.mesh.plate_base_mm;
    const double rim_w = 0.075 * r;
    const double landing_r = 0.8 * r;
    Profile2D profile{{{0.0, 0.0},
                       {r, 0.0},
                       {r, depth},
                       {r - rim_w, depth},
                       {landing_r, base},
                       {0.0, base}}};
    SectorPlateBuild out;
    out.plate = revolve(profile, cfg.mesh.revolve_segments);
    if (!spec.suppressed && spec.segment_angle_deg > 0.0) {
        TriangleMesh segment =
            pie_segment(landing_r - rim_w, cfg.mesh.segment_thickness_mm,
                        spec.segment_angle_deg, cfg.mesh.revolve_segments);
        segment.translate({0.0, 0.0, base});
        out.concrete_volume_mm3 = mesh_stats(segment, false).signed_volume_mm3;
        out.concrete = std::move(segment);
    }
    return out;
}

TriangleMesh build_flat_plate(const FlatPlateSpec& spec, const Config& cfg) {
    (void)spec;
    return pie_segment(cfg.mesh.flat_plate_diameter_mm / 2.0,
                       cfg.mesh.flat_plate_thickness_mm, 360.0,
                       cfg.mesh.revolve_segments);
}

}  // namespace dataware

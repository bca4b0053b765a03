#pragma once

#include <optional>

#include "dataware/config.hpp"
#include "dataware/encoder.hpp"
#include "dataware/mesh.hpp"
#include "dataware/mesher.hpp"

namespace dataware {

// Builders turning vessel specs into watertight millimeter meshes.

// Spiral-perforated mug: hollow cylinder with one bore per reedbed cut,
// placed along a helix whose length encodes the reedbed length.
TriangleMesh build_mug(const MugSpec& spec, const Config& cfg);

struct JugBuild {
    TriangleMesh body;
    // Pie-segment insert occupying concrete_fraction of the interior;
    // omitted when the fraction is zero.
    std::optional<TriangleMesh> concrete;
    // Interior capacity measured on a mesh with the same tessellation as the
    // insert, so the insert/interior ratio tracks the fraction exactly.
    double interior_volume_mm3 = 0.0;
    double concrete_volume_mm3 = 0.0;
};
JugBuild build_jug(const JugSpec& spec, const Config& cfg);

struct DeepPlateBuild {
    TriangleMesh plate;   // rim cut by the tilted plane
    TriangleMesh uncut;   // revolved solid before the cut (not exported)
};
DeepPlateBuild build_deep_plate(const DeepPlateSpec& spec, const Config& cfg);

struct SectorPlateBuild {
    TriangleMesh plate;
    std::optional<TriangleMesh> concrete;  // omitted when suppressed
    double concrete_volume_mm3 = 0.0;
};
SectorPlateBuild build_sector_plate(const PlateSectorSpec& spec, const Config& cfg);

// Plain carrier disc; the shoreline outline itself is exported as SVG.
TriangleMesh build_flat_plate(const FlatPlateSpec& spec, const Config& cfg);

}  // namespace dataware

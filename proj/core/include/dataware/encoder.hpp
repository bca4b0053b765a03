#pragma once

#include <span>
#include <vector>

#include "dataware/config.hpp"
#include "dataware/geodata.hpp"
#include "dataware/records.hpp"

namespace dataware {

/// Mug: reedbed length becomes a 1:1000 spiral (1 m of reed = 1 mm of
/// thread); the spiral's turn count times the pitch is the mug height.
/// Reedbed cuts become perforations spaced along the spiral.
struct MugSpec {
    double height_mm = 0.0;
    double diameter_mm = 0.0;
    double spiral_turns = 0.0;
    double spiral_length_mm = 0.0;
    double pitch_mm = 0.0;
    int perforation_count = 0;
    double perforation_spacing_mm = 0.0;  ///< along the spiral arc
    bool spacing_clamped = false;         ///< spacing reduced to fit the spiral
};

/// Jug: coastline length sets the height through the same
/// mm-of-height-per-data-meter factor the mug mapping induces; the share of
/// hardened shoreline becomes an interior concrete sector.
struct JugSpec {
    double height_mm = 0.0;
    double diameter_mm = 0.0;
    bool tall_mould = false;
    double concrete_fraction = 0.0;
    double concrete_sector_angle_deg = 0.0;
};

/// Pie-chart plate: a fraction rendered as a sector of the plate's well.
/// Shared by the small (per-municipality built-up share) and serving
/// (dinner-average built-up share) plates.
struct PlateSectorSpec {
    double diameter_mm = 0.0;
    double fraction = 0.0;
    double segment_angle_deg = 0.0;
    bool suppressed = false;  ///< angle below the visibility threshold
};

using SmallPlateSpec = PlateSectorSpec;
using ServingPlateSpec = PlateSectorSpec;

/// Deep plate: shore steepness becomes the tilt of the cutting plane.
struct DeepPlateSpec {
    double diameter_mm = 0.0;
    double slope_percent = 0.0;
    double tilt_angle_deg = 0.0;  ///< atan(slope/100) in degrees
};

/// Flat plate: the shoreline outline at 1:22,400, centered in the glass
/// cutting frame.
struct FlatPlateSpec {
    double frame_width_mm = 0.0;
    double frame_height_mm = 0.0;
    std::vector<Vec2> glass_outline_mm;
    bool fits_frame = false;
    double outline_width_mm = 0.0;
    double outline_height_mm = 0.0;
};

/// mm of vessel height produced per meter of measured data:
/// p / sqrt((pi*D)^2 + p^2), induced by the mug's spiral construction.
double height_per_data_meter(const EncoderConfig& config);

MugSpec encode_mug(const MunicipalityRecord& record, const EncoderConfig& config);
JugSpec encode_jug(const MunicipalityRecord& record, const EncoderConfig& config);
SmallPlateSpec encode_small_plate(const MunicipalityRecord& record,
                                  const EncoderConfig& config);
DeepPlateSpec encode_deep_plate(const MunicipalityRecord& record, const EncoderConfig& config);
FlatPlateSpec encode_flat_plate(const MunicipalityRecord& record, const EncoderConfig& config);
ServingPlateSpec encode_serving_plate(std::span<const MunicipalityRecord> records,
                                      const EncoderConfig& config);

}  // namespace dataware

#include "dataware/encoder.hpp"

#include <cmath>
#include <numbers>

#include "dataware/errors.hpp"

namespace dataware {

namespace {

double turn_length_mm(const EncoderConfig& config) {
    const double circumference = std::numbers::pi * config.mug_diameter_mm;
    return std::sqrt(circumference * circumference +
                     config.spiral_pitch_mm * config.spiral_pitch_mm);
}

}  // namespace

double height_per_data_meter(const EncoderConfig& config) {
    return config.spiral_pitch_mm / turn_length_mm(config);
}

MugSpec encode_mug(const MunicipalityRecord& record, const EncoderConfig& config) {
    record.validate();
    config.validate();
    if (!(record.reedbed_length_m > 0.0)) {
        throw EncodeError("record '" + record.name + "': no reedbed; mug undefined");
    }
    MugSpec spec;
    spec.diameter_mm = config.mug_diameter_mm;
    spec.pitch_mm = config.spiral_pitch_mm;
    // 1 m of reedbed maps to 1000 mm / map_scale of spiral thread
    // (1 mm at the default 1:1000).
    spec.spiral_length_mm = record.reedbed_length_m * 1000.0 / config.map_scale_reedbed;
    spec.spiral_turns = spec.spiral_length_mm / turn_length_mm(config);
    spec.height_mm = spec.spiral_turns * config.spiral_pitch_mm;
    spec.perforation_count = record.reedbed_cuts;
    if (record.reedbed_cuts > 0) {
        spec.perforation_spacing_mm =
            record.avg_cut_distance_m * 1000.0 / config.map_scale_reedbed;
        const double max_spacing = spec.spiral_length_mm / record.reedbed_cuts;
        if (spec.perforation_spacing_mm > max_spacing) {
            spec.perforation_spacing_mm = max_spacing;
            spec.spacing_clamped = true;
        }
    }
    return spec;
}

JugSpec encode_jug(const MunicipalityRecord& record, const EncoderConfig& config) {
    record.validate();
    config.validate();
    JugSpec spec;
    spec.height_mm = record.coastline_length_m * height_per_data_meter(config);
    spec.tall_mould = spec.height_mm >= config.jug_tall_threshold_mm;
    spec.diameter_mm =
        spec.tall_mould ? config.jug_diameter_tall_mm : config.jug_diameter_short_mm;
    spec.concrete_fraction = record.artificial_shoreline_m / record.coastline_length_m;
    spec.concrete_sector_angle_deg = 360.0 * spec.concrete_fraction;
    return spec;
}

SmallPlateSpec encode_small_plate(const MunicipalityRecord& record,
                                  const EncoderConfig& config) {
    record.validate();
    config.validate();
    SmallPlateSpec spec;
    spec.diameter_mm = config.small_plate_diameter_mm;
    spec.fraction = record.builtup_fraction;
    spec.segment_angle_deg = 360.0 * record.builtup_fraction;
    if (spec.segment_angle_deg < config.small_plate_min_angle_deg) {
        spec.suppressed = true;
        spec.segment_angle_deg = 0.0;
    }
    return spec;
}

DeepPlateSpec encode_deep_plate(const MunicipalityRecord& record,
                                const EncoderConfig& config) {
    record.validate();
    config.validate();
    DeepPlateSpec spec;
    spec.diameter_mm = config.deep_plate_diameter_mm;
    spec.slope_percent = record.slope_percent;
    spec.tilt_angle_deg =
        std::atan(record.slope_percent / 100.0) * 180.0 / std::numbers::pi;
    return spec;
}

FlatPlateSpec encode_flat_plate(const MunicipalityRecord& record,
                                const EncoderConfig& config) {
    record.validate();
    config.validate();
    if (!record.shoreline.has_value()) {
        throw EncodeError("record '" + record.name + "': no shoreline polyline available");
    }
    const Vec2 frame{config.flat_plate_frame_width_mm, config.flat_plate_frame_height_mm};
    const ScaledOutline scaled =
        scale_polyline(*record.shoreline, config.map_scale_shoreline_outline, frame);
    FlatPlateSpec spec;
    spec.frame_width_mm = frame.x;
    spec.frame_height_mm = frame.y;
    spec.glass_outline_mm = scaled.outline.points;
    spec.fits_frame = scaled.fits_frame;
    spec.outline_width_mm = scaled.width_mm;
    spec.outline_height_mm = scaled.height_mm;
    return spec;
}

ServingPlateSpec encode_serving_plate(std::span<const MunicipalityRecord> records,
                                      const EncoderConfig& config) {
    config.validate();
    if (records.empty()) {
        throw EncodeError("serving plate needs at least one record to average");
    }
    double sum = 0.0;
    for (const MunicipalityRecord& record : records) {
        record.validate();
        sum += record.builtup_fraction;
    }
    ServingPlateSpec spec;
    spec.diameter_mm = config.serving_plate_diameter_mm;
    spec.fraction = sum / static_cast<double>(records.size());
    spec.segment_angle_deg = 360.0 * spec.fraction;
    if (spec.segment_angle_deg < config.small_plate_min_angle_deg) {
        spec.suppressed = true;
        spec.segment_angle_deg = 0.0;
    }
    return spec;
}

}  // namespace dataware

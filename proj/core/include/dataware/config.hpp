#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace dataware {

/// Encoding constants: how ecological measurements become vessel parameters.
struct EncoderConfig {
    double mug_diameter_mm = 80.0;
    double spiral_pitch_mm = 5.0;                  ///< 0.5 cm thread pitch
    double map_scale_reedbed = 1000.0;             ///< 1:1000
    double map_scale_shoreline_outline = 22400.0;  ///< 1:22,400
    double jug_diameter_tall_mm = 90.0;
    double jug_diameter_short_mm = 90.0;
    double jug_tall_threshold_mm = 120.0;  ///< tall mould at or above this height
    double perforation_radius_mm = 2.0;
    double small_plate_diameter_mm = 160.0;
    double small_plate_min_angle_deg = 2.0;  ///< segments below this are suppressed
    double deep_plate_diameter_mm = 220.0;
    double flat_plate_frame_width_mm = 260.0;
    double flat_plate_frame_height_mm = 260.0;
    double concrete_density_kg_m3 = 2400.0;
    double serving_plate_diameter_mm = 320.0;

    void validate() const;  ///< throws EncodeError on nonpositive lengths etc.
};

/// Mesh construction constants: cross-sections of the vessels themselves.
struct MeshConfig {
    int revolve_segments = 256;
    double wall_thickness_mm = 4.0;        ///< hollow vessel walls and floors
    double deep_plate_depth_mm = 45.0;
    double deep_plate_base_mm = 8.0;
    double deep_plate_pivot_fraction = 0.75;  ///< cut pivot height / plate depth
    double plate_depth_mm = 18.0;          ///< small/serving plate rim height
    double plate_base_mm = 6.0;            ///< small/serving plate floor top
    double segment_thickness_mm = 5.0;     ///< concrete pie segments on plates
    double flat_plate_diameter_mm = 280.0;
    double flat_plate_thickness_mm = 10.0;

    void validate() const;
};

struct Config {
    EncoderConfig encoder;
    MeshConfig mesh;
    double firing_kwh_per_piece = 3.5;
    int profile_samples = 256;

    void validate() const;
};

/// Parses a flat `key = value` config file ('#' comments, blank lines
/// allowed).  Keys match the field names above (e.g. `mug_diameter_mm = 80`).
/// Unknown keys and malformed lines throw ParseError with the line number.
Config parse_config(std::string_view text);

/// Loads and parses `path`; missing file throws ParseError.
Config load_config_file(const std::filesystem::path& path);

/// Environment variable consulted for a default config path.
inline constexpr const char* k_config_env_var = "DATAWARE_CONFIG";

}  // namespace dataware

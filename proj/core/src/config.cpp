#include "dataware/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "dataware/errors.hpp"

namespace dataware {

void EncoderConfig::validate() const {
    auto require_positive = [](double v, const char* key) {
        if (!(v > 0.0)) {
            throw EncodeError(std::string("config: ") + key + " must be > 0");
        }
    };
    require_positive(mug_diameter_mm, "mug_diameter_mm");
    require_positive(spiral_pitch_mm, "spiral_pitch_mm");
    require_positive(map_scale_reedbed, "map_scale_reedbed");
    require_positive(map_scale_shoreline_outline, "map_scale_shoreline_outline");
    require_positive(jug_diameter_tall_mm, "jug_diameter_tall_mm");
    require_positive(jug_diameter_short_mm, "jug_diameter_short_mm");
    require_positive(jug_tall_threshold_mm, "jug_tall_threshold_mm");
    require_positive(perforation_radius_mm, "perforation_radius_mm");
    require_positive(small_plate_diameter_mm, "small_plate_diameter_mm");
    require_positive(deep_plate_diameter_mm, "deep_plate_diameter_mm");
    require_positive(flat_plate_frame_width_mm, "flat_plate_frame_width_mm");
    require_positive(flat_plate_frame_height_mm, "flat_plate_frame_height_mm");
    require_positive(concrete_density_kg_m3, "concrete_density_kg_m3");
    require_positive(serving_plate_diameter_mm, "serving_plate_diameter_mm");
    if (!(small_plate_min_angle_deg >= 0.0 && small_plate_min_angle_deg < 360.0)) {
        throw EncodeError("config: small_plate_min_angle_deg must be in [0, 360)");
    }
    if (!(perforation_radius_mm < spiral_pitch_mm / 2.0)) {
        throw EncodeError(
            "config: perforation_radius_mm must be < spiral_pitch_mm / 2 "
            "(holes on adjacent spiral turns would merge)");
    }
}

void MeshConfig::validate() const {
    auto require_positive = [](double v, const char* key) {
        if (!(v > 0.0)) {
            throw EncodeError(std::string("config: ") + key + " must be > 0");
        }
    };
    if (revolve_segments < 3) {
        throw EncodeError("config: revolve_segments must be >= 3");
    }
    require_positive(wall_thickness_mm, "wall_thickness_mm");
    require_positive(deep_plate_depth_mm, "deep_plate_depth_mm");
    require_positive(deep_plate_base_mm, "deep_plate_base_mm");
    require_positive(plate_depth_mm, "plate_depth_mm");
    require_positive(plate_base_mm, "plate_base_mm");
    require_positive(segment_thickness_mm, "segment_thickness_mm");
    require_positive(flat_plate_diameter_mm, "flat_plate_diameter_mm");
    require_positive(flat_plate_thickness_mm, "flat_plate_thickness_mm");
    if (!(deep_plate_base_mm < deep_plate_depth_mm)) {
        throw EncodeError("config: deep_plate_base_mm must be < deep_plate_depth_mm");
    }
    if (!(deep_plate_pivot_fraction > 0.0 && deep_plate_pivot_fraction <= 1.0)) {
        throw EncodeError("config: deep_plate_pivot_fraction must be in (0, 1]");
    }
    if (!(plate_base_mm < plate_depth_mm)) {
        throw EncodeError("config: plate_base_mm must be < plate_depth_mm");
    }
}

void Config::validate() const {
    encoder.validate();
    mesh.validate();
    if (!(firing_kwh_per_piece > 0.0)) {
        throw EncodeError("config: firing_kwh_per_piece must be > 0");
    }
    if (profile_samples < 2) {
        throw EncodeError("config: profile_samples must be >= 2");
    }
}

namespace {

double parse_config_number(const std::string& value, int line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v)) {
        throw ParseError("non-numeric config value '" + value + "'", line_no, 1);
    }
    return v;
}

}  // namespace

Config parse_config(std::string_view text) {
    Config cfg;
    std::map<std::string, std::function<void(double)>> setters = {
        {"mug_diameter_mm", [&](double v) { cfg.encoder.mug_diameter_mm = v; }},
        {"spiral_pitch_mm", [&](double v) { cfg.encoder.spiral_pitch_mm = v; }},
        {"map_scale_reedbed", [&](double v) { cfg.encoder.map_scale_reedbed = v; }},
        {"map_scale_shoreline_outline",
         [&](double v) { cfg.encoder.map_scale_shoreline_outline = v; }},
        {"jug_diameter_tall_mm", [&](double v) { cfg.encoder.jug_diameter_tall_mm = v; }},
        {"jug_diameter_short_mm", [&](double v) { cfg.encoder.jug_diameter_short_mm = v; }},
        {"jug_tall_threshold_mm", [&](double v) { cfg.encoder.jug_tall_threshold_mm = v; }},
        {"perforation_radius_mm", [&](double v) { cfg.encoder.perforation_radius_mm = v; }},
        {"small_plate_diameter_mm",
         [&](double v) { cfg.encoder.small_plate_diameter_mm = v; }},
        {"small_plate_min_angle_deg",
         [&](double v) { cfg.encoder.small_plate_min_angle_deg = v; }},
        {"deep_plate_diameter_mm", [&](double v) { cfg.encoder.deep_plate_diameter_mm = v; }},
        {"flat_plate_frame_width_mm",
         [&](double v) { cfg.encoder.flat_plate_frame_width_mm = v; }},
        {"flat_plate_frame_height_mm",
         [&](double v) { cfg.encoder.flat_plate_frame_height_mm = v; }},
        {"concrete_density_kg_m3", [&](double v) { cfg.encoder.concrete_density_kg_m3 = v; }},
        {"serving_plate_diameter_mm",
         [&](double v) { cfg.encoder.serving_plate_diameter_mm = v; }},
        {"revolve_segments",
         [&](double v) { cfg.mesh.revolve_segments = static_cast<int>(v); }},
        {"wall_thickness_mm", [&](double v) { cfg.mesh.wall_thickness_mm = v; }},
        {"deep_plate_depth_mm", [&](double v) { cfg.mesh.deep_plate_depth_mm = v; }},
        {"deep_plate_base_mm", [&](double v) { cfg.mesh.deep_plate_base_mm = v; }},
        {"deep_plate_pivot_fraction",
         [&](double v) { cfg.mesh.deep_plate_pivot_fraction = v; }},
        {"plate_depth_mm", [&](double v) { cfg.mesh.plate_depth_mm = v; }},
        {"plate_base_mm", [&](double v) { cfg.mesh.plate_base_mm = v; }},
        {"segment_thickness_mm", [&](double v) { cfg.mesh.segment_thickness_mm = v; }},
        {"flat_plate_diameter_mm", [&](double v) { cfg.mesh.flat_plate_diameter_mm = v; }},
        {"flat_plate_thickness_mm", [&](double v) { cfg.mesh.flat_plate_thickness_mm = v; }},
        {"firing_kwh_per_piece", [&](double v) { cfg.firing_kwh_per_piece = v; }},
        {"profile_samples", [&](double v) { cfg.profile_samples = static_cast<int>(v); }},
    };

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string line{(nl == std::string_view::npos) ? text.substr(start)
                                                        : text.substr(start, nl - start)};
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string{};
            const std::size_t e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (!line.empty()) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                throw ParseError("expected 'key = value', got '" + line + "'", line_no, 1);
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto it = setters.find(key);
            if (it == setters.end()) {
                throw ParseError("unknown config key '" + key + "'", line_no, 1);
            }
            it->second(parse_config_number(value, line_no));
        }
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }

    cfg.validate();
    return cfg;
}

Config load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace dataware

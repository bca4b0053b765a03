#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "dataware/errors.hpp"
#include "dataware/report.hpp"
#include "dataware/version.hpp"

namespace dataware {

namespace {

using ordered_json = nlohmann::ordered_json;

// Manifest floats carry six significant digits; rounding through text keeps
// the JSON byte stream independent of how the value was computed.
double round6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

// Prose formatting for the booklet: six significant digits, plain decimal.
std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt1(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

ordered_json vessel_to_json(const VesselReport& vessel) {
    ordered_json j;
    j["kind"] = vessel.kind;
    j["file"] = vessel.file;
    for (const auto& [key, value] : vessel.extra_files) {
        j[key] = value;
    }
    ordered_json spec;
    for (const auto& [key, value] : vessel.integers) {
        spec[key] = value;
    }
    for (const auto& [key, value] : vessel.numbers) {
        spec[key] = round6(value);
    }
    for (const auto& [key, value] : vessel.flags) {
        spec[key] = value;
    }
    j["spec"] = std::move(spec);
    ordered_json mesh;
    mesh["vertices"] = vessel.mesh.vertex_count;
    mesh["triangles"] = vessel.mesh.triangle_count;
    mesh["euler"] = vessel.mesh.euler;
    mesh["genus"] = vessel.mesh.genus;
    mesh["watertight"] = vessel.mesh.watertight;
    mesh["volume_mm3"] = round6(vessel.mesh.volume_mm3);
    mesh["min_wall_mm"] = round6(vessel.mesh.min_wall_mm);
    j["mesh"] = std::move(mesh);
    return j;
}

ordered_json record_to_json(const MunicipalityRecord& r) {
    ordered_json j;
    j["reedbed_length_m"] = round6(r.reedbed_length_m);
    j["reedbed_cuts"] = r.reedbed_cuts;
    j["avg_cut_distance_m"] = round6(r.avg_cut_distance_m);
    j["coastline_length_m"] = round6(r.coastline_length_m);
    j["artificial_shoreline_m"] = round6(r.artificial_shoreline_m);
    j["builtup_fraction"] = round6(r.builtup_fraction);
    j["slope_percent"] = round6(r.slope_percent);
    j["reconstructed"] = r.reconstructed;
    return j;
}

ordered_json config_to_json(const Config& cfg) {
    const EncoderConfig& e = cfg.encoder;
    const MeshConfig& m = cfg.mesh;
    ordered_json j;
    j["mug_diameter_mm"] = round6(e.mug_diameter_mm);
    j["spiral_pitch_mm"] = round6(e.spiral_pitch_mm);
    j["map_scale_reedbed"] = round6(e.map_scale_reedbed);
    j["map_scale_shoreline_outline"] = round6(e.map_scale_shoreline_outline);
    j["jug_diameter_tall_mm"] = round6(e.jug_diameter_tall_mm);
    j["jug_diameter_short_mm"] = round6(e.jug_diameter_short_mm);
    j["jug_tall_threshold_mm"] = round6(e.jug_tall_threshold_mm);
    j["perforation_radius_mm"] = round6(e.perforation_radius_mm);
    j["small_plate_diameter_mm"] = round6(e.small_plate_diameter_mm);
    j["small_plate_min_angle_deg"] = round6(e.small_plate_min_angle_deg);
    j["deep_plate_diameter_mm"] = round6(e.deep_plate_diameter_mm);
    j["flat_plate_frame_width_mm"] = round6(e.flat_plate_frame_width_mm);
    j["flat_plate_frame_height_mm"] = round6(e.flat_plate_frame_height_mm);
    j["concrete_density_kg_m3"] = round6(e.concrete_density_kg_m3);
    j["serving_plate_diameter_mm"] = round6(e.serving_plate_diameter_mm);
    j["revolve_segments"] = m.revolve_segments;
    j["wall_thickness_mm"] = round6(m.wall_thickness_mm);
    j["deep_plate_depth_mm"] = round6(m.deep_plate_depth_mm);
    j["deep_plate_base_mm"] = round6(m.deep_plate_base_mm);
    j["deep_plate_pivot_fraction"] = round6(m.deep_plate_pivot_fraction);
    j["plate_depth_mm"] = round6(m.plate_depth_mm);
    j["plate_base_mm"] = round6(m.plate_base_mm);
    j["segment_thickness_mm"] = round6(m.segment_thickness_mm);
    j["flat_plate_diameter_mm"] = round6(m.flat_plate_diameter_mm);
    j["flat_plate_thickness_mm"] = round6(m.flat_plate_thickness_mm);
    j["firing_kwh_per_piece"] = round6(cfg.firing_kwh_per_piece);
    j["profile_samples"] = cfg.profile_samples;
    return j;
}

bool is_ceramic(const std::string& kind) {
    return kind == "mug" || kind == "jug" || kind == "deep_plate" ||
           kind == "small_plate" || kind == "flat_plate" || kind == "serving_plate";
}

bool is_concrete(const std::string& kind) {
    return kind.size() > 9 && kind.substr(kind.size() - 9) == "_concrete";
}

double spec_number(const ordered_json& vessel, const char* key, double fallback = 0.0) {
    if (vessel.contains("spec") && vessel["spec"].contains(key)) {
        return vessel["spec"][key].get<double>();
    }
    return fallback;
}

}  // namespace

MeshSummary summarize_mesh(const TriangleMesh& mesh, bool estimate_wall) {
    const MeshStats stats = mesh_stats(mesh, estimate_wall);
    MeshSummary s;
    s.vertex_count = stats.vertex_count;
    s.triangle_count = stats.triangle_count;
    s.euler = stats.euler;
    s.genus = stats.genus;
    s.watertight = stats.watertight;
    s.volume_mm3 = stats.signed_volume_mm3;
    s.min_wall_mm = stats.min_wall_estimate_mm;
    return s;
}

MaterialsEstimate materials_estimate(const std::vector<MunicipalityReport>& sets,
                                     const ServingReport& serving, const Config& cfg) {
    MaterialsEstimate est;
    auto tally = [&](const VesselReport& vessel) {
        if (is_ceramic(vessel.kind)) {
            est.piece_count += 1;
        } else if (is_concrete(vessel.kind)) {
            est.concrete_volume_mm3 += vessel.mesh.volume_mm3;
        }
    };
    for (const MunicipalityReport& set : sets) {
        if (!set.ok) continue;
        for (const VesselReport& vessel : set.vessels) tally(vessel);
    }
    if (serving.ok) {
        for (const VesselReport& vessel : serving.vessels) tally(vessel);
    }
    // mm^3 -> m^3 is 1e-9; concrete density is in kg/m^3.
    est.concrete_mass_kg =
        est.concrete_volume_mm3 * 1e-9 * cfg.encoder.concrete_density_kg_m3;
    est.firing_energy_kwh = cfg.firing_kwh_per_piece * est.piece_count;
    return est;
}

std::string build_manifest(const std::vector<MunicipalityReport>& sets,
                           const ServingReport& serving, const Config& cfg) {
    ordered_json root;
    root["tool"] = {{"name", k_tool_name}, {"version", k_version}};
    root["units"] = "mm";
    root["config"] = config_to_json(cfg);

    ordered_json municipalities = ordered_json::array();
    for (const MunicipalityReport& set : sets) {
        ordered_json entry;
        entry["name"] = set.record.name;
        entry["record"] = record_to_json(set.record);
        entry["status"] = set.ok ? "ok" : "failed";
        if (!set.ok) {
            entry["error"] = set.error;
        }
        ordered_json vessels = ordered_json::array();
        for (const VesselReport& vessel : set.vessels) {
            vessels.push_back(vessel_to_json(vessel));
        }
        entry["vessels"] = std::move(vessels);
        municipalities.push_back(std::move(entry));
    }
    root["municipalities"] = std::move(municipalities);

    ordered_json serving_json;
    serving_json["status"] = serving.ok ? "ok" : "failed";
    if (!serving.ok) {
        serving_json["error"] = serving.error;
    }
    serving_json["municipalities"] = serving.municipalities;
    ordered_json serving_spec;
    for (const auto& [key, value] : serving.numbers) {
        serving_spec[key] = round6(value);
    }
    for (const auto& [key, value] : serving.flags) {
        serving_spec[key] = value;
    }
    serving_json["spec"] = std::move(serving_spec);
    ordered_json serving_vessels = ordered_json::array();
    for (const VesselReport& vessel : serving.vessels) {
        serving_vessels.push_back(vessel_to_json(vessel));
    }
    serving_json["vessels"] = std::move(serving_vessels);
    root["serving_plate"] = std::move(serving_json);

    const MaterialsEstimate est = materials_estimate(sets, serving, cfg);
    ordered_json materials;
    materials["piece_count"] = est.piece_count;
    materials["concrete_volume_mm3"] = round6(est.concrete_volume_mm3);
    materials["concrete_mass_kg"] = round6(est.concrete_mass_kg);
    materials["firing_energy_kwh"] = round6(est.firing_energy_kwh);
    root["materials"] = std::move(materials);

    return root.dump(2) + "\n";
}

namespace {

const ordered_json* find_vessel(const ordered_json& entry, const char* kind) {
    if (!entry.contains("vessels")) return nullptr;
    for (const auto& vessel : entry["vessels"]) {
        if (vessel.contains("kind") && vessel["kind"] == kind) return &vessel;
    }
    return nullptr;
}

void render_municipality(std::string& md, const ordered_json& entry,
                         const ordered_json& config) {
    const std::string name = entry["name"].get<std::string>();
    md += "## " + name + "\n\n";

    const ordered_json& r = entry["record"];
    md += "Data: " + fmt(r["reedbed_length_m"].get<double>()) + " m of reedbed with " +
          std::to_string(r["reedbed_cuts"].get<long long>()) + " cuts (average " +
          fmt(r["avg_cut_distance_m"].get<double>()) + " m apart); " +
          fmt(r["coastline_length_m"].get<double>()) + " m of coastline of which " +
          fmt(r["artificial_shoreline_m"].get<double>()) + " m is artificial; built-up " +
          "fraction " + fmt(r["builtup_fraction"].get<double>()) + " in the shore zone; " +
          "average coastal slope " + fmt(r["slope_percent"].get<double>()) + "%.";
    if (r["reconstructed"].get<bool>()) {
        md += " Some of these values were reconstructed from archival sources.";
    }
    md += "\n\n";

    if (entry["status"] != "ok") {
        md += "**Generation failed:** " + entry["error"].get<std::string>() +
              ". No vessels were produced for this set.\n\n";
        return;
    }

    if (const ordered_json* mug = find_vessel(entry, "mug")) {
        const double spiral = spec_number(*mug, "spiral_length_mm");
        const double height = spec_number(*mug, "height_mm");
        const double pitch = spec_number(*mug, "pitch_mm");
        const long long count = (*mug)["spec"]["perforation_count"].get<long long>();
        md += "- **Mug** (`" + (*mug)["file"].get<std::string>() + "`): the reedbed, " +
              "scaled 1:" + fmt(config["map_scale_reedbed"].get<double>()) +
              ", winds into a " + fmt(spiral) + " mm spiral thread; at a " +
              fmt(pitch) + " mm pitch the spiral climbs " + fmt1(height) +
              " mm, which sets the mug height.";
        if (count > 0) {
            md += " " + std::to_string(count) +
                  " perforations mark the recorded reedbed cuts, one every " +
                  fmt1(spec_number(*mug, "perforation_spacing_mm")) +
                  " mm along the spiral.";
            if ((*mug)["spec"]["spacing_clamped"].get<bool>()) {
                md += " The cut spacing was clamped so every perforation fits on "
                      "the spiral.";
            }
        } else {
            md += " The mug has no perforations: no reedbed cuts are recorded for "
                  "this municipality.";
        }
        md += "\n";
    }

    if (const ordered_json* jug = find_vessel(entry, "jug")) {
        const double height = spec_number(*jug, "height_mm");
        const double fraction = spec_number(*jug, "concrete_fraction");
        md += "- **Jug** (`" + (*jug)["file"].get<std::string>() +
              "`): the coastline length, at the same height-per-meter factor as the "
              "mug, sets the jug height at " +
              fmt1(height) + " mm (" +
              ((*jug)["spec"]["tall_mould"].get<bool>() ? "tall" : "short") + " mould).";
        if (fraction > 0.0) {
            md += " " + fmt(fraction * 100.0) +
                  "% of the shoreline is artificial, cast as a " +
                  fmt1(spec_number(*jug, "concrete_sector_angle_deg")) +
                  "\xC2\xB0 concrete sector inside the jug.";
        } else {
            md += " None of the shoreline is artificial, so the jug carries no "
                  "concrete insert.";
        }
        md += "\n";
    }

    if (const ordered_json* deep = find_vessel(entry, "deep_plate")) {
        md += "- **Deep plate** (`" + (*deep)["file"].get<std::string>() + "`): the " +
              fmt(spec_number(*deep, "slope_percent")) +
              "% average coastal slope tilts the plate rim by " +
              fmt1(spec_number(*deep, "tilt_angle_deg")) + "\xC2\xB0.\n";
    }

    if (const ordered_json* small = find_vessel(entry, "small_plate")) {
        const bool suppressed = (*small)["spec"]["suppressed"].get<bool>();
        md += "- **Small plate** (`" + (*small)["file"].get<std::string>() + "`): the "
              "built-up fraction " +
              fmt(spec_number(*small, "fraction")) + " maps to a " +
              fmt1(spec_number(*small, "segment_angle_deg")) + "\xC2\xB0 concrete segment.";
        if (suppressed) {
            md += " The segment falls below the minimum visible angle and is "
                  "suppressed; the plate is fired plain.";
        }
        md += "\n";
    }

    if (const ordered_json* flat = find_vessel(entry, "flat_plate")) {
        md += "- **Flat plate** (`" + (*flat)["file"].get<std::string>() +
              "`): the shoreline outline, scaled 1:" +
              fmt(spec_number(*flat, "map_scale")) + ", is etched into a " +
              fmt(spec_number(*flat, "frame_width_mm")) + " mm \xC3\x97 " +
              fmt(spec_number(*flat, "frame_height_mm")) + " mm glass sheet (`" +
              (*flat)["glass_outline"].get<std::string>() + "`); the outline measures " +
              fmt1(spec_number(*flat, "outline_width_mm")) + " mm \xC3\x97 " +
              fmt1(spec_number(*flat, "outline_height_mm")) + " mm and " +
              ((*flat)["spec"]["fits_frame"].get<bool>()
                   ? "fits the frame."
                   : "exceeds the frame, so it is flagged for manual layout.");
        md += "\n";
    }
    md += "\n";
}

}  // namespace

std::string render_booklet(const std::string& manifest_json) {
    ordered_json root;
    try {
        root = ordered_json::parse(manifest_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid manifest JSON: ") + e.what());
    }

    std::string md;
    md += "# A tableware collection for Lake Balaton\n\n";
    md += "Every vessel in this collection encodes measured properties of one "
          "municipality's shoreline ecology. This booklet is generated from the "
          "production manifest; all dimensions are millimeters.\n\n";

    for (const auto& entry : root["municipalities"]) {
        render_municipality(md, entry, root["config"]);
    }

    const ordered_json& serving = root["serving_plate"];
    md += "## Serving plate\n\n";
    if (serving["status"] == "ok") {
        std::string names;
        for (const auto& n : serving["municipalities"]) {
            if (!names.empty()) names += ", ";
            names += n.get<std::string>();
        }
        const double fraction = serving["spec"].contains("fraction")
                                    ? serving["spec"]["fraction"].get<double>()
                                    : 0.0;
        const double angle = serving["spec"].contains("segment_angle_deg")
                                 ? serving["spec"]["segment_angle_deg"].get<double>()
                                 : 0.0;
        md += "One plate is shared by the dinner party: " + names +
              ". Their mean built-up fraction of " + fmt(fraction) +
              " appears as a " + fmt1(angle) + "\xC2\xB0 concrete segment";
        if (serving["spec"].contains("suppressed") &&
            serving["spec"]["suppressed"].get<bool>()) {
            md += ", which falls below the minimum visible angle and is suppressed";
        }
        md += ".\n\n";
    } else {
        md += "**Generation failed:** " + serving["error"].get<std::string>() + ".\n\n";
    }

    const ordered_json& materials = root["materials"];
    md += "## Materials\n\n";
    md += "- Ceramic pieces fired: " +
          std::to_string(materials["piece_count"].get<long long>()) + "\n";
    md += "- Firing energy: " + fmt(materials["firing_energy_kwh"].get<double>()) +
          " kWh (" + fmt(root["config"]["firing_kwh_per_piece"].get<double>()) +
          " kWh per piece)\n";
    md += "- Concrete: " + fmt(materials["concrete_volume_mm3"].get<double>() / 1000.0) +
          " cm\xC2\xB3 \xE2\x89\x88 " + fmt(materials["concrete_mass_kg"].get<double>()) +
          " kg at " + fmt(root["config"]["concrete_density_kg_m3"].get<double>()) +
          " kg/m\xC2\xB3\n";
    return md;
}

}  // namespace dataware

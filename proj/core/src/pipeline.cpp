#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dataware/encoder.hpp"
#include "dataware/errors.hpp"
#include "dataware/exporters.hpp"
#include "dataware/geodata.hpp"
#include "dataware/geojson.hpp"
#include "dataware/pipeline.hpp"
#include "dataware/raster.hpp"
#include "dataware/report.hpp"
#include "dataware/vessels.hpp"

namespace dataware {

namespace {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string shortest_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Builds one municipality's vessel set: all meshes and diagnostics first,
// then every file write, so a failure leaves no output behind.
MunicipalityReport build_municipality(const MunicipalityRecord& record,
                                      const Config& cfg,
                                      const std::filesystem::path& out_dir) {
    MunicipalityReport rep;
    rep.record = record;
    try {
        record.validate();
        const std::string dir = record.name;  // out-dir-relative prefix

        const MugSpec mug_spec = encode_mug(record, cfg.encoder);
        const JugSpec jug_spec = encode_jug(record, cfg.encoder);
        const DeepPlateSpec deep_spec = encode_deep_plate(record, cfg.encoder);
        const SmallPlateSpec small_spec = encode_small_plate(record, cfg.encoder);
        const FlatPlateSpec flat_spec = encode_flat_plate(record, cfg.encoder);

        const TriangleMesh mug = build_mug(mug_spec, cfg);
        const JugBuild jug = build_jug(jug_spec, cfg);
        const DeepPlateBuild deep = build_deep_plate(deep_spec, cfg);
        const SectorPlateBuild small = build_sector_plate(small_spec, cfg);
        const TriangleMesh flat = build_flat_plate(flat_spec, cfg);

        {
            VesselReport v;
            v.kind = "mug";
            v.file = dir + "/mug.stl";
            v.numbers = {{"height_mm", mug_spec.height_mm},
                         {"diameter_mm", mug_spec.diameter_mm},
                         {"spiral_turns", mug_spec.spiral_turns},
                         {"spiral_length_mm", mug_spec.spiral_length_mm},
                         {"pitch_mm", mug_spec.pitch_mm},
                         {"perforation_spacing_mm", mug_spec.perforation_spacing_mm}};
            v.integers = {{"perforation_count", mug_spec.perforation_count}};
            v.flags = {{"spacing_clamped", mug_spec.spacing_clamped}};
            v.mesh = summarize_mesh(mug);
            rep.vessels.push_back(std::move(v));
        }
        {
            VesselReport v;
            v.kind = "jug";
            v.file = dir + "/jug.stl";
            v.numbers = {{"height_mm", jug_spec.height_mm},
                         {"diameter_mm", jug_spec.diameter_mm},
                         {"concrete_fraction", jug_spec.concrete_fraction},
                         {"concrete_sector_angle_deg", jug_spec.concrete_sector_angle_deg},
                         {"interior_volume_mm3", jug.interior_volume_mm3}};
            v.flags = {{"tall_mould", jug_spec.tall_mould},
                       {"insert_omitted", !jug.concrete.has_value()}};
            v.mesh = summarize_mesh(jug.body);
            rep.vessels.push_back(std::move(v));
        }
        if (jug.concrete) {
            VesselReport v;
            v.kind = "jug_concrete";
            v.file = dir + "/jug_concrete.stl";
            v.numbers = {{"sector_angle_deg", jug_spec.concrete_sector_angle_deg}};
            v.mesh = summarize_mesh(*jug.concrete);
            rep.vessels.push_back(std::move(v));
        }
        {
            VesselReport v;
            v.kind = "deep_plate";
            v.file = dir + "/deep_plate.stl";
            v.numbers = {{"diameter_mm", deep_spec.diameter_mm},
                         {"slope_percent", deep_spec.slope_percent},
                         {"tilt_angle_deg", deep_spec.tilt_angle_deg},
                         {"pivot_z_mm", cfg.mesh.deep_plate_pivot_fraction *
                                            cfg.mesh.deep_plate_depth_mm}};
            v.mesh = summarize_mesh(deep.plate);
            rep.vessels.push_back(std::move(v));
        }
        {
            VesselReport v;
            v.kind = "small_plate";
            v.file = dir + "/small_plate.stl";
            v.numbers = {{"diameter_mm", small_spec.diameter_mm},
                         {"fraction", small_spec.fraction},
                         {"segment_angle_deg", small_spec.segment_angle_deg}};
            v.flags = {{"suppressed", small_spec.suppressed}};
            v.mesh = summarize_mesh(small.plate);
            rep.vessels.push_back(std::move(v));
        }
        if (small.concrete) {
            VesselReport v;
            v.kind = "small_plate_concrete";
            v.file = dir + "/small_plate_concrete.stl";
            v.numbers = {{"sector_angle_deg", small_spec.segment_angle_deg}};
            v.mesh = summarize_mesh(*small.concrete);
            rep.vessels.push_back(std::move(v));
        }
        {
            VesselReport v;
            v.kind = "flat_plate";
            v.file = dir + "/flat_plate.stl";
            v.extra_files = {{"glass_outline", dir + "/flat_plate_glass.svg"}};
            v.numbers = {{"map_scale", cfg.encoder.map_scale_shoreline_outline},
                         {"frame_width_mm", flat_spec.frame_width_mm},
                         {"frame_height_mm", flat_spec.frame_height_mm},
                         {"outline_width_mm", flat_spec.outline_width_mm},
                         {"outline_height_mm", flat_spec.outline_height_mm}};
            v.flags = {{"fits_frame", flat_spec.fits_frame}};
            v.mesh = summarize_mesh(flat);
            rep.vessels.push_back(std::move(v));
        }

        // Write phase: nothing above touched the disk.
        const std::filesystem::path set_dir = out_dir / record.name;
        std::filesystem::create_directories(set_dir);
        export_stl(mug, set_dir / "mug.stl");
        export_stl(jug.body, set_dir / "jug.stl");
        if (jug.concrete) export_stl(*jug.concrete, set_dir / "jug_concrete.stl");
        export_stl(deep.plate, set_dir / "deep_plate.stl");
        export_stl(small.plate, set_dir / "small_plate.stl");
        if (small.concrete) {
            export_stl(*small.concrete, set_dir / "small_plate_concrete.stl");
        }
        export_stl(flat, set_dir / "flat_plate.stl");
        write_file_atomic(set_dir / "flat_plate_glass.svg",
                          svg_outline(flat_spec.glass_outline_mm, flat_spec.frame_width_mm,
                                      flat_spec.frame_height_mm));
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error = e.what();
        rep.vessels.clear();
    }
    return rep;
}

ServingReport build_serving(const std::vector<MunicipalityRecord>& guests,
                            const Config& cfg, const std::filesystem::path& out_dir) {
    ServingReport serving;
    for (const MunicipalityRecord& r : guests) {
        serving.municipalities.push_back(r.name);
    }
    try {
        const ServingPlateSpec spec = encode_serving_plate(guests, cfg.encoder);
        const SectorPlateBuild build = build_sector_plate(spec, cfg);
        serving.numbers = {{"diameter_mm", spec.diameter_mm},
                           {"fraction", spec.fraction},
                           {"segment_angle_deg", spec.segment_angle_deg}};
        serving.flags = {{"suppressed", spec.suppressed}};
        {
            VesselReport v;
            v.kind = "serving_plate";
            v.file = "serving_plate.stl";
            v.numbers = {{"diameter_mm", spec.diameter_mm},
                         {"fraction", spec.fraction},
                         {"segment_angle_deg", spec.segment_angle_deg}};
            v.flags = {{"suppressed", spec.suppressed}};
            v.mesh = summarize_mesh(build.plate);
            serving.vessels.push_back(std::move(v));
        }
        if (build.concrete) {
            VesselReport v;
            v.kind = "serving_plate_concrete";
            v.file = "serving_plate_concrete.stl";
            v.numbers = {{"sector_angle_deg", spec.segment_angle_deg}};
            v.mesh = summarize_mesh(*build.concrete);
            serving.vessels.push_back(std::move(v));
        }
        export_stl(build.plate, out_dir / "serving_plate.stl");
        if (build.concrete) {
            export_stl(*build.concrete, out_dir / "serving_plate_concrete.stl");
        }
    } catch (const std::exception& e) {
        serving.ok = false;
        serving.error = e.what();
        serving.vessels.clear();
        serving.numbers.clear();
        serving.flags.clear();
    }
    return serving;
}

}  // namespace

GenerateResult run_generate(const GenerateOptions& opts) {
    opts.config.validate();
    std::vector<MunicipalityRecord> records =
        parse_records_csv(read_text_file(opts.records_csv));
    if (records.empty()) {
        throw ParseError("records file '" + opts.records_csv.string() +
                         "' lists no municipalities");
    }
    {
        std::set<std::string> names;
        for (const MunicipalityRecord& r : records) {
            if (!names.insert(r.name).second) {
                throw ParseError("duplicate municipality '" + r.name + "' in records");
            }
        }
    }

    if (opts.shorelines_geojson) {
        std::map<std::string, Polyline2D> shorelines;
        const std::vector<GeoFeature> features =
            parse_geojson(read_text_file(*opts.shorelines_geojson));
        for (const GeoFeature& f : features) {
            if (f.is_polygon()) {
                throw ParseError("shorelines file: feature '" + f.name +
                                 "' must be a LineString");
            }
            if (!shorelines.emplace(f.name, f.polyline()).second) {
                throw ParseError("shorelines file: duplicate feature '" + f.name + "'");
            }
        }
        for (MunicipalityRecord& r : records) {
            if (const auto it = shorelines.find(r.name); it != shorelines.end()) {
                r.shoreline = it->second;
            }
        }
    }

    std::vector<MunicipalityRecord> selected;
    if (opts.only.empty()) {
        selected = records;
    } else {
        std::set<std::string> wanted(opts.only.begin(), opts.only.end());
        for (const std::string& name : wanted) {
            const bool known = std::any_of(records.begin(), records.end(),
                                           [&](const auto& r) { return r.name == name; });
            if (!known) {
                throw ParseError("--only: unknown municipality '" + name + "'");
            }
        }
        for (const MunicipalityRecord& r : records) {
            if (wanted.count(r.name)) selected.push_back(r);
        }
    }

    std::vector<MunicipalityRecord> guests;
    if (opts.serving_subset.empty()) {
        guests = selected;
    } else {
        std::set<std::string> wanted(opts.serving_subset.begin(),
                                     opts.serving_subset.end());
        for (const std::string& name : wanted) {
            const bool known = std::any_of(selected.begin(), selected.end(),
                                           [&](const auto& r) { return r.name == name; });
            if (!known) {
                throw ParseError("--serving-subset: unknown municipality '" + name + "'");
            }
        }
        for (const MunicipalityRecord& r : selected) {
            if (wanted.count(r.name)) guests.push_back(r);
        }
    }

    std::filesystem::create_directories(opts.out_dir);

    std::vector<MunicipalityReport> reports(selected.size());
    const int jobs = std::max(
        1, std::min<int>(opts.jobs, static_cast<int>(selected.size())));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < selected.size(); ++i) {
            reports[i] = build_municipality(selected[i], opts.config, opts.out_dir);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < selected.size();
                     i = next.fetch_add(1)) {
                    reports[i] = build_municipality(selected[i], opts.config, opts.out_dir);
                }
            });
        }
        for (std::thread& t : workers) t.join();
    }

    const ServingReport serving = build_serving(guests, opts.config, opts.out_dir);

    GenerateResult result;
    result.manifest_json = build_manifest(reports, serving, opts.config);
    write_file_atomic(opts.out_dir / "manifest.json", result.manifest_json);
    write_file_atomic(opts.out_dir / "booklet.md", render_booklet(result.manifest_json));

    for (const MunicipalityReport& rep : reports) {
        if (!rep.ok) result.failures.push_back(rep.record.name + ": " + rep.error);
    }
    if (!serving.ok) {
        result.failures.push_back("serving plate: " + serving.error);
    }
    result.exit_code = result.failures.empty() ? 0 : 1;
    return result;
}

void run_derive(const DeriveOptions& opts) {
    auto load_grid = [](const std::filesystem::path& path) {
        try {
            return parse_ascii_grid(read_text_file(path));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
    };
    const RasterGrid dem = load_grid(opts.dem_asc);
    const RasterGrid builtup = load_grid(opts.builtup_asc);

    auto load_features = [](const std::filesystem::path& path) {
        try {
            return parse_geojson(read_text_file(path));
        } catch (const ParseError& e) {
            throw ParseError(path.string() + ": " + e.what());
        }
    };

    std::vector<std::pair<std::string, Polygon2D>> zones;
    for (const GeoFeature& f : load_features(opts.zones_geojson)) {
        if (!f.is_polygon()) {
            throw ParseError("zones file: feature '" + f.name + "' must be a Polygon");
        }
        for (const auto& [name, poly] : zones) {
            if (name == f.name) {
                throw ParseError("zones file: duplicate feature '" + f.name + "'");
            }
        }
        zones.emplace_back(f.name, f.polygon());
    }
    if (zones.empty()) {
        throw ParseError("zones file lists no Polygon features");
    }

    std::map<std::string, Polyline2D> profiles;
    for (const GeoFeature& f : load_features(opts.profiles_geojson)) {
        if (f.is_polygon()) {
            throw ParseError("profiles file: feature '" + f.name +
                             "' must be a LineString");
        }
        if (!profiles.emplace(f.name, f.polyline()).second) {
            throw ParseError("profiles file: duplicate feature '" + f.name + "'");
        }
    }

    std::string csv = "name,builtup_fraction,slope_percent\n";
    for (const auto& [name, polygon] : zones) {
        const auto it = profiles.find(name);
        if (it == profiles.end()) {
            throw ParseError("no elevation profile line for municipality '" + name + "'");
        }
        const ZonalResult zonal = builtup_fraction(builtup, polygon);
        const ElevationProfile profile =
            extract_profile(dem, it->second.points.front(),
                            it->second.points.back(), opts.samples);
        const double slope = slope_percent(profile);
        csv += name + "," + shortest_double(zonal.fraction) + "," +
               shortest_double(slope) + "\n";
    }
    if (opts.output_csv.has_parent_path()) {
        std::filesystem::create_directories(opts.output_csv.parent_path());
    }
    write_file_atomic(opts.output_csv, csv);
}

ValidateResult run_validate(const std::filesystem::path& out_dir) {
    using json = nlohmann::json;
    const std::string text = read_text_file(out_dir / "manifest.json");
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("manifest.json: invalid JSON: ") + e.what());
    }

    ValidateResult result;
    auto problem = [&](const std::string& msg) { result.problems.push_back(msg); };

    auto check_vessels = [&](const std::string& label, const json& vessels) {
        double jug_interior = 0.0, jug_fraction = 0.0, jug_concrete_volume = 0.0;
        bool saw_jug = false, saw_jug_concrete = false;
        for (const auto& vessel : vessels) {
            const std::string file = vessel["file"].get<std::string>();
            const std::string kind = vessel["kind"].get<std::string>();
            TriangleMesh mesh;
            try {
                mesh = import_stl(out_dir / file);
            } catch (const ParseError& e) {
                problem(e.what());
                continue;
            }
            ++result.meshes_checked;
            const MeshStats stats = mesh_stats(mesh, false);
            if (!stats.watertight) {
                problem(file + ": mesh is not watertight");
                continue;
            }
            long long expected_genus = 0;
            if (kind == "mug") {
                expected_genus = vessel["spec"]["perforation_count"].get<long long>();
            }
            if (stats.genus != expected_genus) {
                problem(file + ": genus law violated: expected genus " +
                        std::to_string(expected_genus) + ", mesh has genus " +
                        std::to_string(stats.genus));
            }
            const double recorded = vessel["mesh"]["volume_mm3"].get<double>();
            const double actual = stats.signed_volume_mm3;
            const double scale = std::max({std::abs(recorded), std::abs(actual), 1.0});
            if (std::abs(recorded - actual) > 1e-4 * scale) {
                problem(file + ": volume mismatch: manifest says " +
                        shortest_double(recorded) + " mm^3, mesh measures " +
                        shortest_double(actual) + " mm^3");
            }
            if (kind == "jug") {
                saw_jug = true;
                jug_interior = vessel["spec"]["interior_volume_mm3"].get<double>();
                jug_fraction = vessel["spec"]["concrete_fraction"].get<double>();
            }
            if (kind == "jug_concrete") {
                saw_jug_concrete = true;
                jug_concrete_volume = actual;
            }
        }
        if (saw_jug && jug_interior > 0.0) {
            const double ratio = saw_jug_concrete ? jug_concrete_volume / jug_interior : 0.0;
            if (std::abs(ratio - jug_fraction) > 0.01) {
                problem(label + ": jug concrete inconsistency: manifest fraction " +
                        shortest_double(jug_fraction) + ", meshes give " +
                        shortest_double(ratio));
            }
        }
    };

    for (const auto& entry : root["municipalities"]) {
        if (entry["status"] == "ok") {
            check_vessels(entry["name"].get<std::string>(), entry["vessels"]);
        }
    }
    if (root["serving_plate"]["status"] == "ok") {
        check_vessels("serving plate", root["serving_plate"]["vessels"]);
    }
    result.exit_code = result.problems.empty() ? 0 : 1;
    return result;
}

std::string run_report(const std::filesystem::path& manifest_path) {
    return render_booklet(read_text_file(manifest_path));
}

}  // namespace dataware

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dataware/cli.hpp"
#include "dataware/config.hpp"
#include "dataware/errors.hpp"
#include "dataware/exporters.hpp"
#include "dataware/pipeline.hpp"
#include "dataware/version.hpp"

namespace dataware {

namespace {

Config resolve_config(const std::string& config_path) {
    if (config_path.empty()) return Config{};
    return load_config_file(config_path);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Compiles municipality ecology records into fabrication-ready "
                 "tableware geometry",
                 std::string(k_tool_name)};
    app.set_version_flag("--version", std::string(k_version));
    app.require_subcommand(1);

    // Shared options.  --config falls back to the environment when the flag
    // is absent.
    std::string config_path;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Config file (key = value lines)")
            ->envname(k_config_env_var);
    };

    // generate ---------------------------------------------------------------
    auto* generate = app.add_subcommand(
        "generate", "Build every vessel set plus manifest and booklet");
    std::string records_path;
    std::string shorelines_path;
    std::string out_dir = "out";
    std::vector<std::string> only;
    std::vector<std::string> serving_subset;
    int jobs = 1;
    generate->add_option("records", records_path, "Municipality records CSV")
        ->required();
    generate->add_option("--shorelines", shorelines_path,
                         "GeoJSON with one named LineString per municipality");
    generate->add_option("--out", out_dir, "Output directory")->capture_default_str();
    generate->add_option("--only", only, "Restrict to these municipalities")
        ->delimiter(',');
    generate->add_option("--serving-subset", serving_subset,
                         "Municipalities averaged into the serving plate")
        ->delimiter(',');
    generate->add_option("--jobs", jobs, "Municipalities meshed concurrently")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_config(generate);

    // derive -----------------------------------------------------------------
    auto* derive = app.add_subcommand(
        "derive", "Compute built-up fraction and slope from geodata");
    std::string dem_path, builtup_path, zones_path, profiles_path, derived_csv;
    int samples = 0;
    derive->add_option("--dem", dem_path, "Elevation raster (ESRI ASCII grid)")
        ->required();
    derive->add_option("--builtup", builtup_path, "Built-up score raster (0-100)")
        ->required();
    derive->add_option("--zones", zones_path, "GeoJSON Polygon zone per municipality")
        ->required();
    derive->add_option("--profiles", profiles_path,
                       "GeoJSON LineString slope profile per municipality")
        ->required();
    derive->add_option("output", derived_csv, "Derived-values CSV to write")
        ->required();
    derive->add_option("--samples", samples,
                       "Elevation samples per profile (default from config)");
    add_config(derive);

    // validate ---------------------------------------------------------------
    auto* validate = app.add_subcommand(
        "validate", "Re-check every STL in a generated output tree");
    std::string validate_dir;
    validate->add_option("tree", validate_dir, "Output directory with manifest.json")
        ->required();

    // report -----------------------------------------------------------------
    auto* report = app.add_subcommand(
        "report", "Re-render the booklet from an existing manifest");
    std::string manifest_path;
    std::string report_out;
    report->add_option("manifest", manifest_path, "Path to manifest.json")->required();
    report->add_option("--out", report_out,
                       "Directory for booklet.md (default: beside the manifest)");

    std::vector<std::string> cli_args(args.rbegin(), args.rend());
    try {
        app.parse(cli_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) {
            GenerateOptions opts;
            opts.records_csv = records_path;
            if (!shorelines_path.empty()) opts.shorelines_geojson = shorelines_path;
            opts.out_dir = out_dir;
            opts.config = resolve_config(config_path);
            opts.only = only;
            opts.serving_subset = serving_subset;
            opts.jobs = jobs;
            const GenerateResult result = run_generate(opts);
            for (const std::string& failure : result.failures) {
                std::fprintf(stderr, "failed: %s\n", failure.c_str());
            }
            std::fprintf(stderr, "%s\n",
                         result.exit_code == 0 ? "all vessel sets generated"
                                               : "some vessel sets failed");
            return result.exit_code;
        }
        if (derive->parsed()) {
            const Config cfg = resolve_config(config_path);
            DeriveOptions opts;
            opts.dem_asc = dem_path;
            opts.builtup_asc = builtup_path;
            opts.zones_geojson = zones_path;
            opts.profiles_geojson = profiles_path;
            opts.output_csv = derived_csv;
            opts.samples = samples > 0 ? samples : cfg.profile_samples;
            run_derive(opts);
            return 0;
        }
        if (validate->parsed()) {
            const ValidateResult result = run_validate(validate_dir);
            for (const std::string& p : result.problems) {
                std::fprintf(stderr, "problem: %s\n", p.c_str());
            }
            std::fprintf(stderr, "%d meshes checked, %zu problems\n",
                         result.meshes_checked, result.problems.size());
            return result.exit_code;
        }
        if (report->parsed()) {
            const std::string booklet = run_report(manifest_path);
            const std::filesystem::path manifest{manifest_path};
            const std::filesystem::path dir =
                report_out.empty() ? manifest.parent_path()
                                   : std::filesystem::path(report_out);
            if (!dir.empty()) std::filesystem::create_directories(dir);
            write_file_atomic(dir / "booklet.md", booklet);
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;  // unreachable: a subcommand is required
}

}  // namespace dataware

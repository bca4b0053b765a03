#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <dataware/cli.hpp>

#include "test_helpers.hpp"

using namespace dataware;
namespace fs = std::filesystem;

namespace {

const std::string k_fast_config =
    "# coarse meshes keep the test quick\n"
    "revolve_segments = 64\n";

std::string records_path() { return (testutil::fixture_dir() / "records.csv").string(); }
std::string shorelines_path() {
    return (testutil::fixture_dir() / "shorelines.geojson").string();
}

}  // namespace

TEST_CASE("version and argument errors use the documented exit codes") {
    CHECK(run_cli({"--version"}) == 0);
    CHECK(run_cli({}) == 2);                      // a subcommand is required
    CHECK(run_cli({"frobnicate"}) == 2);          // unknown subcommand
    CHECK(run_cli({"generate"}) == 2);            // records argument missing
    CHECK(run_cli({"report"}) == 2);              // manifest argument missing
}

TEST_CASE("missing input files exit with code 2") {
    testutil::TempDir tmp;
    CHECK(run_cli({"generate", (tmp.path / "nope.csv").string(),
                   "--out", (tmp.path / "out").string()}) == 2);
    CHECK(run_cli({"validate", (tmp.path / "missing").string()}) == 2);
    CHECK(run_cli({"report", (tmp.path / "missing.json").string()}) == 2);
}

TEST_CASE("selection flags reject unknown municipalities") {
    testutil::TempDir tmp;
    const std::string cfg_path = (tmp.path / "fast.cfg").string();
    testutil::write_file(cfg_path, k_fast_config);
    CHECK(run_cli({"generate", records_path(), "--shorelines", shorelines_path(),
                   "--out", (tmp.path / "out").string(), "--config", cfg_path,
                   "--only", "Atlantis"}) == 2);
    CHECK(run_cli({"generate", records_path(), "--shorelines", shorelines_path(),
                   "--out", (tmp.path / "out").string(), "--config", cfg_path,
                   "--only", "Tihany", "--serving-subset", "Zánka"}) == 2);
}

TEST_CASE("generate, validate and report round-trip a small batch") {
    testutil::TempDir tmp;
    const std::string cfg_path = (tmp.path / "fast.cfg").string();
    testutil::write_file(cfg_path, k_fast_config);
    const fs::path out = tmp.path / "out";

    CHECK(run_cli({"generate", records_path(), "--shorelines", shorelines_path(),
                   "--out", out.string(), "--config", cfg_path,
                   "--only", "Tihany,Zánka"}) == 0);
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "booklet.md"));
    CHECK(fs::exists(out / "Tihany" / "mug.stl"));
    CHECK(fs::exists(out / "Tihany" / "flat_plate_glass.svg"));
    CHECK(fs::exists(out / "Zánka" / "deep_plate.stl"));
    CHECK(fs::exists(out / "serving_plate.stl"));

    const std::string manifest = testutil::read_file(out / "manifest.json");
    CHECK(manifest.find("\"Tihany\"") != std::string::npos);
    CHECK(manifest.find("\"status\": \"failed\"") == std::string::npos);

    CHECK(run_cli({"validate", out.string()}) == 0);

    const fs::path report_dir = tmp.path / "rendered";
    CHECK(run_cli({"report", (out / "manifest.json").string(),
                   "--out", report_dir.string()}) == 0);
    const std::string booklet = testutil::read_file(report_dir / "booklet.md");
    CHECK(booklet.find("## Tihany") != std::string::npos);
    CHECK(booklet == testutil::read_file(out / "booklet.md"));
}

TEST_CASE("config file can come from the environment") {
    testutil::TempDir tmp;
    const std::string cfg_path = (tmp.path / "env.cfg").string();
    testutil::write_file(cfg_path, k_fast_config + "firing_kwh_per_piece = 2.25\n");
    setenv("DATAWARE_CONFIG", cfg_path.c_str(), 1);
    const fs::path out = tmp.path / "out";
    const int code = run_cli({"generate", records_path(), "--shorelines",
                              shorelines_path(), "--out", out.string(),
                              "--only", "Tihany"});
    unsetenv("DATAWARE_CONFIG");
    CHECK(code == 0);
    const std::string manifest = testutil::read_file(out / "manifest.json");
    CHECK(manifest.find("\"firing_kwh_per_piece\": 2.25") != std::string::npos);
    CHECK(manifest.find("\"revolve_segments\": 64") != std::string::npos);
}

TEST_CASE("a failing municipality is reported but does not stop the batch") {
    testutil::TempDir tmp;
    const std::string cfg_path = (tmp.path / "fast.cfg").string();
    testutil::write_file(cfg_path, k_fast_config);

    // "Notown" parses and validates but has no reedbed, so its mug is
    // undefined and the whole set fails at encode time.
    const std::string csv_path = (tmp.path / "records.csv").string();
    testutil::write_file(
        csv_path,
        "name,reedbed_length_m,reedbed_cuts,avg_cut_distance_m,coastline_length_m,"
        "artificial_shoreline_m,builtup_fraction,slope_percent\n"
        "Goodtown,2500,10,180,4000,1000,0.12,9\n"
        "Notown,0,0,0,4000,1000,0.12,9\n");
    const std::string geo_path = (tmp.path / "shorelines.geojson").string();
    testutil::write_file(
        geo_path,
        R"({"type":"FeatureCollection","features":[
          {"type":"Feature","properties":{"name":"Goodtown"},
           "geometry":{"type":"LineString","coordinates":[[0,0],[2240,0],[2240,1120]]}},
          {"type":"Feature","properties":{"name":"Notown"},
           "geometry":{"type":"LineString","coordinates":[[0,0],[2240,0],[2240,1120]]}}
        ]})");

    const fs::path out = tmp.path / "out";
    CHECK(run_cli({"generate", csv_path, "--shorelines", geo_path,
                   "--out", out.string(), "--config", cfg_path}) == 1);

    const std::string manifest = testutil::read_file(out / "manifest.json");
    CHECK(manifest.find("\"status\": \"failed\"") != std::string::npos);
    CHECK(manifest.find("no reedbed") != std::string::npos);
    CHECK(fs::exists(out / "Goodtown" / "mug.stl"));
    CHECK(!fs::exists(out / "Notown"));

    const std::string booklet = testutil::read_file(out / "booklet.md");
    CHECK(booklet.find("Generation failed") != std::string::npos);
}

TEST_CASE("derive reproduces the designed demo values") {
    testutil::TempDir tmp;
    const fs::path csv = tmp.path / "derived.csv";
    CHECK(run_cli({"derive",
                   "--dem", (testutil::demo_dir() / "dem.asc").string(),
                   "--builtup", (testutil::demo_dir() / "builtup.asc").string(),
                   "--zones", (testutil::demo_dir() / "zones.geojson").string(),
                   "--profiles", (testutil::demo_dir() / "profiles.geojson").string(),
                   csv.string()}) == 0);
    const std::string text = testutil::read_file(csv);
    CHECK(text.find("name,builtup_fraction,slope_percent\n") == 0);

    // The demo zones carry a constant built-up score (12 and 37) and the
    // demo elevation is an affine ramp (5% along x, 12% along y), so the
    // derived values are the designed ones up to accumulation rounding.
    std::map<std::string, std::pair<double, double>> rows;
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        REQUIRE(c2 != std::string::npos);
        rows[line.substr(0, c1)] = {std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                                    std::stod(line.substr(c2 + 1))};
    }
    REQUIRE(rows.size() == 2);
    CHECK(rows.at("Alsóörs").first == doctest::Approx(0.12).epsilon(1e-12));
    CHECK(rows.at("Alsóörs").second == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(rows.at("Csopak").first == doctest::Approx(0.37).epsilon(1e-12));
    CHECK(rows.at("Csopak").second == doctest::Approx(12.0).epsilon(1e-9));
}

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dataware/config.hpp"

namespace dataware {

// Exit-code contract shared by every subcommand:
// 0 success, 1 partial/validation failure, 2 input error.

struct GenerateOptions {
    std::filesystem::path records_csv;
    std::optional<std::filesystem::path> shorelines_geojson;
    std::filesystem::path out_dir;
    Config config{};
    std::vector<std::string> only;            ///< municipality filter; empty = all
    std::vector<std::string> serving_subset;  ///< dinner guests; empty = all selected
    int jobs = 1;                             ///< municipalities meshed concurrently
};

struct GenerateResult {
    int exit_code = 0;
    std::string manifest_json;
    std::vector<std::string> failures;  ///< "name: reason" per failed set
};

/// Builds every vessel set, the serving plate, manifest.json and booklet.md
/// under out_dir.  A failing municipality is reported and skipped; the rest
/// of the batch still completes.  Throws ParseError on unusable inputs.
GenerateResult run_generate(const GenerateOptions& opts);

struct DeriveOptions {
    std::filesystem::path dem_asc;
    std::filesystem::path builtup_asc;
    std::filesystem::path zones_geojson;     ///< named Polygon features
    std::filesystem::path profiles_geojson;  ///< named LineString features
    std::filesystem::path output_csv;
    int samples = 256;  ///< elevation samples per profile line
};

/// Computes builtup_fraction and slope_percent per zone and writes a CSV
/// mergeable with the records file.  Throws on any input problem; the output
/// file is written atomically or not at all.
void run_derive(const DeriveOptions& opts);

struct ValidateResult {
    int exit_code = 0;
    int meshes_checked = 0;
    std::vector<std::string> problems;
};

/// Re-imports every STL referenced by out_dir/manifest.json and re-checks
/// watertightness, the genus law, and volume/fraction consistency.
ValidateResult run_validate(const std::filesystem::path& out_dir);

/// Renders the booklet markdown from an existing manifest file.
std::string run_report(const std::filesystem::path& manifest_path);

}  // namespace dataware

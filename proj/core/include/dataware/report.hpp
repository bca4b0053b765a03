#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dataware/config.hpp"
#include "dataware/mesh.hpp"
#include "dataware/records.hpp"

namespace dataware {

// Mesh diagnostics as they appear in the manifest.
struct MeshSummary {
    std::size_t vertex_count = 0;
    std::size_t triangle_count = 0;
    long long euler = 0;
    int genus = -1;
    bool watertight = false;
    double volume_mm3 = 0.0;
    double min_wall_mm = 0.0;
};

MeshSummary summarize_mesh(const TriangleMesh& mesh, bool estimate_wall = true);

// One exported artifact.  `numbers`, `integers` and `flags` hold the spec
// values in a fixed order so the manifest serializes deterministically.
struct VesselReport {
    std::string kind;
    std::string file;  // path relative to the output directory
    std::vector<std::pair<std::string, std::string>> extra_files;
    std::vector<std::pair<std::string, double>> numbers;
    std::vector<std::pair<std::string, long long>> integers;
    std::vector<std::pair<std::string, bool>> flags;
    MeshSummary mesh;
};

struct MunicipalityReport {
    MunicipalityRecord record;
    bool ok = true;
    std::string error;
    std::vector<VesselReport> vessels;
};

struct ServingReport {
    bool ok = true;
    std::string error;
    std::vector<std::string> municipalities;
    std::vector<std::pair<std::string, double>> numbers;
    std::vector<std::pair<std::string, bool>> flags;
    std::vector<VesselReport> vessels;
};

struct MaterialsEstimate {
    int piece_count = 0;  // kiln-fired ceramic pieces; concrete inserts excluded
    double concrete_volume_mm3 = 0.0;
    double concrete_mass_kg = 0.0;
    double firing_energy_kwh = 0.0;
};

MaterialsEstimate materials_estimate(const std::vector<MunicipalityReport>& sets,
                                     const ServingReport& serving,
                                     const Config& cfg);

// Deterministic UTF-8 JSON document: stable key order, floats rounded to six
// significant digits.  Regenerating from identical inputs is byte-identical.
std::string build_manifest(const std::vector<MunicipalityReport>& sets,
                           const ServingReport& serving, const Config& cfg);

// Renders the human-readable markdown booklet from a manifest document:
// one section per municipality plus a serving-plate section and totals.
std::string render_booklet(const std::string& manifest_json);

}  // namespace dataware

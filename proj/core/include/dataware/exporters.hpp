#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dataware/geometry.hpp"
#include "dataware/mesh.hpp"

namespace dataware {

/// Serializes to binary STL (little-endian, millimeters).  Facet normals are
/// recomputed from the float32-rounded vertices, so export → parse → export
/// reproduces the byte stream exactly.
std::string stl_bytes(const TriangleMesh& mesh);

/// Parses binary STL strictly: the byte count must match the triangle count
/// exactly.  Vertices with identical float bit patterns are merged so shared
/// edges survive the round trip.  `source_name` seasons error messages.
TriangleMesh parse_stl(const std::string& bytes, const std::string& source_name = "STL");

void export_stl(const TriangleMesh& mesh, const std::filesystem::path& path);
TriangleMesh import_stl(const std::filesystem::path& path);

/// A cutting outline for the glass sheet: the polyline in millimeter
/// coordinates (y up) drawn inside a frame_w x frame_h viewBox (y down).
std::string svg_outline(const std::vector<Vec2>& outline_mm, double frame_w_mm,
                        double frame_h_mm);

/// Writes via a temporary file in the same directory plus an atomic rename,
/// so readers never observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

}  // namespace dataware

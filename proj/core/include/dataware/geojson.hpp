#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dataware/geometry.hpp"

namespace dataware {

/// One feature from a GeoJSON FeatureCollection.  Only Polygon (single
/// ring, no holes) and LineString geometries are accepted.
struct GeoFeature {
    std::string name;  ///< properties.name, empty when absent
    std::variant<Polygon2D, Polyline2D> geometry;

    bool is_polygon() const { return std::holds_alternative<Polygon2D>(geometry); }
    const Polygon2D& polygon() const { return std::get<Polygon2D>(geometry); }
    const Polyline2D& polyline() const { return std::get<Polyline2D>(geometry); }
};

/// Parses a GeoJSON FeatureCollection.  Unsupported geometry types, polygon
/// holes, and malformed coordinates throw ParseError naming the feature.
std::vector<GeoFeature> parse_geojson(std::string_view text);

/// Serializes contour rings as a GeoJSON FeatureCollection of Polygons,
/// each tagged with the iso level.  Deterministic output.
std::string write_contours_geojson(const std::vector<Polygon2D>& rings, double level);

}  // namespace dataware

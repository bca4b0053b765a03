#include "dataware/geojson.hpp"

#include <json.hpp>

#include "dataware/errors.hpp"

namespace dataware {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::vector<Vec2> read_positions(const json& coords, const std::string& where) {
    if (!coords.is_array()) {
        throw ParseError(where + ": coordinates must be an array");
    }
    std::vector<Vec2> points;
    points.reserve(coords.size());
    for (const json& pos : coords) {
        if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
            throw ParseError(where + ": each position must be an [x, y] number pair");
        }
        points.push_back({pos[0].get<double>(), pos[1].get<double>()});
    }
    return points;
}

}  // namespace

std::vector<GeoFeature> parse_geojson(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection") {
        throw ParseError("expected a GeoJSON FeatureCollection");
    }
    const auto features_it = doc.find("features");
    if (features_it == doc.end() || !features_it->is_array()) {
        throw ParseError("FeatureCollection has no 'features' array");
    }

    std::vector<GeoFeature> out;
    int index = 0;
    for (const json& feature : *features_it) {
        const std::string where = "feature " + std::to_string(index);
        if (!feature.is_object() || feature.value("type", "") != "Feature") {
            throw ParseError(where + ": expected a Feature object");
        }
        std::string name;
        if (const auto props = feature.find("properties");
            props != feature.end() && props->is_object()) {
            name = props->value("name", "");
        }
        const auto geom_it = feature.find("geometry");
        if (geom_it == feature.end() || !geom_it->is_object()) {
            throw ParseError(where + ": missing geometry");
        }
        const std::string gtype = geom_it->value("type", "");
        const auto coords_it = geom_it->find("coordinates");
        if (coords_it == geom_it->end()) {
            throw ParseError(where + ": geometry has no coordinates");
        }

        if (gtype == "Polygon") {
            if (!coords_it->is_array() || coords_it->empty()) {
                throw ParseError(where + ": Polygon needs at least one ring");
            }
            if (coords_it->size() > 1) {
                throw ParseError(where + ": polygons with holes are not supported");
            }
            std::vector<Vec2> ring = read_positions((*coords_it)[0], where);
            try {
                out.push_back({name, Polygon2D{std::move(ring)}});
            } catch (const GeometryError& e) {
                throw ParseError(where + ": " + e.what());
            }
        } else if (gtype == "LineString") {
            std::vector<Vec2> points = read_positions(*coords_it, where);
            try {
                out.push_back({name, Polyline2D{std::move(points)}});
            } catch (const GeometryError& e) {
                throw ParseError(where + ": " + e.what());
            }
        } else {
            throw ParseError(where + ": unsupported geometry type '" + gtype +
                             "' (only Polygon and LineString are accepted)");
        }
        ++index;
    }
    return out;
}

std::string write_contours_geojson(const std::vector<Polygon2D>& rings, double level) {
    ordered_json features = ordered_json::array();
    int index = 0;
    for (const Polygon2D& ring : rings) {
        ordered_json coords = ordered_json::array();
        for (const Vec2& v : ring.vertices()) {
            coords.push_back(ordered_json::array({v.x, v.y}));
        }
        // GeoJSON rings repeat the first position at the end.
        const Vec2& first = ring.vertices().front();
        coords.push_back(ordered_json::array({first.x, first.y}));

        ordered_json feature = {
            {"type", "Feature"},
            {"properties", {{"ring", index}, {"level", level}}},
            {"geometry",
             {{"type", "Polygon"}, {"coordinates", ordered_json::array({std::move(coords)})}}},
        };
        features.push_back(std::move(feature));
        ++index;
    }
    ordered_json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
    return doc.dump(2) + "\n";
}

}  // namespace dataware

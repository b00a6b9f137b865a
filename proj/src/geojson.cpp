#include "emgeo/spatial.hpp"

#include "emgeo/error.hpp"

#include <json.hpp>

#include <fstream>

namespace emgeo {

using nlohmann::json;

namespace {

// GeoJSON positions are [lng, lat]; extra elements (altitude) are ignored.
GeoPoint parse_position(const json& position, const std::string& where)
{
    if (!position.is_array() || position.size() < 2 || !position[0].is_number() ||
        !position[1].is_number()) {
        throw Error(ErrorKind::Format, "expected a [lng, lat] position at " + where);
    }
    return GeoPoint{position[1].get<double>(), position[0].get<double>()};
}

PolygonRing parse_ring(const json& ring, const std::string& where)
{
    if (!ring.is_array()) {
        throw Error(ErrorKind::Format, "expected a ring (array of positions) at " + where);
    }
    PolygonRing out;
    out.vertices.reserve(ring.size());
    for (size_t i = 0; i < ring.size(); ++i) {
        out.vertices.push_back(parse_position(ring[i], where + "[" + std::to_string(i) + "]"));
    }
    // Drop the closing duplicate; rings are implicitly closed.
    if (out.vertices.size() > 1 && out.vertices.front() == out.vertices.back()) {
        out.vertices.pop_back();
    }
    return out;
}

Polygon parse_polygon_coordinates(const json& rings, const std::string& where)
{
    if (!rings.is_array() || rings.empty()) {
        throw Error(ErrorKind::Format, "polygon at " + where + " has no rings");
    }
    Polygon polygon;
    polygon.outer = parse_ring(rings[0], where + ".rings[0]");
    for (size_t i = 1; i < rings.size(); ++i) {
        polygon.holes.push_back(parse_ring(rings[i], where + ".rings[" + std::to_string(i) + "]"));
    }
    return polygon;
}

void parse_geometry(const json& node, PolygonSet& out, const std::string& where)
{
    if (!node.is_object()) {
        throw Error(ErrorKind::Format, "expected a GeoJSON object at " + where);
    }
    const std::string type = node.value("type", std::string{});
    if (type == "Polygon") {
        out.polygons.push_back(parse_polygon_coordinates(node.at("coordinates"), where));
        return;
    }
    if (type == "MultiPolygon") {
        const auto& coords = node.at("coordinates");
        if (!coords.is_array()) {
            throw Error(ErrorKind::Format, "MultiPolygon coordinates at " + where + " must be an array");
        }
        for (size_t i = 0; i < coords.size(); ++i) {
            out.polygons.push_back(
                parse_polygon_coordinates(coords[i], where + ".polygons[" + std::to_string(i) + "]"));
        }
        return;
    }
    if (type == "Feature") {
        const auto& geometry = node.at("geometry");
        if (geometry.is_null()) {
            return; // feature without geometry contributes nothing
        }
        parse_geometry(geometry, out, where + ".geometry");
        return;
    }
    if (type == "FeatureCollection") {
        const auto& features = node.at("features");
        if (!features.is_array()) {
            throw Error(ErrorKind::Format, "features at " + where + " must be an array");
        }
        for (size_t i = 0; i < features.size(); ++i) {
            parse_geometry(features[i], out, where + ".features[" + std::to_string(i) + "]");
        }
        return;
    }
    if (type.empty()) {
        throw Error(ErrorKind::Format, "GeoJSON object at " + where + " has no type");
    }
    throw Error(ErrorKind::Format,
                "unsupported GeoJSON type '" + type + "' at " + where +
                    " (Polygon, MultiPolygon, Feature, FeatureCollection)");
}

} // namespace

PolygonSet parse_geojson(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Format, std::string("malformed GeoJSON: ") + e.what());
    }
    PolygonSet out;
    try {
        parse_geometry(doc, out, "$");
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Format, std::string("malformed GeoJSON: ") + e.what());
    }
    for (const auto& polygon : out.polygons) {
        if (polygon.outer.vertices.size() < 3) {
            throw Error(ErrorKind::Validation, "GeoJSON polygon ring has fewer than 3 vertices");
        }
    }
    return out;
}

PolygonSet load_region(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open region file: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_geojson(text);
    } catch (Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

} // namespace emgeo

#include "emgeo/spatial.hpp"

#include "emgeo/error.hpp"
#include "emgeo/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace emgeo {

void BoundingBox::validate() const
{
    if (!valid_latitude(top_left.lat) || !valid_latitude(bottom_right.lat) ||
        !valid_longitude(top_left.lng) || !valid_longitude(bottom_right.lng)) {
        throw Error(ErrorKind::Config, "bounding box corners must be valid coordinates");
    }
    if (top_left.lat < bottom_right.lat) {
        throw Error(ErrorKind::Config, "bounding box top-left latitude is below the bottom-right");
    }
    if (top_left.lng > bottom_right.lng) {
        throw Error(ErrorKind::Config,
                    "bounding box top-left longitude is east of the bottom-right (antimeridian "
                    "boxes are not supported)");
    }
}

bool BoundingBox::contains(GeoPoint point) const
{
    return point.lat >= bottom_right.lat && point.lat <= top_left.lat &&
           point.lng >= top_left.lng && point.lng <= bottom_right.lng;
}

namespace {

size_t distinct_vertex_count(const PolygonRing& ring)
{
    std::vector<GeoPoint> seen;
    for (const auto& v : ring.vertices) {
        if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
            seen.push_back(v);
        }
    }
    return seen.size();
}

// Squared distance from p to the segment [a, b] in plain degree space.
double segment_distance_sq(GeoPoint p, GeoPoint a, GeoPoint b)
{
    const double abx = b.lng - a.lng;
    const double aby = b.lat - a.lat;
    const double apx = p.lng - a.lng;
    const double apy = p.lat - a.lat;
    const double len_sq = abx * abx + aby * aby;
    double t = 0.0;
    if (len_sq > 0.0) {
        t = std::clamp((apx * abx + apy * aby) / len_sq, 0.0, 1.0);
    }
    const double dx = apx - t * abx;
    const double dy = apy - t * aby;
    return dx * dx + dy * dy;
}

bool ring_near_edge(GeoPoint p, const PolygonRing& ring)
{
    const auto& v = ring.vertices;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        if (segment_distance_sq(p, v[i], v[(i + 1) % n]) <= kEdgeTolerance * kEdgeTolerance) {
            return true;
        }
    }
    return false;
}

// Standard crossing-count with the ray running east; toggles once per edge
// straddling the point's latitude.
bool ring_crossings_odd(GeoPoint p, const PolygonRing& ring)
{
    const auto& v = ring.vertices;
    const size_t n = v.size();
    bool odd = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const GeoPoint& a = v[i];
        const GeoPoint& b = v[j];
        if ((a.lat > p.lat) != (b.lat > p.lat)) {
            const double x = (b.lng - a.lng) * (p.lat - a.lat) / (b.lat - a.lat) + a.lng;
            if (p.lng < x) {
                odd = !odd;
            }
        }
    }
    return odd;
}

} // namespace

void PolygonSet::validate() const
{
    if (empty()) {
        throw Error(ErrorKind::Config, "polygon set is empty");
    }
    for (const auto& polygon : polygons) {
        if (distinct_vertex_count(polygon.outer) < 3) {
            throw Error(ErrorKind::Validation, "polygon ring has fewer than 3 distinct vertices");
        }
        for (const auto& hole : polygon.holes) {
            if (distinct_vertex_count(hole) < 3) {
                throw Error(ErrorKind::Validation, "polygon hole has fewer than 3 distinct vertices");
            }
        }
    }
}

bool near_polygon_edge(GeoPoint point, const PolygonSet& polygons)
{
    for (const auto& polygon : polygons.polygons) {
        if (ring_near_edge(point, polygon.outer)) {
            return true;
        }
        for (const auto& hole : polygon.holes) {
            if (ring_near_edge(point, hole)) {
                return true;
            }
        }
    }
    return false;
}

bool point_in_polygon(GeoPoint point, const PolygonSet& polygons)
{
    polygons.validate();
    if (near_polygon_edge(point, polygons)) {
        return true;
    }
    for (const auto& polygon : polygons.polygons) {
        bool odd = ring_crossings_odd(point, polygon.outer);
        for (const auto& hole : polygon.holes) {
            if (ring_crossings_odd(point, hole)) {
                odd = !odd;
            }
        }
        if (odd) {
            return true;
        }
    }
    return false;
}

namespace {

std::vector<std::string> membership_column(const Table& table, std::string_view lat_column,
                                           std::string_view lng_column,
                                           std::vector<std::string>* warnings,
                                           const std::function<bool(GeoPoint)>& test)
{
    const size_t lat_idx = table.require_column(lat_column);
    const size_t lng_idx = table.require_column(lng_column);

    std::vector<std::string> cells;
    cells.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        auto lat = parse_coordinate_cell(row[lat_idx], CoordinateAxis::Latitude, warnings);
        auto lng = parse_coordinate_cell(row[lng_idx], CoordinateAxis::Longitude, warnings);
        const bool inside = lat.has_value() && lng.has_value() && test(GeoPoint{*lat, *lng});
        cells.push_back(inside ? "TRUE" : "FALSE");
    }
    return cells;
}

} // namespace

Table located_in_box(const Table& table, const BoundingBox& box, std::string_view lat_column,
                     std::string_view lng_column, std::vector<std::string>* warnings)
{
    box.validate();
    Table out = table;
    out.add_column("in_box", membership_column(table, lat_column, lng_column, warnings,
                                               [&](GeoPoint p) { return box.contains(p); }));
    return out;
}

Table located_in_shapefile(const Table& table, const PolygonSet& polygons, std::string_view lat_column,
                           std::string_view lng_column, std::vector<std::string>* warnings)
{
    polygons.validate();
    Table out = table;
    out.add_column("in_shape", membership_column(table, lat_column, lng_column, warnings,
                                                 [&](GeoPoint p) { return point_in_polygon(p, polygons); }));
    return out;
}

Table located_in_shapefile(const Table& table, const std::filesystem::path& region_file,
                           std::string_view lat_column, std::string_view lng_column,
                           std::vector<std::string>* warnings)
{
    return located_in_shapefile(table, load_region(region_file), lat_column, lng_column, warnings);
}

} // namespace emgeo

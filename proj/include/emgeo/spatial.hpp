#pragma once

#include "emgeo/geo.hpp"
#include "emgeo/table.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace emgeo {

// Rectangle on the latitude-longitude grid, given as its top-left and
// bottom-right corners. Boundaries are inclusive. Boxes never wrap the
// antimeridian.
struct BoundingBox {
    GeoPoint top_left;
    GeoPoint bottom_right;

    void validate() const;
    bool contains(GeoPoint point) const;
};

// Ring vertices are stored without the closing duplicate; the ring is
// implicitly closed.
struct PolygonRing {
    std::vector<GeoPoint> vertices;
};

struct Polygon {
    PolygonRing outer;
    std::vector<PolygonRing> holes;
};

struct PolygonSet {
    std::vector<Polygon> polygons;

    bool empty() const { return polygons.empty(); }
    void validate() const; // every ring needs >= 3 distinct vertices
};

// Distance under which a point counts as on an edge, in degrees.
inline constexpr double kEdgeTolerance = 1e-9;

// Even-odd ray casting per polygon (holes toggle containment), combined
// across polygons as set membership. Points within kEdgeTolerance of any
// edge count as inside.
bool point_in_polygon(GeoPoint point, const PolygonSet& polygons);

// True when the point is within kEdgeTolerance of any ring edge.
bool near_polygon_edge(GeoPoint point, const PolygonSet& polygons);

// Loads a GeoJSON Polygon, MultiPolygon, Feature or FeatureCollection.
PolygonSet load_region(const std::filesystem::path& path);
PolygonSet parse_geojson(std::string_view text);

// Appends a TRUE/FALSE `in_box` column. Rows with missing or unparseable
// coordinates are FALSE.
Table located_in_box(const Table& table, const BoundingBox& box, std::string_view lat_column = "lat",
                     std::string_view lng_column = "lng", std::vector<std::string>* warnings = nullptr);

// Appends a TRUE/FALSE `in_shape` column.
Table located_in_shapefile(const Table& table, const PolygonSet& polygons,
                           std::string_view lat_column = "lat", std::string_view lng_column = "lng",
                           std::vector<std::string>* warnings = nullptr);

Table located_in_shapefile(const Table& table, const std::filesystem::path& region_file,
                           std::string_view lat_column = "lat", std::string_view lng_column = "lng",
                           std::vector<std::string>* warnings = nullptr);

} // namespace emgeo

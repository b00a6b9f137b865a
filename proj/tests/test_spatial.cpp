#include "emgeo/error.hpp"
#include "emgeo/spatial.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace emgeo;

namespace {

PolygonSet unit_square()
{
    PolygonSet set;
    Polygon square;
    square.outer.vertices = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    set.polygons.push_back(square);
    return set;
}

// Table 4 rows: location word plus geocoded coordinates.
Table table4_rows()
{
    Table table;
    table.columns = {"Dis No", "location_word", "lat", "lng"};
    table.rows = {
        {"2000-0919-USA", "alabama", "34.60739", "-86.97977"},
        {"2000-0919-USA", "georgia", "33.69277", "-84.39957"},
        {"2000-0919-USA", "louisiana", "30.12595", "-92.00939"},
        {"2000-0919-USA", "north carolina", "34.00071", "-81.03481"},
        {"2000-0919-USA", "south carolina", "34.00071", "-81.03481"},
        {"2000-0919-USA", "tennessee", "35.80000", "-86.50000"},
    };
    return table;
}

const BoundingBox sample_box{{40.0, -119.0}, {35.0, -75.0}};

// Convex polygon with vertices on an ellipse, ordered by angle (counter
// clockwise). Used by the half-plane oracle below.
Polygon random_convex_polygon(std::mt19937& rng)
{
    std::uniform_real_distribution<double> center_lat(-60.0, 60.0);
    std::uniform_real_distribution<double> center_lng(-150.0, 150.0);
    std::uniform_real_distribution<double> radius(0.5, 12.0);
    std::uniform_int_distribution<int> vertex_count(3, 9);

    const double clat = center_lat(rng);
    const double clng = center_lng(rng);
    const double ra = radius(rng);
    const double rb = radius(rng);

    const int n = vertex_count(rng);
    std::vector<double> angles(static_cast<size_t>(n));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (auto& a : angles) {
        a = angle(rng);
    }
    std::sort(angles.begin(), angles.end());

    Polygon polygon;
    for (double a : angles) {
        polygon.outer.vertices.push_back({clat + rb * std::sin(a), clng + ra * std::cos(a)});
    }
    return polygon;
}

// Inside a convex CCW polygon iff the point is left of (or on) every edge.
bool convex_oracle(GeoPoint p, const Polygon& polygon)
{
    const auto& v = polygon.outer.vertices;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        const GeoPoint& a = v[i];
        const GeoPoint& b = v[(i + 1) % n];
        const double cross = (b.lng - a.lng) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lng - a.lng);
        if (cross < 0) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("bounding boxes validate their corners")
{
    BoundingBox upside_down{{35.0, -119.0}, {40.0, -75.0}};
    CHECK_THROWS_AS(upside_down.validate(), Error);
    BoundingBox crossed{{40.0, -75.0}, {35.0, -119.0}};
    CHECK_THROWS_AS(crossed.validate(), Error);
    BoundingBox huge{{91.0, -119.0}, {35.0, -75.0}};
    CHECK_THROWS_AS(huge.validate(), Error);
    CHECK_NOTHROW(sample_box.validate());
}

TEST_CASE("the sample box flags only tennessee")
{
    auto result = located_in_box(table4_rows(), sample_box);
    const size_t in_box = *result.find_column("in_box");
    const size_t word = *result.find_column("location_word");
    for (const auto& row : result.rows) {
        CHECK(row[in_box] == (row[word] == "tennessee" ? "TRUE" : "FALSE"));
    }
}

TEST_CASE("box boundaries are inclusive and missing coordinates are false")
{
    Table table;
    table.columns = {"lat", "lng"};
    table.rows = {
        {"35", "-75"},    // bottom-right corner
        {"40", "-119"},   // top-left corner
        {"37.5", "-97"},  // interior
        {"", ""},         // missing
        {"34.999", "-97"} // just south
    };
    auto result = located_in_box(table, sample_box);
    const size_t in_box = *result.find_column("in_box");
    CHECK(result.rows[0][in_box] == "TRUE");
    CHECK(result.rows[1][in_box] == "TRUE");
    CHECK(result.rows[2][in_box] == "TRUE");
    CHECK(result.rows[3][in_box] == "FALSE");
    CHECK(result.rows[4][in_box] == "FALSE");
}

TEST_CASE("membership columns append without touching the input")
{
    auto input = table4_rows();
    auto boxed = located_in_box(input, sample_box);
    CHECK(boxed.columns.size() == input.columns.size() + 1);
    CHECK(boxed.columns.back() == "in_box");
    for (size_t r = 0; r < input.rows.size(); ++r) {
        for (size_t c = 0; c < input.columns.size(); ++c) {
            CHECK(boxed.rows[r][c] == input.rows[r][c]);
        }
    }

    // Both columns coexist when chained.
    auto both = located_in_shapefile(boxed, load_region(test::california_geojson()));
    CHECK(both.find_column("in_box").has_value());
    CHECK(both.find_column("in_shape").has_value());
}

TEST_CASE("point_in_polygon handles the unit square")
{
    auto square = unit_square();
    CHECK(point_in_polygon({0.5, 0.5}, square));
    CHECK(!point_in_polygon({2.0, 2.0}, square));
    CHECK(point_in_polygon({0.0, 0.5}, square));       // on the edge
    CHECK(point_in_polygon({0.5, 1.0 + 5e-10}, square)); // within tolerance
    CHECK(!point_in_polygon({0.5, 1.1}, square));
}

TEST_CASE("holes exclude their interior")
{
    PolygonSet set;
    Polygon donut;
    donut.outer.vertices = {{0, 0}, {0, 10}, {10, 10}, {10, 0}};
    PolygonRing hole;
    hole.vertices = {{4, 4}, {4, 6}, {6, 6}, {6, 4}};
    donut.holes.push_back(hole);
    set.polygons.push_back(donut);

    CHECK(point_in_polygon({2.0, 2.0}, set));
    CHECK(!point_in_polygon({5.0, 5.0}, set)); // inside the hole
    CHECK(point_in_polygon({4.0, 5.0}, set));  // on the hole edge counts inside
}

TEST_CASE("membership in any polygon of the set counts")
{
    PolygonSet set = unit_square();
    Polygon far_square;
    far_square.outer.vertices = {{20, 20}, {20, 21}, {21, 21}, {21, 20}};
    set.polygons.push_back(far_square);
    CHECK(point_in_polygon({0.5, 0.5}, set));
    CHECK(point_in_polygon({20.5, 20.5}, set));
    CHECK(!point_in_polygon({10.0, 10.0}, set));
}

TEST_CASE("degenerate rings are a validation error")
{
    PolygonSet set;
    Polygon line;
    line.outer.vertices = {{0, 0}, {1, 1}, {0, 0}, {1, 1}};
    set.polygons.push_back(line);
    CHECK_THROWS_AS(point_in_polygon({0.5, 0.5}, set), Error);

    PolygonSet empty;
    CHECK_THROWS_AS(point_in_polygon({0.5, 0.5}, empty), Error);
}

TEST_CASE("geojson shapes load into polygon sets")
{
    SUBCASE("bare polygon with closing duplicate")
    {
        auto set = parse_geojson(R"({"type":"Polygon","coordinates":[
            [[0,0],[1,0],[1,1],[0,1],[0,0]]]})");
        REQUIRE(set.polygons.size() == 1);
        CHECK(set.polygons[0].outer.vertices.size() == 4);
        // GeoJSON positions are [lng, lat].
        CHECK(set.polygons[0].outer.vertices[1] == GeoPoint{0.0, 1.0});
    }
    SUBCASE("feature collection of two polygons")
    {
        auto set = parse_geojson(R"({"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{},"geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1]]]}},
            {"type":"Feature","properties":{},"geometry":{"type":"MultiPolygon","coordinates":[
                [[[5,5],[6,5],[6,6]]],[[[8,8],[9,8],[9,9]]]]}}]})");
        CHECK(set.polygons.size() == 3);
    }
    SUBCASE("empty feature collection loads but cannot be used")
    {
        auto set = parse_geojson(R"({"type":"FeatureCollection","features":[]})");
        CHECK(set.empty());
        Table table;
        table.columns = {"lat", "lng"};
        table.rows = {{"1", "2"}};
        CHECK_THROWS_AS(located_in_shapefile(table, set), Error);
    }
    SUBCASE("malformed input names the location")
    {
        CHECK_THROWS_AS(parse_geojson("{nope"), Error);
        try {
            parse_geojson(R"({"type":"FeatureCollection","features":[
                {"type":"Feature","properties":{},"geometry":{"type":"Point","coordinates":[1,2]}}]})");
            FAIL("expected a format error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Format);
            CHECK(std::string(e.what()).find("features[0]") != std::string::npos);
        }
        test::TempDir dir;
        CHECK_THROWS_AS(load_region(dir.path() / "missing.geojson"), Error);
    }
}

TEST_CASE("the california region behaves like california")
{
    auto california = load_region(test::california_geojson());
    REQUIRE(california.polygons.size() == 1);

    auto result = located_in_shapefile(table4_rows(), california);
    const size_t in_shape = *result.find_column("in_shape");
    for (const auto& row : result.rows) {
        CHECK(row[in_shape] == "FALSE");
    }

    CHECK(point_in_polygon({38.58, -121.49}, california));   // Sacramento
    CHECK(point_in_polygon({34.05, -118.35}, california));   // Los Angeles
    CHECK(!point_in_polygon({36.17, -115.14}, california));  // Las Vegas
    CHECK(!point_in_polygon({39.53, -119.81}, california));  // Reno
    CHECK(!point_in_polygon({45.52, -122.68}, california));  // Portland
}

TEST_CASE("ray casting agrees with the half-plane oracle on convex polygons")
{
    std::mt19937 rng(20240515);
    std::uniform_real_distribution<double> jitter(-15.0, 15.0);

    int compared = 0;
    for (int p = 0; p < 60; ++p) {
        Polygon polygon = random_convex_polygon(rng);
        PolygonSet set;
        set.polygons.push_back(polygon);

        const GeoPoint anchor = polygon.outer.vertices.front();
        for (int i = 0; i < 40; ++i) {
            GeoPoint point{anchor.lat + jitter(rng), anchor.lng + jitter(rng)};
            if (near_polygon_edge(point, set)) {
                continue; // boundary calls are tolerance-defined, not oracle material
            }
            CHECK(point_in_polygon(point, set) == convex_oracle(point, polygon));
            ++compared;
        }
    }
    CHECK(compared > 1000);
}

TEST_CASE("a box and its rectangle polygon agree")
{
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> lat(-80.0, 80.0);
    std::uniform_real_distribution<double> lng(-170.0, 170.0);
    std::uniform_real_distribution<double> size(0.1, 20.0);

    for (int b = 0; b < 30; ++b) {
        const double south = lat(rng);
        const double west = lng(rng);
        const double north = std::min(south + size(rng), 89.0);
        const double east = std::min(west + size(rng), 179.0);
        BoundingBox box{{north, west}, {south, east}};

        PolygonSet rectangle;
        Polygon ring;
        ring.outer.vertices = {{south, west}, {south, east}, {north, east}, {north, west}};
        rectangle.polygons.push_back(ring);

        for (int i = 0; i < 50; ++i) {
            GeoPoint point{south + (north - south) * 3.0 * (rng() % 1000) / 1000.0 - (north - south),
                           west + (east - west) * 3.0 * (rng() % 1000) / 1000.0 - (east - west)};
            if (near_polygon_edge(point, rectangle)) {
                continue;
            }
            CHECK(box.contains(point) == point_in_polygon(point, rectangle));
        }
    }
}

#include "emgeo/coverage.hpp"
#include "emgeo/error.hpp"
#include "emgeo/locationizer.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace emgeo;

namespace {

Table locationized_sample()
{
    return to_table(split_locations(read_emdat(test::sample_csv())));
}

} // namespace

TEST_CASE("pre-geocode coverage matches the sample's native columns")
{
    auto table = locationized_sample();
    auto report = percent_located_locations(table, "Latitude", "Longitude");
    CHECK(report.total == 18);
    CHECK(report.located == 2);
    CHECK(report.percent_not_located_text() == "88.89");
    CHECK(report.percent_located_text() == "11.11");

    auto disasters = percent_located_disasters(table, "Latitude", "Longitude");
    CHECK(disasters.total == 3);
    CHECK(disasters.located == 1);
    CHECK(disasters.percent_located_text() == "33.33");
}

TEST_CASE("column lookup is name driven")
{
    Table table;
    table.columns = {"Dis No", "y", "x"};
    table.rows = {{"a", "1.0", "2.0"}, {"b", "", ""}};
    auto report = percent_located_locations(table, "y", "x");
    CHECK(report.located == 1);

    Table renamed = table;
    renamed.columns = {"Dis No", "phi", "lambda"};
    auto renamed_report = percent_located_locations(renamed, "phi", "lambda");
    CHECK(renamed_report.located == report.located);
    CHECK(renamed_report.total == report.total);

    CHECK_THROWS_AS(percent_located_locations(table, "nope", "x"), Error);
}

TEST_CASE("hemisphere forms and ranges drive the located predicate")
{
    Table table;
    table.columns = {"Dis No", "lat", "lng"};
    table.rows = {
        {"a", "48.60 N", "58.00 W"}, // native form counts
        {"b", "95.0", "10.0"},       // latitude out of range
        {"c", "10.0", "NA"},         // absent longitude
        {"d", "-10.0", "181.0"},     // longitude out of range
    };
    std::vector<std::string> warnings;
    auto report = percent_located_locations(table, "lat", "lng", &warnings);
    CHECK(report.located == 1);
    CHECK(warnings.size() == 2);
}

TEST_CASE("disaster aggregation any/all/custom")
{
    Table table;
    table.columns = {"Dis No", "lat", "lng"};
    table.rows = {
        {"D1", "1.0", "1.0"}, {"D1", "", ""},     {"D1", "", ""},     {"D1", "2.0", "2.0"},
        {"D2", "", ""},       {"D2", "3.0", "3.0"}, {"D3", "4.0", "4.0"},
    };

    auto any = percent_located_disasters(table, "lat", "lng", DisasterAggregation::any());
    CHECK(any.total == 3);
    CHECK(any.located == 3);

    auto all = percent_located_disasters(table, "lat", "lng", DisasterAggregation::all());
    CHECK(all.located == 1); // only D3

    // At least half of the locations located: D1 has 2 of 4.
    auto half = DisasterAggregation::custom(
        [](const std::vector<bool>& located) {
            size_t hits = 0;
            for (bool b : located) {
                hits += b ? 1 : 0;
            }
            return 2 * hits >= located.size();
        },
        "at least half");
    auto custom = percent_located_disasters(table, "lat", "lng", half);
    CHECK(custom.located == 3);

    auto throwing = DisasterAggregation::custom(
        [](const std::vector<bool>&) -> bool { throw std::runtime_error("boom"); }, "boom");
    try {
        percent_located_disasters(table, "lat", "lng", throwing);
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
        CHECK(std::string(e.what()).find("D1") != std::string::npos);
    }
}

TEST_CASE("any and all are the or/and folds")
{
    std::mt19937 rng(4242);
    auto logical_or = DisasterAggregation::custom(
        [](const std::vector<bool>& v) {
            bool acc = false;
            for (bool b : v) {
                acc = acc || b;
            }
            return acc;
        },
        "or");
    auto logical_and = DisasterAggregation::custom(
        [](const std::vector<bool>& v) {
            bool acc = true;
            for (bool b : v) {
                acc = acc && b;
            }
            return acc;
        },
        "and");

    for (int iteration = 0; iteration < 100; ++iteration) {
        Table table;
        table.columns = {"Dis No", "lat", "lng"};
        const int disasters = 1 + static_cast<int>(rng() % 5);
        for (int d = 0; d < disasters; ++d) {
            const int rows = 1 + static_cast<int>(rng() % 4);
            for (int r = 0; r < rows; ++r) {
                const bool located = rng() % 2 == 0;
                table.rows.push_back({"D" + std::to_string(d), located ? "1.0" : "", located ? "2.0" : ""});
            }
        }
        auto any = percent_located_disasters(table, "lat", "lng", DisasterAggregation::any());
        auto all = percent_located_disasters(table, "lat", "lng", DisasterAggregation::all());
        CHECK(any.located ==
              percent_located_disasters(table, "lat", "lng", logical_or).located);
        CHECK(all.located ==
              percent_located_disasters(table, "lat", "lng", logical_and).located);
        CHECK(any.located >= all.located);

        // One location per disaster makes both units agree.
        Table singletons;
        singletons.columns = table.columns;
        for (int d = 0; d < disasters; ++d) {
            const bool located = rng() % 2 == 0;
            singletons.rows.push_back(
                {"S" + std::to_string(d), located ? "5.0" : "", located ? "6.0" : ""});
        }
        auto locations_report = percent_located_locations(singletons, "lat", "lng");
        auto disasters_report =
            percent_located_disasters(singletons, "lat", "lng", DisasterAggregation::any());
        CHECK(locations_report.total == disasters_report.total);
        CHECK(locations_report.located == disasters_report.located);
    }
}

TEST_CASE("empty input reports zero with a warning")
{
    Table table;
    table.columns = {"Dis No", "lat", "lng"};
    std::vector<std::string> warnings;
    auto report = percent_located_locations(table, "lat", "lng", &warnings);
    CHECK(report.total == 0);
    CHECK(report.percent_located_text() == "0.00");
    REQUIRE(report.warning.has_value());
    CHECK(warnings.size() == 1);

    auto text = render_report(report, ReportFormat::Text);
    CHECK(text.find("warning:") != std::string::npos);
}

TEST_CASE("render formats are deterministic and carry the counts")
{
    auto table = locationized_sample();
    auto report = percent_located_locations(table, "Latitude", "Longitude");

    auto json_bytes = render_report(report, ReportFormat::Json);
    CHECK(json_bytes.find("\"total\": 18") != std::string::npos);
    CHECK(json_bytes.find("\"located\": 2") != std::string::npos);
    CHECK(json_bytes.find("\"percent_not_located\": \"88.89\"") != std::string::npos);
    CHECK(json_bytes == render_report(report, ReportFormat::Json));

    auto svg = render_report(report, ReportFormat::Svg);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("not located 88.89%") != std::string::npos);
    CHECK(svg == render_report(report, ReportFormat::Svg));

    CHECK(parse_report_format("svg") == ReportFormat::Svg);
    CHECK_THROWS_AS(parse_report_format("png"), Error);
}

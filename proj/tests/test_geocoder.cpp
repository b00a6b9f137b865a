#include "emgeo/error.hpp"
#include "emgeo/geocoder.hpp"

#include "test_support.hpp"

#include <doctest.h>
#include <httplib.h>

#include <memory>
#include <thread>

using namespace emgeo;

namespace {

LocationizedDataset locationized_sample()
{
    return split_locations(read_emdat(test::sample_csv()));
}

GeoNamesClient fixture_client()
{
    GeoNamesConfig config;
    config.mode = ClientMode::OfflineFixtures;
    config.fixtures_path = test::sample_fixtures();
    return GeoNamesClient(config, std::make_shared<SimulatedClock>());
}

const GeocodedRecord& row_for(const GeocodedDataset& dataset, std::string_view word)
{
    for (const auto& record : dataset.records) {
        if (record.base.location_word == word) {
            return record;
        }
    }
    FAIL("no row for location word");
    throw std::logic_error("unreachable");
}

LocationizedDataset synthetic_rows(int count)
{
    LocationizedDataset dataset;
    dataset.source_columns = {"Dis No", "Country"};
    for (int i = 0; i < count; ++i) {
        LocationizedRecord row;
        row.parent.dis_no = "2000-" + std::to_string(i) + "-GEN";
        row.parent.country = "Testland";
        row.location_word = "place " + std::to_string(i);
        dataset.records.push_back(std::move(row));
    }
    return dataset;
}

} // namespace

TEST_CASE("country names resolve to iso-2 codes")
{
    CHECK(country_to_iso2("United States of America (the)") == "US");
    CHECK(country_to_iso2("Canada") == "CA");
    CHECK(country_to_iso2("canada") == "CA");
    CHECK(country_to_iso2("Iran (Islamic Republic of)") == "IR");
    CHECK(country_to_iso2("Congo (the Democratic Republic of the)") == "CD");
    CHECK(country_to_iso2("Congo (the)") == "CG");
    CHECK(country_to_iso2("Viet Nam") == "VN");
    CHECK(!country_to_iso2("Atlantis").has_value());
    CHECK(!country_to_iso2("").has_value());
    CHECK(strip_trailing_parentheticals("Bolivia (Plurinational State of)") == "Bolivia");
}

TEST_CASE("the sample dataset geocodes to the known coordinates")
{
    auto client = fixture_client();
    auto geocoded = geocode(locationized_sample(), client);
    REQUIRE(geocoded.records.size() == 18);

    const auto& georgia = row_for(geocoded, "georgia");
    REQUIRE(georgia.point().has_value());
    CHECK(georgia.point()->lat == doctest::Approx(33.69277).epsilon(1e-12));
    CHECK(georgia.point()->lng == doctest::Approx(-84.39957).epsilon(1e-12));

    // The service returns the same point for both Carolinas; the fixtures
    // keep that quirk.
    const auto& north = row_for(geocoded, "north carolina");
    const auto& south = row_for(geocoded, "south carolina");
    REQUIRE(north.point().has_value());
    CHECK(north.point() == south.point());
    CHECK(north.point()->lat == doctest::Approx(34.00071).epsilon(1e-12));
    CHECK(north.point()->lng == doctest::Approx(-81.03481).epsilon(1e-12));

    // Canadian rows were biased by their own country.
    const auto& burin = row_for(geocoded, "burin peninsula");
    REQUIRE(burin.matches.size() == 1);
    CHECK(burin.matches[0].country_code == "CA");

    // Authored misses stay ungeocoded without failing the run.
    CHECK(!row_for(geocoded, "massachussetts").point().has_value());
    CHECK(!row_for(geocoded, "la").point().has_value());
}

TEST_CASE("rows keep their order and an empty word passes through")
{
    LocationizedDataset dataset = synthetic_rows(3);
    dataset.records[1].location_word.clear();

    auto client = fixture_client();
    auto geocoded = geocode(dataset, client);
    REQUIRE(geocoded.records.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(geocoded.records[i].base.parent.dis_no == dataset.records[i].parent.dis_no);
    }
    CHECK(geocoded.records[1].matches.empty());
    CHECK(!geocoded.records[1].point().has_value());

    auto table = to_table(geocoded);
    REQUIRE(table.rows.size() == 3);
    const size_t lat = table.require_column("lat");
    CHECK(table.rows[1][lat].empty());
}

TEST_CASE("nested table output formats coordinates with five decimals")
{
    auto client = fixture_client();
    auto table = to_table(geocode(locationized_sample(), client));

    const size_t word = table.require_column("location_word");
    const size_t lat = table.require_column("lat");
    const size_t lng = table.require_column("lng");
    const size_t matches = table.require_column("matches");
    for (const auto& row : table.rows) {
        if (row[word] == "tennessee") {
            CHECK(row[lat] == "35.80000");
            CHECK(row[lng] == "-86.50000");
            CHECK(row[matches].find("\"toponymName\":\"Tennessee\"") != std::string::npos);
        }
        if (row[word] == "alabama") {
            CHECK(row[lat] == "34.60739");
            CHECK(row[lng] == "-86.97977");
        }
        if (row[word] == "la") {
            CHECK(row[lat].empty());
            CHECK(row[matches] == "[]");
        }
    }
}

TEST_CASE("unwrapped output widens each rank into its own columns")
{
    test::TempDir dir;
    auto fixture = dir.write_file("two.json", R"({
        "twin peaks|": {"geonames": [
            {"lat": "10.1", "lng": "20.2", "toponymName": "First"},
            {"lat": "30.3", "lng": "40.4", "toponymName": "Second"}
        ]},
        "lonely hill|": {"geonames": [
            {"lat": "50.5", "lng": "60.6", "toponymName": "Only"}
        ]}
    })");

    GeoNamesConfig config;
    config.mode = ClientMode::OfflineFixtures;
    config.fixtures_path = fixture;
    GeoNamesClient client(config, std::make_shared<SimulatedClock>());

    LocationizedDataset dataset = synthetic_rows(2);
    dataset.records[0].location_word = "twin peaks";
    dataset.records[1].location_word = "lonely hill";

    GeocodeOptions options;
    options.n_results = 2;
    options.use_country_bias = false;
    auto geocoded = geocode(dataset, client, options);

    auto unwrapped = to_table(geocoded, true);
    CHECK(unwrapped.find_column("lat1").has_value());
    CHECK(unwrapped.find_column("lng2").has_value());
    CHECK(!unwrapped.find_column("matches").has_value());

    const size_t lat1 = *unwrapped.find_column("lat1");
    const size_t lng1 = *unwrapped.find_column("lng1");
    const size_t lat2 = *unwrapped.find_column("lat2");
    const size_t lng2 = *unwrapped.find_column("lng2");
    CHECK(unwrapped.rows[0][lat1] == "10.10000");
    CHECK(unwrapped.rows[0][lng1] == "20.20000");
    CHECK(unwrapped.rows[0][lat2] == "30.30000");
    CHECK(unwrapped.rows[0][lng2] == "40.40000");
    // Missing second rank stays blank.
    CHECK(unwrapped.rows[1][lat2].empty());

    // Rank 1 of the unwrapped table equals the nested lat/lng.
    auto nested = to_table(geocoded, false);
    const size_t nested_lat = nested.require_column("lat");
    const size_t nested_lng = nested.require_column("lng");
    for (size_t r = 0; r < nested.rows.size(); ++r) {
        CHECK(nested.rows[r][nested_lat] == unwrapped.rows[r][lat1]);
        CHECK(nested.rows[r][nested_lng] == unwrapped.rows[r][lng1]);
    }
}

TEST_CASE("a small input runs as a single batch with no latency")
{
    auto clock = std::make_shared<SimulatedClock>();
    GeoNamesConfig config;
    config.mode = ClientMode::OfflineFixtures;
    config.fixtures_path = test::sample_fixtures();
    GeoNamesClient client(config, clock);

    auto geocoded = geocode_batches(locationized_sample(), client, BatchPlan{});
    CHECK(geocoded.records.size() == 18);
    CHECK(clock->sleeps().empty());
}

TEST_CASE("batches sleep the configured latency between slices")
{
    auto clock = std::make_shared<SimulatedClock>();
    GeoNamesConfig config;
    config.mode = ClientMode::OfflineFixtures;
    config.fixtures_path = test::sample_fixtures();
    GeoNamesClient client(config, clock);

    auto dataset = synthetic_rows(2000);
    auto geocoded = geocode_batches(dataset, client, BatchPlan{990, 4800.0});
    CHECK(geocoded.records.size() == 2000);
    REQUIRE(clock->sleeps().size() == 2); // 3 slices of 990/990/20
    CHECK(clock->sleeps()[0] == doctest::Approx(4800.0));
    CHECK(clock->sleeps()[1] == doctest::Approx(4800.0));
}

TEST_CASE("geocode_batches equals geocode for any batch size")
{
    for (long long batch_size : {1LL, 2LL, 990LL}) {
        auto client_a = fixture_client();
        auto client_b = fixture_client();
        auto plain = to_table(geocode(locationized_sample(), client_a)).to_csv_string();
        auto batched =
            to_table(geocode_batches(locationized_sample(), client_b, BatchPlan{batch_size, 10.0}))
                .to_csv_string();
        CHECK(plain == batched);
    }
}

TEST_CASE("worker pools produce the single-thread result")
{
    auto client_serial = fixture_client();
    auto serial = to_table(geocode(locationized_sample(), client_serial)).to_csv_string();

    auto client_parallel = fixture_client();
    GeocodeOptions options;
    options.worker_count = 4;
    auto parallel = to_table(geocode(locationized_sample(), client_parallel, options)).to_csv_string();
    CHECK(serial == parallel);
}

TEST_CASE("invalid plans and options are rejected")
{
    auto client = fixture_client();
    CHECK_THROWS_AS(geocode_batches(locationized_sample(), client, BatchPlan{0, 1.0}), Error);
    CHECK_THROWS_AS(geocode_batches(locationized_sample(), client, BatchPlan{1, -1.0}), Error);
    GeocodeOptions options;
    options.n_results = 0;
    CHECK_THROWS_AS(geocode(locationized_sample(), client, options), Error);
}

TEST_CASE("quota exhaustion mid-run reports the resume row")
{
    httplib::Server server;
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    int calls = 0;
    server.Get("/searchJSON", [&](const httplib::Request&, httplib::Response& res) {
        ++calls;
        if (calls == 1) {
            res.set_content(R"({"geonames":[{"lat":"1.0","lng":"2.0","toponymName":"Ok"}]})",
                            "application/json");
        } else {
            res.set_content(R"({"status":{"message":"limit exceeded","value":19}})",
                            "application/json");
        }
    });

    GeoNamesConfig config;
    config.username = "demo";
    config.base_url = "http://127.0.0.1:" + std::to_string(port);
    GeoNamesClient client(config, std::make_shared<SimulatedClock>());

    auto dataset = synthetic_rows(3);
    try {
        geocode(dataset, client);
        FAIL("expected an interruption");
    } catch (const GeocodeInterrupted& e) {
        CHECK(e.kind() == ErrorKind::Quota);
        CHECK(e.resume_index() == 1);
        CHECK(std::string(e.what()).find("restart from row 1") != std::string::npos);
    }

    server.stop();
    server_thread.join();
}

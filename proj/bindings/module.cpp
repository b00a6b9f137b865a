#include "emgeo/coverage.hpp"
#include "emgeo/error.hpp"
#include "emgeo/geocoder.hpp"
#include "emgeo/ingest.hpp"
#include "emgeo/locationizer.hpp"
#include "emgeo/spatial.hpp"
#include "emgeo/strings.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

namespace py = pybind11;
using namespace emgeo;

namespace {

CoordinateAxis axis_from(const std::string& name)
{
    const std::string n = str::to_lower(str::trim(name));
    if (n == "lat" || n == "latitude") {
        return CoordinateAxis::Latitude;
    }
    if (n == "lng" || n == "lon" || n == "longitude") {
        return CoordinateAxis::Longitude;
    }
    throw Error(ErrorKind::Config, "unknown axis '" + name + "' (latitude, longitude)");
}

DisasterAggregation aggregation_from(const py::object& how)
{
    if (py::isinstance<py::str>(how)) {
        return DisasterAggregation::parse(how.cast<std::string>());
    }
    if (py::isinstance<DisasterAggregation>(how)) {
        return how.cast<DisasterAggregation>();
    }
    auto predicate = how.cast<std::function<bool(const std::vector<bool>&)>>();
    return DisasterAggregation::custom(std::move(predicate), "python predicate");
}

} // namespace

PYBIND11_MODULE(_emgeo, m)
{
    m.doc() = "Geocoding and spatial analysis toolkit for EM-DAT disaster exports";

    py::register_exception<Error>(m, "EmgeoError");

    py::class_<GeoPoint>(m, "GeoPoint")
        .def(py::init<>())
        .def(py::init<double, double>(), py::arg("lat"), py::arg("lng"))
        .def_readwrite("lat", &GeoPoint::lat)
        .def_readwrite("lng", &GeoPoint::lng)
        .def("__repr__", [](const GeoPoint& p) {
            return "GeoPoint(lat=" + std::to_string(p.lat) + ", lng=" + std::to_string(p.lng) + ")";
        });

    py::class_<GeocodeMatch>(m, "GeocodeMatch")
        .def_readonly("point", &GeocodeMatch::point)
        .def_readonly("toponym_name", &GeocodeMatch::toponym_name)
        .def_readonly("country_code", &GeocodeMatch::country_code)
        .def_readonly("rank", &GeocodeMatch::rank);

    py::class_<EmdatMetadata>(m, "EmdatMetadata")
        .def_readonly("timestamp", &EmdatMetadata::timestamp)
        .def_readonly("version", &EmdatMetadata::version)
        .def_readonly("request_type", &EmdatMetadata::request_type)
        .def_readonly("entries", &EmdatMetadata::entries)
        .def("extra", &EmdatMetadata::extra)
        .def("entry_count", &EmdatMetadata::entry_count);

    py::class_<DisasterRecord>(m, "DisasterRecord")
        .def(py::init<>())
        .def_readwrite("dis_no", &DisasterRecord::dis_no)
        .def_readwrite("country", &DisasterRecord::country)
        .def_readwrite("disaster_type", &DisasterRecord::disaster_type)
        .def_readwrite("location_string", &DisasterRecord::location_string)
        .def_readwrite("native_latitude", &DisasterRecord::native_latitude)
        .def_readwrite("native_longitude", &DisasterRecord::native_longitude)
        .def_readwrite("extras", &DisasterRecord::extras);

    py::class_<EmdatDataset>(m, "EmdatDataset")
        .def(py::init<>())
        .def_readwrite("records", &EmdatDataset::records)
        .def_readonly("metadata", &EmdatDataset::metadata)
        .def_readonly("source_columns", &EmdatDataset::source_columns);

    py::class_<SplitConfig>(m, "SplitConfig")
        .def(py::init<>())
        .def_readwrite("joiner_patterns", &SplitConfig::joiner_patterns)
        .def_readwrite("dummy_words", &SplitConfig::dummy_words)
        .def_readwrite("deduplicate", &SplitConfig::deduplicate)
        .def("extend", &SplitConfig::extend, py::arg("extra_joiners"), py::arg("extra_dummy_words"),
             py::arg("replace") = false);

    py::class_<LocationizedRecord>(m, "LocationizedRecord")
        .def_readonly("parent", &LocationizedRecord::parent)
        .def_readonly("location_word", &LocationizedRecord::location_word)
        .def_readonly("uncertain_location_specificity",
                      &LocationizedRecord::uncertain_location_specificity);

    py::class_<LocationizedDataset>(m, "LocationizedDataset")
        .def_readonly("records", &LocationizedDataset::records)
        .def_readonly("source_columns", &LocationizedDataset::source_columns)
        .def_readonly("consumed_column", &LocationizedDataset::consumed_column);

    py::class_<GeocodedRecord>(m, "GeocodedRecord")
        .def_readonly("base", &GeocodedRecord::base)
        .def_readonly("matches", &GeocodedRecord::matches)
        .def_property_readonly("point", &GeocodedRecord::point);

    py::class_<GeocodedDataset>(m, "GeocodedDataset")
        .def_readonly("records", &GeocodedDataset::records)
        .def_readonly("n_results", &GeocodedDataset::n_results);

    py::class_<Table>(m, "Table")
        .def(py::init<>())
        .def_readwrite("columns", &Table::columns)
        .def_readwrite("rows", &Table::rows)
        .def("row_count", &Table::row_count)
        .def("find_column", &Table::find_column)
        .def("resolve_column", &Table::resolve_column)
        .def_static("from_csv", &Table::from_csv)
        .def_static("from_csv_file", &Table::from_csv_file)
        .def("to_csv_string", &Table::to_csv_string)
        .def("save_csv", &Table::save_csv);

    py::class_<CoverageReport>(m, "CoverageReport")
        .def_readonly("total", &CoverageReport::total)
        .def_readonly("located", &CoverageReport::located)
        .def_readonly("rule", &CoverageReport::rule)
        .def_readonly("warning", &CoverageReport::warning)
        .def_property_readonly("not_located", &CoverageReport::not_located)
        .def("percent_located_text", &CoverageReport::percent_located_text)
        .def("percent_not_located_text", &CoverageReport::percent_not_located_text)
        .def("percent_located_value", &CoverageReport::percent_located_value);

    py::class_<DisasterAggregation>(m, "DisasterAggregation")
        .def_static("any", &DisasterAggregation::any)
        .def_static("all", &DisasterAggregation::all)
        .def_static(
            "custom",
            [](std::function<bool(const std::vector<bool>&)> predicate, const std::string& name) {
                return DisasterAggregation::custom(std::move(predicate), name);
            },
            py::arg("predicate"), py::arg("name") = "custom")
        .def_property_readonly("name", &DisasterAggregation::name);

    py::enum_<ClientMode>(m, "ClientMode")
        .value("LIVE", ClientMode::Live)
        .value("OFFLINE_FIXTURES", ClientMode::OfflineFixtures);

    py::class_<GeoNamesConfig>(m, "GeoNamesConfig")
        .def(py::init<>())
        .def_readwrite("username", &GeoNamesConfig::username)
        .def_readwrite("base_url", &GeoNamesConfig::base_url)
        .def_readwrite("hourly_budget", &GeoNamesConfig::hourly_budget)
        .def_readwrite("daily_budget", &GeoNamesConfig::daily_budget)
        .def_readwrite("timeout_seconds", &GeoNamesConfig::timeout_seconds)
        .def_readwrite("mode", &GeoNamesConfig::mode)
        .def_readwrite("fixtures_path", &GeoNamesConfig::fixtures_path)
        .def_readwrite("cache_dir", &GeoNamesConfig::cache_dir)
        .def_readwrite("fulltext_search", &GeoNamesConfig::fulltext_search)
        .def_readwrite("cache_enabled", &GeoNamesConfig::cache_enabled);

    py::class_<Clock, std::shared_ptr<Clock>>(m, "Clock");

    py::class_<SystemClock, Clock, std::shared_ptr<SystemClock>>(m, "SystemClock")
        .def(py::init<>());

    py::class_<SimulatedClock, Clock, std::shared_ptr<SimulatedClock>>(m, "SimulatedClock")
        .def(py::init<double>(), py::arg("start") = 0.0)
        .def("advance", &SimulatedClock::advance)
        .def_property_readonly("sleeps", &SimulatedClock::sleeps);

    py::class_<GeoNamesClient>(m, "GeoNamesClient")
        .def(py::init<GeoNamesConfig, std::shared_ptr<Clock>>(), py::arg("config"),
             py::arg("clock") = nullptr)
        .def(
            "search",
            [](GeoNamesClient& client, const std::string& word,
               const std::optional<std::string>& country, int max_rows) {
                return client.search(word, country, max_rows);
            },
            py::arg("word"), py::arg("country") = std::nullopt, py::arg("max_rows") = 1)
        .def("network_request_count", &GeoNamesClient::network_request_count)
        .def("take_warnings", &GeoNamesClient::take_warnings);

    m.def(
        "offline_client",
        [](const std::filesystem::path& fixtures,
           const std::optional<std::filesystem::path>& cache_dir) {
            GeoNamesConfig config;
            config.mode = ClientMode::OfflineFixtures;
            config.fixtures_path = fixtures;
            config.cache_dir = cache_dir.value_or(std::filesystem::path{});
            return std::make_unique<GeoNamesClient>(std::move(config));
        },
        py::arg("fixtures"), py::arg("cache_dir") = std::nullopt,
        "Client that serves recorded responses and never touches the network");

    py::class_<BatchPlan>(m, "BatchPlan")
        .def(py::init<>())
        .def(py::init([](long long batch_size, double wait_time) {
                 BatchPlan plan{batch_size, wait_time};
                 plan.validate();
                 return plan;
             }),
             py::arg("batch_size"), py::arg("wait_time"))
        .def_readwrite("batch_size", &BatchPlan::batch_size)
        .def_readwrite("wait_time", &BatchPlan::wait_time);

    py::class_<BoundingBox>(m, "BoundingBox")
        .def(py::init([](double top_left_lat, double top_left_lng, double bottom_right_lat,
                         double bottom_right_lng) {
                 BoundingBox box{{top_left_lat, top_left_lng}, {bottom_right_lat, bottom_right_lng}};
                 box.validate();
                 return box;
             }),
             py::arg("top_left_lat"), py::arg("top_left_lng"), py::arg("bottom_right_lat"),
             py::arg("bottom_right_lng"))
        .def_readonly("top_left", &BoundingBox::top_left)
        .def_readonly("bottom_right", &BoundingBox::bottom_right)
        .def("contains", &BoundingBox::contains);

    py::class_<PolygonSet>(m, "PolygonSet")
        .def("__len__", [](const PolygonSet& set) { return set.polygons.size(); });

    // --- operations ---------------------------------------------------

    m.def("read_emdat", &read_emdat, py::arg("path"), py::arg("with_metadata") = false);
    m.def("read_emdat_csv", &read_emdat_csv, py::arg("text"), py::arg("with_metadata") = false);
    m.def(
        "parse_native_coordinate",
        [](const std::string& text, const std::string& axis) {
            return parse_native_coordinate(text, axis_from(axis));
        },
        py::arg("text"), py::arg("axis"));

    m.def("default_split_config", &default_split_config);
    m.def("split_location_string",
          [](const std::string& text, const SplitConfig& config) {
              bool uncertain = false;
              auto words = split_location_string(text, config, &uncertain);
              return py::make_tuple(words, uncertain);
          },
          py::arg("text"), py::arg("config") = default_split_config(),
          "Returns (words, uncertain_location_specificity)");
    m.def(
        "split_locations",
        [](const EmdatDataset& dataset, const std::string& column, const SplitConfig& config) {
            return split_locations(dataset, column, config);
        },
        py::arg("dataset"), py::arg("column") = "Location",
        py::arg("config") = default_split_config());

    m.def("to_table", [](const EmdatDataset& dataset) { return to_table(dataset); }, py::arg("dataset"));
    m.def("to_table", [](const LocationizedDataset& dataset) { return to_table(dataset); },
          py::arg("dataset"));
    m.def("to_table",
          [](const GeocodedDataset& dataset, bool unwrap) { return to_table(dataset, unwrap); },
          py::arg("dataset"), py::arg("unwrap") = false);
    m.def("locationized_from_table", &locationized_from_table, py::arg("table"));

    m.def(
        "percent_located_locations",
        [](const Table& table, const std::string& lat_column, const std::string& lng_column) {
            return percent_located_locations(table, lat_column, lng_column);
        },
        py::arg("table"), py::arg("lat_column") = "lat", py::arg("lng_column") = "lng");
    m.def(
        "percent_located_disasters",
        [](const Table& table, const std::string& lat_column, const std::string& lng_column,
           const py::object& how) {
            return percent_located_disasters(table, lat_column, lng_column, aggregation_from(how));
        },
        py::arg("table"), py::arg("lat_column") = "lat", py::arg("lng_column") = "lng",
        py::arg("how") = py::str("any"));
    m.def(
        "render_report",
        [](const CoverageReport& report, const std::string& format) {
            return render_report(report, parse_report_format(format));
        },
        py::arg("report"), py::arg("format") = "text");

    m.def("country_to_iso2", &country_to_iso2, py::arg("country_name"));
    m.def(
        "geocode",
        [](const LocationizedDataset& dataset, GeoNamesClient& client, int n_results,
           bool use_country_bias, int workers) {
            GeocodeOptions options;
            options.n_results = n_results;
            options.use_country_bias = use_country_bias;
            options.worker_count = workers;
            return geocode(dataset, client, options);
        },
        py::arg("dataset"), py::arg("client"), py::arg("n_results") = 1,
        py::arg("use_country_bias") = true, py::arg("workers") = 1);
    m.def(
        "geocode_batches",
        [](const LocationizedDataset& dataset, GeoNamesClient& client, const BatchPlan& plan,
           int n_results, bool use_country_bias, int workers) {
            GeocodeOptions options;
            options.n_results = n_results;
            options.use_country_bias = use_country_bias;
            options.worker_count = workers;
            return geocode_batches(dataset, client, plan, options);
        },
        py::arg("dataset"), py::arg("client"), py::arg("plan") = BatchPlan{},
        py::arg("n_results") = 1, py::arg("use_country_bias") = true, py::arg("workers") = 1);

    m.def("load_region", &load_region, py::arg("path"));
    m.def("parse_geojson", &parse_geojson, py::arg("text"));
    m.def("point_in_polygon", &point_in_polygon, py::arg("point"), py::arg("polygons"));
    m.def(
        "located_in_box",
        [](const Table& table, const BoundingBox& box, const std::string& lat_column,
           const std::string& lng_column) { return located_in_box(table, box, lat_column, lng_column); },
        py::arg("table"), py::arg("box"), py::arg("lat_column") = "lat",
        py::arg("lng_column") = "lng");
    m.def(
        "located_in_shapefile",
        [](const Table& table, const py::object& region, const std::string& lat_column,
           const std::string& lng_column) {
            if (py::isinstance<PolygonSet>(region)) {
                return located_in_shapefile(table, region.cast<const PolygonSet&>(), lat_column,
                                            lng_column);
            }
            return located_in_shapefile(table, region.cast<std::filesystem::path>(), lat_column,
                                        lng_column);
        },
        py::arg("table"), py::arg("region"), py::arg("lat_column") = "lat",
        py::arg("lng_column") = "lng");

    m.attr("__version__") = "0.1.0";
}

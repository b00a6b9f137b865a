#include "emgeo/coverage.hpp"
#include "emgeo/error.hpp"
#include "emgeo/geocoder.hpp"
#include "emgeo/ingest.hpp"
#include "emgeo/locationizer.hpp"
#include "emgeo/spatial.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using emgeo::Error;
using emgeo::ErrorKind;
using nlohmann::ordered_json;

// Every option of every subcommand lives here so a run can be dumped as one
// JSON document and replayed with --config.
struct CliOptions {
    std::string subcommand;
    std::string input;
    std::string output;

    // ingest
    std::string metadata_out;

    // locationize
    std::string column = "Location";
    std::vector<std::string> joiner_patterns; // effective when replace_defaults
    std::vector<std::string> dummy_words;
    bool replace_defaults = false;
    bool deduplicate = false;

    // coverage
    std::string unit = "locations";
    std::string how = "any";
    std::string lat_col = "lat";
    std::string lng_col = "lng";
    std::string format = "text";

    // geocode
    std::string username;
    std::string base_url = "http://api.geonames.org";
    std::string offline_fixtures;
    std::string cache_dir;
    int n_results = 1;
    bool unwrap = false;
    bool no_country_bias = false;
    bool use_batches = false;
    long long batch_size = 990;
    double wait_time = 4800.0;
    int hourly_budget = 1000;
    int daily_budget = 20000;
    double timeout = 10.0;
    int workers = 1;

    // filter-box / filter-shape
    std::string top_left;
    std::string bottom_right;
    std::string region;

    std::string dump_config_path;
};

emgeo::SplitConfig resolve_split_config(const CliOptions& options)
{
    emgeo::SplitConfig config;
    if (!options.replace_defaults) {
        config = emgeo::default_split_config();
    }
    config.extend(options.joiner_patterns, options.dummy_words);
    config.deduplicate = options.deduplicate;
    return config;
}

emgeo::GeoNamesConfig resolve_geonames_config(const CliOptions& options)
{
    emgeo::GeoNamesConfig config;
    config.username = options.username;
    if (config.username.empty()) {
        if (const char* env = std::getenv("GEONAMES_USERNAME"); env != nullptr) {
            config.username = env;
        }
    }
    config.base_url = options.base_url;
    config.hourly_budget = options.hourly_budget;
    config.daily_budget = options.daily_budget;
    config.timeout_seconds = options.timeout;
    if (!options.offline_fixtures.empty()) {
        config.mode = emgeo::ClientMode::OfflineFixtures;
        config.fixtures_path = options.offline_fixtures;
    }
    config.cache_dir = options.cache_dir;
    return config;
}

ordered_json to_json(const CliOptions& options)
{
    const auto split = resolve_split_config(options);
    ordered_json doc;
    doc["subcommand"] = options.subcommand;
    doc["input"] = options.input;
    doc["output"] = options.output;
    doc["metadata_out"] = options.metadata_out;
    doc["column"] = options.column;
    doc["joiner_patterns"] = split.joiner_patterns; // materialized defaults
    doc["dummy_words"] = split.dummy_words;
    doc["replace_defaults"] = true;
    doc["deduplicate"] = options.deduplicate;
    doc["unit"] = options.unit;
    doc["how"] = options.how;
    doc["lat_col"] = options.lat_col;
    doc["lng_col"] = options.lng_col;
    doc["format"] = options.format;
    doc["username"] = options.username;
    doc["base_url"] = options.base_url;
    doc["offline_fixtures"] = options.offline_fixtures;
    doc["cache_dir"] = options.cache_dir;
    doc["n_results"] = options.n_results;
    doc["unwrap"] = options.unwrap;
    doc["no_country_bias"] = options.no_country_bias;
    doc["use_batches"] = options.use_batches;
    doc["batch_size"] = options.batch_size;
    doc["wait_time"] = options.wait_time;
    doc["hourly_budget"] = options.hourly_budget;
    doc["daily_budget"] = options.daily_budget;
    doc["timeout"] = options.timeout;
    doc["workers"] = options.workers;
    doc["top_left"] = options.top_left;
    doc["bottom_right"] = options.bottom_right;
    doc["region"] = options.region;
    return doc;
}

void load_config_file(CliOptions& options, const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open config file: " + path);
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Format, "malformed config file " + path + ": " + e.what());
    }

    auto get_to = [&](const char* key, auto& field) {
        if (doc.contains(key)) {
            doc.at(key).get_to(field);
        }
    };
    get_to("input", options.input);
    get_to("output", options.output);
    get_to("metadata_out", options.metadata_out);
    get_to("column", options.column);
    get_to("joiner_patterns", options.joiner_patterns);
    get_to("dummy_words", options.dummy_words);
    get_to("replace_defaults", options.replace_defaults);
    get_to("deduplicate", options.deduplicate);
    get_to("unit", options.unit);
    get_to("how", options.how);
    get_to("lat_col", options.lat_col);
    get_to("lng_col", options.lng_col);
    get_to("format", options.format);
    get_to("username", options.username);
    get_to("base_url", options.base_url);
    get_to("offline_fixtures", options.offline_fixtures);
    get_to("cache_dir", options.cache_dir);
    get_to("n_results", options.n_results);
    get_to("unwrap", options.unwrap);
    get_to("no_country_bias", options.no_country_bias);
    get_to("use_batches", options.use_batches);
    get_to("batch_size", options.batch_size);
    get_to("wait_time", options.wait_time);
    get_to("hourly_budget", options.hourly_budget);
    get_to("daily_budget", options.daily_budget);
    get_to("timeout", options.timeout);
    get_to("workers", options.workers);
    get_to("top_left", options.top_left);
    get_to("bottom_right", options.bottom_right);
    get_to("region", options.region);
}

emgeo::GeoPoint parse_lat_lng(const std::string& text, const char* flag)
{
    auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw Error(ErrorKind::Config, std::string(flag) + " expects LAT,LNG");
    }
    try {
        return emgeo::GeoPoint{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(ErrorKind::Config, std::string(flag) + " expects numeric LAT,LNG");
    }
}

void write_output(const std::string& path, const std::string& bytes)
{
    if (path.empty() || path == "-") {
        std::cout << bytes;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write file: " + path);
    }
    out << bytes;
}

void print_warnings(const std::vector<std::string>& warnings)
{
    for (const auto& warning : warnings) {
        std::cerr << "emgeo: warning: " << warning << "\n";
    }
}

std::filesystem::path sibling_file(const std::string& output, const std::string& suffix)
{
    std::filesystem::path out(output);
    return out.parent_path() / (out.stem().string() + suffix);
}

// --- subcommand bodies ----------------------------------------------------

void run_ingest(const CliOptions& options)
{
    auto dataset = emgeo::read_emdat(options.input, true);
    if (!options.metadata_out.empty()) {
        ordered_json doc;
        doc["entries"] = ordered_json::array();
        if (dataset.metadata.has_value()) {
            doc["timestamp"] = dataset.metadata->timestamp;
            doc["version"] = dataset.metadata->version;
            doc["request_type"] = dataset.metadata->request_type;
            for (const auto& [key, value] : dataset.metadata->entries) {
                doc["entries"].push_back({{"key", key}, {"value", value}});
            }
        }
        write_output(options.metadata_out, doc.dump(2) + "\n");
    }
    write_output(options.output, emgeo::to_table(dataset).to_csv_string());
}

void run_locationize(const CliOptions& options)
{
    auto dataset = emgeo::read_emdat(options.input);
    auto locationized = emgeo::split_locations(dataset, options.column, resolve_split_config(options));
    write_output(options.output, emgeo::to_table(locationized).to_csv_string());
}

void run_coverage(const CliOptions& options)
{
    auto table = emgeo::Table::from_csv_file(options.input);
    std::vector<std::string> warnings;
    emgeo::CoverageReport report;
    if (options.unit == "locations") {
        report = emgeo::percent_located_locations(table, options.lat_col, options.lng_col, &warnings);
    } else if (options.unit == "disasters") {
        report = emgeo::percent_located_disasters(table, options.lat_col, options.lng_col,
                                                  emgeo::DisasterAggregation::parse(options.how),
                                                  &warnings);
    } else {
        throw Error(ErrorKind::Config, "unknown unit '" + options.unit + "' (locations, disasters)");
    }
    print_warnings(warnings);
    write_output(options.output, emgeo::render_report(report, emgeo::parse_report_format(options.format)));
}

emgeo::GeocodedDataset geocode_with_options(const CliOptions& options,
                                            const emgeo::LocationizedDataset& locationized,
                                            emgeo::GeoNamesClient& client)
{
    emgeo::GeocodeOptions geocode_options;
    geocode_options.n_results = options.n_results;
    geocode_options.use_country_bias = !options.no_country_bias;
    geocode_options.worker_count = options.workers;

    if (options.use_batches) {
        emgeo::BatchPlan plan;
        plan.batch_size = options.batch_size;
        plan.wait_time = options.wait_time;
        return emgeo::geocode_batches(locationized, client, plan, geocode_options);
    }
    return emgeo::geocode(locationized, client, geocode_options);
}

void run_geocode(const CliOptions& options)
{
    auto table = emgeo::Table::from_csv_file(options.input);
    auto locationized = emgeo::locationized_from_table(table);

    emgeo::GeoNamesClient client(resolve_geonames_config(options));
    auto geocoded = geocode_with_options(options, locationized, client);
    print_warnings(client.take_warnings());
    write_output(options.output, emgeo::to_table(geocoded, options.unwrap).to_csv_string());
}

void run_filter_box(const CliOptions& options)
{
    emgeo::BoundingBox box{parse_lat_lng(options.top_left, "--top-left"),
                           parse_lat_lng(options.bottom_right, "--bottom-right")};
    auto table = emgeo::Table::from_csv_file(options.input);
    std::vector<std::string> warnings;
    auto result = emgeo::located_in_box(table, box, options.lat_col, options.lng_col, &warnings);
    print_warnings(warnings);
    write_output(options.output, result.to_csv_string());
}

void run_filter_shape(const CliOptions& options)
{
    if (options.region.empty()) {
        throw Error(ErrorKind::Config, "filter-shape requires --region FILE.geojson");
    }
    auto table = emgeo::Table::from_csv_file(options.input);
    std::vector<std::string> warnings;
    auto result = emgeo::located_in_shapefile(table, std::filesystem::path(options.region),
                                              options.lat_col, options.lng_col, &warnings);
    print_warnings(warnings);
    write_output(options.output, result.to_csv_string());
}

void run_pipeline(const CliOptions& options)
{
    if (options.output.empty()) {
        throw Error(ErrorKind::Config, "pipeline requires an output file");
    }

    auto dataset = emgeo::read_emdat(options.input);
    auto locationized = emgeo::split_locations(dataset, options.column, resolve_split_config(options));
    const auto locationized_path = sibling_file(options.output, ".locationized.csv");
    emgeo::to_table(locationized).save_csv(locationized_path);

    emgeo::GeoNamesClient client(resolve_geonames_config(options));
    auto geocoded = geocode_with_options(options, locationized, client);
    print_warnings(client.take_warnings());
    auto geocoded_table = emgeo::to_table(geocoded, options.unwrap);
    geocoded_table.save_csv(options.output);

    std::vector<std::string> warnings;
    auto locations_report =
        percent_located_locations(geocoded_table, options.lat_col, options.lng_col, &warnings);
    auto disasters_report =
        percent_located_disasters(geocoded_table, options.lat_col, options.lng_col,
                                  emgeo::DisasterAggregation::parse(options.how), &warnings);
    print_warnings(warnings);

    std::cout << emgeo::render_report(locations_report, emgeo::ReportFormat::Text);
    std::cout << emgeo::render_report(disasters_report, emgeo::ReportFormat::Text);

    ordered_json coverage_doc;
    coverage_doc["locations"] = ordered_json::parse(
        emgeo::render_report(locations_report, emgeo::ReportFormat::Json));
    coverage_doc["disasters"] = ordered_json::parse(
        emgeo::render_report(disasters_report, emgeo::ReportFormat::Json));
    std::ofstream coverage_out(sibling_file(options.output, ".coverage.json"));
    coverage_out << coverage_doc.dump(2) << "\n";

    std::cerr << "emgeo: wrote " << locationized_path.string() << ", " << options.output << ", "
              << sibling_file(options.output, ".coverage.json").string() << "\n";
}

// Pre-scan for --config so its values become the defaults the real parse
// then overrides.
std::optional<std::string> find_config_argument(int argc, char** argv)
{
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) {
            return std::string(argv[i + 1]);
        }
        if (arg.rfind("--config=", 0) == 0) {
            return arg.substr(9);
        }
    }
    return std::nullopt;
}

} // namespace

int main(int argc, char** argv)
{
    CliOptions options;
    try {
        if (auto config = find_config_argument(argc, argv); config.has_value()) {
            load_config_file(options, *config);
        }
    } catch (const Error& e) {
        std::cerr << "emgeo: error kind=" << emgeo::to_string(e.kind()) << " message=\"" << e.what()
                  << "\"\n";
        return emgeo::exit_code(e.kind());
    }

    CLI::App app{"EM-DAT geocoding and spatial analysis toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "emgeo 0.1.0");

    std::string config_path_sink; // consumed by the pre-scan above
    app.add_option("--config", config_path_sink, "JSON config produced by --dump-config");
    app.add_option("--dump-config", options.dump_config_path,
                   "write the resolved configuration of this run as JSON");

    auto add_io = [&](CLI::App* sub, bool output_required) {
        sub->add_option("input", options.input, "input CSV file")->required();
        auto* out = sub->add_option("output", options.output, "output file (default: stdout)");
        if (output_required) {
            out->required();
        }
    };
    auto add_coordinate_columns = [&](CLI::App* sub) {
        sub->add_option("--lat-col", options.lat_col, "latitude column name");
        sub->add_option("--lng-col", options.lng_col, "longitude column name");
    };
    auto add_split_options = [&](CLI::App* sub) {
        sub->add_option("--column", options.column, "location column to split");
        sub->add_option("--joiner-regex", options.joiner_patterns, "extra delimiter pattern");
        sub->add_option("--dummy-word", options.dummy_words, "extra dummy word to remove");
        sub->add_flag("--replace-defaults", options.replace_defaults,
                      "use only the given patterns and dummy words");
        sub->add_flag("--dedup", options.deduplicate, "drop repeated location words per record");
    };
    auto add_geocode_options = [&](CLI::App* sub) {
        sub->add_option("--username", options.username, "GeoNames username")
            ->envname("GEONAMES_USERNAME");
        sub->add_option("--base-url", options.base_url, "GeoNames endpoint");
        sub->add_option("--offline-fixtures", options.offline_fixtures,
                        "serve responses from this fixture store instead of the network");
        sub->add_option("--cache-dir", options.cache_dir, "persistent response cache directory");
        sub->add_option("--n-results", options.n_results, "matches to keep per location word");
        sub->add_flag("--unwrap", options.unwrap, "emit lat1,lng1,... columns instead of nested matches");
        sub->add_flag("--no-country-bias", options.no_country_bias,
                      "do not bias searches with the record's country");
        sub->add_option("--batch-size", options.batch_size, "records per batch");
        sub->add_option("--wait-time", options.wait_time, "seconds to wait between batches");
        sub->add_option("--hourly-budget", options.hourly_budget, "max queries per hour");
        sub->add_option("--daily-budget", options.daily_budget, "max queries per day");
        sub->add_option("--timeout", options.timeout, "request timeout in seconds");
        sub->add_option("--workers", options.workers, "concurrent geocoding workers");
    };

    auto* ingest = app.add_subcommand("ingest", "read an EM-DAT export and write a clean record table");
    add_io(ingest, true);
    ingest->add_option("--metadata-out", options.metadata_out, "write the header metadata as JSON");

    auto* locationize =
        app.add_subcommand("locationize", "split each disaster into disaster-location pairs");
    add_io(locationize, true);
    add_split_options(locationize);

    auto* coverage = app.add_subcommand("coverage", "report the fraction of located rows");
    add_io(coverage, false);
    coverage->add_option("--unit", options.unit, "locations or disasters");
    coverage->add_option("--how", options.how, "disaster aggregation: any or all");
    add_coordinate_columns(coverage);
    coverage->add_option("--format", options.format, "text, json or svg");

    auto* geocode = app.add_subcommand("geocode", "resolve location words to coordinates");
    add_io(geocode, true);
    add_geocode_options(geocode);

    auto* filter_box = app.add_subcommand("filter-box", "append an in_box column");
    add_io(filter_box, true);
    filter_box->add_option("--top-left", options.top_left, "LAT,LNG of the top-left corner")
        ->required();
    filter_box->add_option("--bottom-right", options.bottom_right, "LAT,LNG of the bottom-right corner")
        ->required();
    add_coordinate_columns(filter_box);

    auto* filter_shape = app.add_subcommand("filter-shape", "append an in_shape column");
    add_io(filter_shape, true);
    filter_shape->add_option("--region", options.region, "GeoJSON region file")->required();
    add_coordinate_columns(filter_shape);

    auto* pipeline =
        app.add_subcommand("pipeline", "locationize, geocode and report coverage in one run");
    add_io(pipeline, true);
    add_split_options(pipeline);
    add_geocode_options(pipeline);
    pipeline->add_option("--how", options.how, "disaster aggregation: any or all");

    // --config / --dump-config sit on the parent and may appear after the
    // subcommand name.
    for (CLI::App* sub : {ingest, locationize, coverage, geocode, filter_box, filter_shape, pipeline}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        options.subcommand = sub->get_name();
        auto passed = [&](const std::string& name) {
            const CLI::Option* option = sub->get_option_no_throw(name);
            return option != nullptr && option->count() > 0;
        };
        if (passed("--batch-size") || passed("--wait-time")) {
            options.use_batches = true;
        }

        if (!options.dump_config_path.empty()) {
            write_output(options.dump_config_path, to_json(options).dump(2) + "\n");
        }

        if (options.subcommand == "ingest") {
            run_ingest(options);
        } else if (options.subcommand == "locationize") {
            run_locationize(options);
        } else if (options.subcommand == "coverage") {
            run_coverage(options);
        } else if (options.subcommand == "geocode") {
            run_geocode(options);
        } else if (options.subcommand == "filter-box") {
            run_filter_box(options);
        } else if (options.subcommand == "filter-shape") {
            run_filter_shape(options);
        } else {
            run_pipeline(options);
        }
        return 0;
    } catch (const Error& e) {
        std::string message = e.what();
        for (auto& c : message) {
            if (c == '"') {
                c = '\'';
            }
        }
        std::cerr << "emgeo: error kind=" << emgeo::to_string(e.kind()) << " message=\"" << message
                  << "\"\n";
        return emgeo::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "emgeo: error kind=internal message=\"" << e.what() << "\"\n";
        return 10;
    }
}

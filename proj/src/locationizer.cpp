#include "emgeo/locationizer.hpp"

#include "emgeo/error.hpp"
#include "emgeo/strings.hpp"

#include <algorithm>
#include <regex>
#include <unordered_set>

namespace emgeo {

SplitConfig& SplitConfig::extend(const std::vector<std::string>& extra_joiners,
                                 const std::vector<std::string>& extra_dummy_words, bool replace)
{
    if (replace) {
        joiner_patterns = extra_joiners;
        dummy_words = extra_dummy_words;
        return *this;
    }
    joiner_patterns.insert(joiner_patterns.end(), extra_joiners.begin(), extra_joiners.end());
    dummy_words.insert(dummy_words.end(), extra_dummy_words.begin(), extra_dummy_words.end());
    return *this;
}

SplitConfig default_split_config()
{
    SplitConfig config;
    config.joiner_patterns = {
        "\\(\\s*\\d+\\s*\\)", // enumeration marker "(1)"
        "\\d+\\s*[).]",       // enumeration marker "1)" or "1."
        ",",
        ";",
        "\\(",
        "\\)",
        "\\band\\b",
        "&",
        "/",
        "\\r?\\n",
    };
    config.dummy_words = {
        "state",      "states",      "province",     "provinces",     "district",
        "districts",  "city",        "cities",       "town",          "towns",
        "region",     "regions",     "village",      "villages",      "county",
        "counties",   "department",  "departments",  "municipality",  "municipalities",
        "island",     "islands",     "near",         "area",          "areas",
    };
    return config;
}

namespace {

std::regex build_joiner_regex(const SplitConfig& config)
{
    std::string combined;
    for (const auto& pattern : config.joiner_patterns) {
        if (!combined.empty()) {
            combined += "|";
        }
        combined += "(?:" + pattern + ")";
    }
    if (combined.empty()) {
        combined = "(?!)"; // matches nothing
    }
    try {
        return std::regex(combined, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw Error(ErrorKind::Config, std::string("invalid joiner pattern: ") + e.what());
    }
}

std::optional<std::regex> build_dummy_regex(const SplitConfig& config)
{
    std::string combined;
    for (const auto& word : config.dummy_words) {
        if (word.empty()) {
            continue;
        }
        if (!combined.empty()) {
            combined += "|";
        }
        combined += str::regex_escape(word);
    }
    if (combined.empty()) {
        return std::nullopt;
    }
    try {
        return std::regex("\\b(?:" + combined + ")\\b", std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
        throw Error(ErrorKind::Config, std::string("invalid dummy word: ") + e.what());
    }
}

} // namespace

std::vector<std::string> split_location_string(std::string_view text, const SplitConfig& config,
                                               bool* uncertain)
{
    if (uncertain != nullptr) {
        *uncertain = text.find_first_of("()") != std::string_view::npos;
    }

    const std::string lowered = str::to_lower(text);
    const std::regex joiners = build_joiner_regex(config);
    const auto dummies = build_dummy_regex(config);

    std::vector<std::string> words;
    std::unordered_set<std::string> seen;

    std::sregex_token_iterator it(lowered.begin(), lowered.end(), joiners, -1);
    for (std::sregex_token_iterator end; it != end; ++it) {
        std::string token = *it;
        if (dummies.has_value()) {
            token = std::regex_replace(token, *dummies, " ");
        }
        token = str::collapse_whitespace(token);
        if (token.empty()) {
            continue;
        }
        if (config.deduplicate && !seen.insert(token).second) {
            continue;
        }
        words.push_back(std::move(token));
    }
    return words;
}

namespace {

void locationize_into(std::vector<LocationizedRecord>& out, const DisasterRecord& record,
                      const std::optional<std::string>& location_text, const SplitConfig& config)
{
    bool uncertain = false;
    std::vector<std::string> words;
    if (location_text.has_value() && !str::is_absent(*location_text)) {
        words = split_location_string(*location_text, config, &uncertain);
    }
    if (words.empty()) {
        words.emplace_back(); // keep the disaster visible
    }
    for (auto& word : words) {
        LocationizedRecord row;
        row.parent = record;
        row.location_word = std::move(word);
        row.uncertain_location_specificity = uncertain;
        out.push_back(std::move(row));
    }
}

} // namespace

std::vector<LocationizedRecord> split_locations(std::span<const DisasterRecord> records,
                                                const SplitConfig& config)
{
    std::vector<LocationizedRecord> out;
    out.reserve(records.size());
    for (const DisasterRecord& record : records) {
        locationize_into(out, record, record.location_string, config);
    }
    return out;
}

LocationizedDataset split_locations(const EmdatDataset& dataset, std::string_view column,
                                    const SplitConfig& config)
{
    const std::string wanted = str::normalize_column_name(column);

    // Resolve against the source header so error messages name real columns.
    std::vector<std::string> columns = dataset.source_columns;
    if (columns.empty()) {
        columns = {"Dis No", "Country", "Disaster Type", "Location", "Latitude", "Longitude"};
        if (!dataset.records.empty()) {
            for (const auto& [name, value] : dataset.records.front().extras) {
                columns.push_back(name);
            }
        }
    }
    auto match = std::find_if(columns.begin(), columns.end(), [&](const std::string& c) {
        return str::normalize_column_name(c) == wanted;
    });
    if (match == columns.end()) {
        std::string available;
        for (const auto& c : columns) {
            if (!available.empty()) {
                available += ", ";
            }
            available += c;
        }
        throw Error(ErrorKind::Config,
                    "unknown location column '" + std::string(column) + "'; available columns: " + available);
    }

    LocationizedDataset out;
    out.source_columns = columns;
    out.consumed_column = *match;

    const bool use_core_location = (wanted == "location");
    for (const DisasterRecord& record : dataset.records) {
        const auto location_text = use_core_location ? record.location_string : record.extra(*match);
        locationize_into(out.records, record, location_text, config);
    }
    return out;
}

Table to_table(const LocationizedDataset& dataset)
{
    Table table;
    for (const auto& column : dataset.source_columns) {
        if (column == dataset.consumed_column) {
            continue;
        }
        table.columns.push_back(column);
    }
    table.columns.push_back("location_word");
    table.columns.push_back("uncertain_location_specificity");

    EmdatDataset parents;
    parents.source_columns = dataset.source_columns;
    for (const auto& record : dataset.records) {
        parents.records.push_back(record.parent);
    }
    const Table parent_table = to_table(parents);

    std::vector<size_t> kept;
    for (size_t c = 0; c < parent_table.columns.size(); ++c) {
        if (parent_table.columns[c] != dataset.consumed_column) {
            kept.push_back(c);
        }
    }

    for (size_t r = 0; r < dataset.records.size(); ++r) {
        std::vector<std::string> row;
        row.reserve(table.columns.size());
        for (size_t c : kept) {
            row.push_back(parent_table.rows[r][c]);
        }
        row.push_back(dataset.records[r].location_word);
        row.push_back(dataset.records[r].uncertain_location_specificity ? "TRUE" : "FALSE");
        table.rows.push_back(std::move(row));
    }
    return table;
}

LocationizedDataset locationized_from_table(const Table& table)
{
    const size_t word_col = table.require_column("location_word");
    const size_t flag_col = table.require_column("uncertain_location_specificity");

    LocationizedDataset out;
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c == word_col || c == flag_col) {
            continue;
        }
        out.source_columns.push_back(table.columns[c]);
    }

    for (const auto& cells : table.rows) {
        LocationizedRecord row;
        for (size_t c = 0; c < table.columns.size(); ++c) {
            if (c == word_col) {
                row.location_word = cells[c];
                continue;
            }
            if (c == flag_col) {
                row.uncertain_location_specificity = str::to_lower(str::trim(cells[c])) == "true";
                continue;
            }
            const std::string n = str::normalize_column_name(table.columns[c]);
            if (n == "disno") {
                row.parent.dis_no = cells[c];
            } else if (n == "country") {
                row.parent.country = cells[c];
            } else if (n == "disastertype") {
                row.parent.disaster_type = cells[c];
            } else if (n == "location") {
                if (!str::is_absent(cells[c])) {
                    row.parent.location_string = cells[c];
                }
            } else if (n == "latitude") {
                if (!str::is_absent(cells[c])) {
                    row.parent.native_latitude = cells[c];
                }
            } else if (n == "longitude") {
                if (!str::is_absent(cells[c])) {
                    row.parent.native_longitude = cells[c];
                }
            } else {
                row.parent.extras.emplace_back(table.columns[c], cells[c]);
            }
        }
        out.records.push_back(std::move(row));
    }
    return out;
}

} // namespace emgeo

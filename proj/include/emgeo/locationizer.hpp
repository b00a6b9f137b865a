#pragma once

#include "emgeo/ingest.hpp"
#include "emgeo/table.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emgeo {

// Controls how a free-text location string is broken into location words.
// `joiner_patterns` are ECMAScript regular expressions tried in order (the
// earlier pattern wins where two could match at the same position);
// `dummy_words` are lowercase administrative-level words removed from every
// token as whole words.
struct SplitConfig {
    std::vector<std::string> joiner_patterns;
    std::vector<std::string> dummy_words;
    bool deduplicate = false;

    // Appends user patterns/words to this config. With `replace` the user
    // lists stand alone instead.
    SplitConfig& extend(const std::vector<std::string>& extra_joiners,
                        const std::vector<std::string>& extra_dummy_words, bool replace = false);
};

// The built-in delimiters and dummy words. Enumeration-marker patterns come
// before the bare parentheses so "(1)" is consumed as one marker instead of
// leaving a stray digit token.
SplitConfig default_split_config();

// One disaster-location pair. The parent record travels whole so no column
// is lost when the table is widened back out.
struct LocationizedRecord {
    DisasterRecord parent;
    std::string location_word; // lowercase, trimmed, delimiter free
    bool uncertain_location_specificity = false;

    bool operator==(const LocationizedRecord&) const = default;
};

struct LocationizedDataset {
    std::vector<LocationizedRecord> records;
    std::vector<std::string> source_columns;
    std::string consumed_column; // the location column that was split away
};

// Splits one location string into normalized location words.
// `uncertain` is set when the string contains parentheses.
std::vector<std::string> split_location_string(std::string_view text, const SplitConfig& config,
                                               bool* uncertain = nullptr);

// Turns one-row-per-disaster data into one-row-per-disaster-location-pair.
// Every record contributes at least one row: when the location string is
// absent or dissolves into nothing, a single row with an empty
// location_word keeps the disaster visible to downstream statistics.
LocationizedDataset split_locations(const EmdatDataset& dataset, std::string_view column = "Location",
                                    const SplitConfig& config = default_split_config());

std::vector<LocationizedRecord> split_locations(std::span<const DisasterRecord> records,
                                                const SplitConfig& config = default_split_config());

// Table 2 shape: parent columns (minus the consumed one) followed by
// location_word and uncertain_location_specificity with TRUE/FALSE cells.
Table to_table(const LocationizedDataset& dataset);

LocationizedDataset locationized_from_table(const Table& table);

} // namespace emgeo

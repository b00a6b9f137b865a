#pragma once

#include "emgeo/csv.hpp"
#include "emgeo/table.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace emgeo {

// Provenance block found above the column header of an EM-DAT export.
// Everything stays raw text; nothing is parsed into dates or numbers.
struct EmdatMetadata {
    std::string timestamp;
    std::string version;
    std::string request_type;

    // Every header line in file order, including the recognized ones.
    std::vector<std::pair<std::string, std::string>> entries;

    // Lines whose key is not one of timestamp/version/request type.
    std::vector<std::pair<std::string, std::string>> extra() const;

    size_t entry_count() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
};

// One row of an EM-DAT export. Core columns are typed; every other column
// is preserved verbatim in `extras`, in source order.
struct DisasterRecord {
    std::string dis_no;
    std::string country;
    std::string disaster_type;
    std::optional<std::string> location_string;
    std::optional<std::string> native_latitude;  // raw text, e.g. "48.60 N"
    std::optional<std::string> native_longitude; // raw text, e.g. "58.00 W"
    std::vector<std::pair<std::string, std::string>> extras;

    std::optional<std::string> extra(std::string_view column) const;

    bool operator==(const DisasterRecord&) const = default;
};

struct EmdatDataset {
    std::vector<DisasterRecord> records;
    std::optional<EmdatMetadata> metadata;

    // Original header order, used to write the dataset back out unchanged.
    std::vector<std::string> source_columns;
};

// Loads an EM-DAT public export. The file may start with a metadata block
// of key/value lines; the column header is located automatically. Only CSV
// is supported in this build; spreadsheet workbooks must be exported to CSV
// first.
EmdatDataset read_emdat(const std::filesystem::path& path, bool with_metadata = false);
EmdatDataset read_emdat_csv(std::string_view text, bool with_metadata = false);

// Returns how many leading rows precede the column-header row (the first
// row containing a "Dis No" variant) together with those rows parsed as
// metadata entries.
std::pair<size_t, EmdatMetadata> detect_header_block(const std::vector<csv::Row>& rows);

enum class CoordinateAxis { Latitude, Longitude };

// Converts a native EM-DAT coordinate cell to signed degrees. Accepts plain
// signed decimals and hemisphere-suffixed forms ("48.60 N", "58.00 W"); S
// and W negate. Blank/NA cells are absent. Unparseable non-blank text is
// absent too and appends a note to `warnings` when given; native
// coordinates are auxiliary and never abort a run.
std::optional<double> parse_native_coordinate(std::string_view text, CoordinateAxis axis,
                                              std::vector<std::string>* warnings = nullptr);

// parse_native_coordinate plus the validity range (lat within ±90, lng
// within ±180). Out-of-range values are rejected with a warning.
std::optional<double> parse_coordinate_cell(std::string_view text, CoordinateAxis axis,
                                            std::vector<std::string>* warnings = nullptr);

Table to_table(const EmdatDataset& dataset);
void write_emdat_csv(const EmdatDataset& dataset, std::ostream& out);
void write_emdat_csv(const EmdatDataset& dataset, const std::filesystem::path& path);

} // namespace emgeo

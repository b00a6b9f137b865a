#include "emgeo/ingest.hpp"

#include "emgeo/error.hpp"
#include "emgeo/strings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace emgeo {

namespace {

enum class CoreField { DisNo, Country, DisasterType, Location, Latitude, Longitude };

std::optional<CoreField> core_field_for(std::string_view column)
{
    const std::string n = str::normalize_column_name(column);
    if (n == "disno") return CoreField::DisNo;
    if (n == "country") return CoreField::Country;
    if (n == "disastertype") return CoreField::DisasterType;
    if (n == "location") return CoreField::Location;
    if (n == "latitude") return CoreField::Latitude;
    if (n == "longitude") return CoreField::Longitude;
    return std::nullopt;
}

bool is_dis_no_column(std::string_view column)
{
    return str::normalize_column_name(column) == "disno";
}

std::optional<std::string> optional_cell(const std::string& cell)
{
    if (str::is_absent(cell)) {
        return std::nullopt;
    }
    return cell;
}

// A metadata line is either "key: value" in one cell or key and value in
// separate cells.
std::pair<std::string, std::string> parse_metadata_line(const csv::Row& row)
{
    std::vector<std::string> cells;
    for (const auto& cell : row) {
        if (!str::trim(cell).empty()) {
            cells.push_back(std::string(str::trim(cell)));
        }
    }
    if (cells.empty()) {
        return {"", ""};
    }
    if (cells.size() >= 2) {
        std::string key = cells[0];
        if (!key.empty() && key.back() == ':') {
            key.pop_back();
        }
        std::string value = cells[1];
        for (size_t i = 2; i < cells.size(); ++i) {
            value += "," + cells[i];
        }
        return {std::string(str::trim(key)), value};
    }
    const std::string& line = cells[0];
    auto colon = line.find(':');
    if (colon == std::string::npos) {
        return {line, ""};
    }
    return {std::string(str::trim(line.substr(0, colon))),
            std::string(str::trim(line.substr(colon + 1)))};
}

void assign_recognized(EmdatMetadata& meta, const std::string& key, const std::string& value)
{
    const std::string n = str::normalize_column_name(key);
    if ((n == "timestamp" || n == "creationdate") && meta.timestamp.empty()) {
        meta.timestamp = value;
    } else if (n == "version" && meta.version.empty()) {
        meta.version = value;
    } else if ((n == "requesttype" || n == "typeofrequest") && meta.request_type.empty()) {
        meta.request_type = value;
    }
}

bool looks_like_xlsx(const std::filesystem::path& path)
{
    std::string ext = str::to_lower(path.extension().string());
    return ext == ".xlsx" || ext == ".xls";
}

} // namespace

std::vector<std::pair<std::string, std::string>> EmdatMetadata::extra() const
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [key, value] : entries) {
        const std::string n = str::normalize_column_name(key);
        if (n == "timestamp" || n == "creationdate" || n == "version" || n == "requesttype" ||
            n == "typeofrequest") {
            continue;
        }
        out.emplace_back(key, value);
    }
    return out;
}

std::optional<std::string> DisasterRecord::extra(std::string_view column) const
{
    for (const auto& [name, value] : extras) {
        if (name == column) {
            return value;
        }
    }
    return std::nullopt;
}

std::pair<size_t, EmdatMetadata> detect_header_block(const std::vector<csv::Row>& rows)
{
    if (rows.empty()) {
        throw Error(ErrorKind::Format, "input has no rows");
    }
    for (size_t r = 0; r < rows.size(); ++r) {
        if (std::any_of(rows[r].begin(), rows[r].end(), [](const std::string& c) { return is_dis_no_column(c); })) {
            EmdatMetadata meta;
            for (size_t m = 0; m < r; ++m) {
                auto [key, value] = parse_metadata_line(rows[m]);
                if (key.empty() && value.empty()) {
                    continue;
                }
                meta.entries.emplace_back(key, value);
                assign_recognized(meta, key, value);
            }
            return {r, std::move(meta)};
        }
    }
    std::string seen;
    for (const auto& cell : rows.front()) {
        if (!seen.empty()) {
            seen += ", ";
        }
        seen += cell;
    }
    throw Error(ErrorKind::Format,
                "no header row with a 'Dis No' column found; first row columns were: " + seen);
}

EmdatDataset read_emdat_csv(std::string_view text, bool with_metadata)
{
    auto rows = csv::parse(text);
    auto [skip, metadata] = detect_header_block(rows);

    EmdatDataset dataset;
    if (with_metadata && !metadata.empty()) {
        dataset.metadata = std::move(metadata);
    }

    const csv::Row& header = rows[skip];
    dataset.source_columns = header;

    std::vector<std::optional<CoreField>> mapping(header.size());
    for (size_t c = 0; c < header.size(); ++c) {
        mapping[c] = core_field_for(header[c]);
    }

    std::map<std::string, std::vector<size_t>> seen_dis_no;
    for (size_t r = skip + 1; r < rows.size(); ++r) {
        csv::Row row = rows[r];
        if (row.size() > header.size()) {
            throw Error(ErrorKind::Format,
                        "row " + std::to_string(r + 1) + " has more fields than the header");
        }
        row.resize(header.size());

        DisasterRecord record;
        for (size_t c = 0; c < header.size(); ++c) {
            if (!mapping[c].has_value()) {
                record.extras.emplace_back(header[c], row[c]);
                continue;
            }
            switch (*mapping[c]) {
            case CoreField::DisNo: record.dis_no = std::string(str::trim(row[c])); break;
            case CoreField::Country: record.country = row[c]; break;
            case CoreField::DisasterType: record.disaster_type = row[c]; break;
            case CoreField::Location: record.location_string = optional_cell(row[c]); break;
            case CoreField::Latitude: record.native_latitude = optional_cell(row[c]); break;
            case CoreField::Longitude: record.native_longitude = optional_cell(row[c]); break;
            }
        }
        if (record.dis_no.empty()) {
            throw Error(ErrorKind::Validation, "row " + std::to_string(r + 1) + " has an empty Dis No");
        }
        seen_dis_no[record.dis_no].push_back(r + 1);
        dataset.records.push_back(std::move(record));
    }

    std::string duplicates;
    for (const auto& [dis_no, lines] : seen_dis_no) {
        if (lines.size() > 1) {
            if (!duplicates.empty()) {
                duplicates += ", ";
            }
            duplicates += dis_no;
        }
    }
    if (!duplicates.empty()) {
        throw Error(ErrorKind::Validation, "duplicate Dis No values: " + duplicates);
    }
    return dataset;
}

EmdatDataset read_emdat(const std::filesystem::path& path, bool with_metadata)
{
    if (looks_like_xlsx(path)) {
        throw Error(ErrorKind::Config,
                    "spreadsheet-workbook input is not enabled in this build; export '" +
                        path.filename().string() + "' as CSV");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_emdat_csv(buffer.str(), with_metadata);
}

std::optional<double> parse_native_coordinate(std::string_view text, CoordinateAxis axis,
                                              std::vector<std::string>* warnings)
{
    if (str::is_absent(text)) {
        return std::nullopt;
    }

    std::string compact;
    compact.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            compact.push_back(c);
        }
    }

    auto warn = [&](const std::string& why) -> std::optional<double> {
        if (warnings != nullptr) {
            warnings->push_back("cannot parse coordinate '" + std::string(str::trim(text)) + "': " + why);
        }
        return std::nullopt;
    };

    double sign = 1.0;
    bool has_hemisphere = false;
    char last = static_cast<char>(std::toupper(static_cast<unsigned char>(compact.back())));
    if (last == 'N' || last == 'S' || last == 'E' || last == 'W') {
        const bool lat_letter = (last == 'N' || last == 'S');
        if (lat_letter != (axis == CoordinateAxis::Latitude)) {
            return warn("hemisphere letter does not match the axis");
        }
        if (last == 'S' || last == 'W') {
            sign = -1.0;
        }
        has_hemisphere = true;
        compact.pop_back();
    }
    if (compact.empty()) {
        return warn("no numeric part");
    }
    if (has_hemisphere && (compact.front() == '+' || compact.front() == '-')) {
        return warn("both a sign and a hemisphere letter");
    }

    const char* begin = compact.data();
    const char* end = begin + compact.size();
    if (*begin == '+') {
        ++begin; // from_chars does not accept a leading plus
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        return warn("not a number");
    }
    return sign * value;
}

std::optional<double> parse_coordinate_cell(std::string_view text, CoordinateAxis axis,
                                            std::vector<std::string>* warnings)
{
    auto value = parse_native_coordinate(text, axis, warnings);
    if (!value.has_value()) {
        return std::nullopt;
    }
    const double bound = axis == CoordinateAxis::Latitude ? 90.0 : 180.0;
    if (*value < -bound || *value > bound) {
        if (warnings != nullptr) {
            warnings->push_back("coordinate out of range: " + std::string(str::trim(text)));
        }
        return std::nullopt;
    }
    return value;
}

static std::vector<std::string> effective_columns(const EmdatDataset& dataset)
{
    if (!dataset.source_columns.empty()) {
        return dataset.source_columns;
    }
    std::vector<std::string> columns = {"Dis No",   "Country",  "Disaster Type",
                                        "Location", "Latitude", "Longitude"};
    if (!dataset.records.empty()) {
        for (const auto& [name, value] : dataset.records.front().extras) {
            columns.push_back(name);
        }
    }
    return columns;
}

Table to_table(const EmdatDataset& dataset)
{
    Table table;
    table.columns = effective_columns(dataset);

    for (const auto& record : dataset.records) {
        std::vector<std::string> row;
        row.reserve(table.columns.size());
        for (const auto& column : table.columns) {
            if (auto core = core_field_for(column); core.has_value()) {
                switch (*core) {
                case CoreField::DisNo: row.push_back(record.dis_no); break;
                case CoreField::Country: row.push_back(record.country); break;
                case CoreField::DisasterType: row.push_back(record.disaster_type); break;
                case CoreField::Location: row.push_back(record.location_string.value_or("")); break;
                case CoreField::Latitude: row.push_back(record.native_latitude.value_or("")); break;
                case CoreField::Longitude: row.push_back(record.native_longitude.value_or("")); break;
                }
            } else {
                row.push_back(record.extra(column).value_or(""));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_emdat_csv(const EmdatDataset& dataset, std::ostream& out)
{
    to_table(dataset).to_csv(out);
}

void write_emdat_csv(const EmdatDataset& dataset, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write file: " + path.string());
    }
    write_emdat_csv(dataset, out);
}

} // namespace emgeo

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace emgeo::csv {

using Row = std::vector<std::string>;

// RFC 4180 parser: comma delimited, double quotes escape quotes, quoted
// fields may contain commas and newlines. Accepts LF and CRLF endings and
// skips a leading UTF-8 BOM. A trailing newline does not produce an empty
// final row.
std::vector<Row> parse(std::string_view text);

std::vector<Row> parse_file(const std::filesystem::path& path);

// Quotes a field only when it contains a comma, quote or line break.
std::string escape_field(std::string_view field);

void write_row(std::ostream& out, const Row& row);
void write(std::ostream& out, const std::vector<Row>& rows);
std::string to_string(const std::vector<Row>& rows);

} // namespace emgeo::csv

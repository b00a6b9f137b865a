#pragma once

#include <string>
#include <string_view>

namespace emgeo::str {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Collapses every whitespace run to a single space and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Lowercases and strips every non-alphanumeric character, so that
// "Dis No", "Dis.No" and "dis_no" all compare equal.
std::string normalize_column_name(std::string_view name);

// Blank cells and the literals NA / N/A (any case) stand for missing values.
bool is_absent(std::string_view cell);

// Escapes a literal string for embedding in a regular expression.
std::string regex_escape(std::string_view s);

} // namespace emgeo::str

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace emgeo {

// Maps a country name to its ISO 3166-1 alpha-2 code. The raw name is tried
// first, then the name with trailing parentheticals removed, so export
// forms like "United States of America (the)" resolve. Matching is exact
// first, then case-insensitive. Unknown names yield no code, which simply
// means an unbiased search downstream.
std::optional<std::string> country_to_iso2(std::string_view country_name);

// "United States of America (the)" -> "United States of America".
std::string strip_trailing_parentheticals(std::string_view name);

} // namespace emgeo

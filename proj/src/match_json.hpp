#pragma once

#include "emgeo/cache.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace emgeo::detail {

// Parses a "geonames"-style array of match objects. The live service sends
// lat/lng as strings; fixtures may use numbers. Matches with out-of-range
// coordinates are dropped with a warning.
std::vector<GeocodeMatch> parse_match_array(const nlohmann::json& array,
                                            std::vector<std::string>* warnings = nullptr);

nlohmann::json match_to_json(const GeocodeMatch& match);

} // namespace emgeo::detail

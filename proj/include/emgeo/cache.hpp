#pragma once

#include "emgeo/geo.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emgeo {

// One ranked match returned by the geocoding service.
struct GeocodeMatch {
    GeoPoint point;
    std::string toponym_name;
    std::optional<std::string> country_code;
    int rank = 1;

    bool operator==(const GeocodeMatch&) const = default;
};

// Cache/fixture key: the location word lowercased and single-spaced plus
// the optional ISO-2 country bias.
struct CacheKey {
    std::string word;
    std::string country_bias; // empty when the search is unbiased

    static CacheKey make(std::string_view word, std::string_view country_bias = {});

    // "word|CC" form used for fixture files and cache indexing.
    std::string flat() const;

    bool operator==(const CacheKey&) const = default;
};

struct CacheEntry {
    CacheKey key;
    std::vector<GeocodeMatch> matches;
    std::int64_t fetched_at = 0;
};

// JSON array text for the nested CSV column and the cache files.
std::string matches_to_json(std::span<const GeocodeMatch> matches);

// Exact-key response cache. With a directory configured every entry is also
// written as one JSON file, so a rerun after a crash or quota stop resumes
// from disk. A corrupt file is reported as a warning and treated as a miss;
// the next store rewrites it.
class GeocodeCache {
public:
    GeocodeCache() = default;
    explicit GeocodeCache(std::filesystem::path directory);

    std::optional<CacheEntry> lookup(const CacheKey& key, std::vector<std::string>* warnings = nullptr);
    void store(const CacheEntry& entry);

    bool persistent() const { return !directory_.empty(); }
    std::filesystem::path file_for(const CacheKey& key) const;

private:
    std::filesystem::path directory_;
    std::map<std::string, CacheEntry> memory_;
    std::mutex mutex_;
};

// Read-only store of recorded service responses keyed like the cache.
// Accepts either a single JSON file mapping "word|CC" to a response (an
// array of matches or an object with a "geonames" array) or a directory of
// *.json files each holding {"key": ..., "geonames": [...]}.
class FixtureStore {
public:
    static FixtureStore load(const std::filesystem::path& path);

    std::optional<std::vector<GeocodeMatch>> lookup(const CacheKey& key) const;
    size_t size() const { return entries_.size(); }

private:
    std::map<std::string, std::vector<GeocodeMatch>> entries_;
};

} // namespace emgeo

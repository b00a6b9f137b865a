#include "emgeo/cache.hpp"

#include "emgeo/error.hpp"
#include "emgeo/strings.hpp"
#include "match_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>

namespace emgeo {

using nlohmann::json;

namespace detail {

std::vector<GeocodeMatch> parse_match_array(const json& array, std::vector<std::string>* warnings)
{
    if (!array.is_array()) {
        throw Error(ErrorKind::Format, "expected an array of geocode matches");
    }
    auto coordinate = [](const json& value) -> double {
        if (value.is_string()) {
            return std::stod(value.get<std::string>());
        }
        return value.get<double>();
    };

    std::vector<GeocodeMatch> matches;
    matches.reserve(array.size());
    for (const auto& item : array) {
        GeocodeMatch match;
        match.point.lat = coordinate(item.at("lat"));
        match.point.lng = coordinate(item.at("lng"));
        if (item.contains("toponymName")) {
            match.toponym_name = item["toponymName"].get<std::string>();
        } else if (item.contains("name")) {
            match.toponym_name = item["name"].get<std::string>();
        }
        if (item.contains("countryCode") && item["countryCode"].is_string()) {
            auto code = item["countryCode"].get<std::string>();
            if (!code.empty()) {
                match.country_code = code;
            }
        }
        if (!valid_latitude(match.point.lat) || !valid_longitude(match.point.lng)) {
            if (warnings != nullptr) {
                warnings->push_back("dropping match '" + match.toponym_name +
                                    "' with out-of-range coordinates");
            }
            continue;
        }
        match.rank = static_cast<int>(matches.size()) + 1;
        matches.push_back(std::move(match));
    }
    return matches;
}

json match_to_json(const GeocodeMatch& match)
{
    json item;
    item["lat"] = match.point.lat;
    item["lng"] = match.point.lng;
    item["toponymName"] = match.toponym_name;
    if (match.country_code.has_value()) {
        item["countryCode"] = *match.country_code;
    }
    item["rank"] = match.rank;
    return item;
}

} // namespace detail

CacheKey CacheKey::make(std::string_view word, std::string_view country_bias)
{
    CacheKey key;
    key.word = str::collapse_whitespace(str::to_lower(word));
    for (char c : country_bias) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            key.country_bias.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    return key;
}

std::string CacheKey::flat() const
{
    return word + "|" + country_bias;
}

std::string matches_to_json(std::span<const GeocodeMatch> matches)
{
    json array = json::array();
    for (const auto& match : matches) {
        array.push_back(detail::match_to_json(match));
    }
    return array.dump();
}

namespace {

// FNV-1a, enough to keep sanitized filenames collision free alongside the
// exact-key check performed on load.
std::string key_hash(const std::string& flat)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : flat) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

std::string key_slug(const std::string& flat)
{
    std::string slug;
    for (char c : flat) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            slug.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!slug.empty() && slug.back() != '-') {
            slug.push_back('-');
        }
        if (slug.size() >= 40) {
            break;
        }
    }
    while (!slug.empty() && slug.back() == '-') {
        slug.pop_back();
    }
    return slug.empty() ? "entry" : slug;
}

} // namespace

GeocodeCache::GeocodeCache(std::filesystem::path directory) : directory_(std::move(directory))
{
    if (!directory_.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(directory_, ec);
        if (ec) {
            throw Error(ErrorKind::Io, "cannot create cache directory: " + directory_.string());
        }
    }
}

std::filesystem::path GeocodeCache::file_for(const CacheKey& key) const
{
    const std::string flat = key.flat();
    return directory_ / (key_slug(flat) + "-" + key_hash(flat) + ".json");
}

std::optional<CacheEntry> GeocodeCache::lookup(const CacheKey& key, std::vector<std::string>* warnings)
{
    std::lock_guard lock(mutex_);
    if (auto it = memory_.find(key.flat()); it != memory_.end()) {
        return it->second;
    }
    if (directory_.empty()) {
        return std::nullopt;
    }
    const auto path = file_for(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    try {
        json doc = json::parse(in);
        if (doc.at("key").get<std::string>() != key.flat()) {
            return std::nullopt; // hash collision; treat as miss
        }
        CacheEntry entry;
        entry.key = key;
        entry.fetched_at = doc.value("fetched_at", std::int64_t{0});
        entry.matches = detail::parse_match_array(doc.at("matches"), warnings);
        memory_[key.flat()] = entry;
        return entry;
    } catch (const std::exception& e) {
        if (warnings != nullptr) {
            warnings->push_back("ignoring corrupt cache file " + path.string() + ": " + e.what());
        }
        return std::nullopt;
    }
}

void GeocodeCache::store(const CacheEntry& entry)
{
    std::lock_guard lock(mutex_);
    memory_[entry.key.flat()] = entry;
    if (directory_.empty()) {
        return;
    }
    json doc;
    doc["key"] = entry.key.flat();
    doc["word"] = entry.key.word;
    doc["country"] = entry.key.country_bias;
    doc["fetched_at"] = entry.fetched_at;
    json matches = json::array();
    for (const auto& match : entry.matches) {
        matches.push_back(detail::match_to_json(match));
    }
    doc["matches"] = std::move(matches);

    const auto path = file_for(entry.key);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw Error(ErrorKind::Io, "cannot write cache file: " + path.string());
        }
        out << doc.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, path);
}

FixtureStore FixtureStore::load(const std::filesystem::path& path)
{
    FixtureStore store;

    auto matches_of = [](const json& value) {
        if (value.is_array()) {
            return detail::parse_match_array(value);
        }
        return detail::parse_match_array(value.at("geonames"));
    };

    try {
        if (std::filesystem::is_directory(path)) {
            std::vector<std::filesystem::path> files;
            for (const auto& entry : std::filesystem::directory_iterator(path)) {
                if (entry.path().extension() == ".json") {
                    files.push_back(entry.path());
                }
            }
            std::sort(files.begin(), files.end());
            for (const auto& file : files) {
                std::ifstream in(file, std::ios::binary);
                if (!in) {
                    throw Error(ErrorKind::Io, "cannot open fixture file: " + file.string());
                }
                json doc = json::parse(in);
                store.entries_[doc.at("key").get<std::string>()] = matches_of(doc);
            }
            return store;
        }

        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw Error(ErrorKind::Io, "cannot open fixture store: " + path.string());
        }
        json doc = json::parse(in);
        if (!doc.is_object()) {
            throw Error(ErrorKind::Format, "fixture store must be a JSON object keyed by 'word|CC'");
        }
        for (const auto& [key, value] : doc.items()) {
            store.entries_[key] = matches_of(value);
        }
        return store;
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Format, "malformed fixture store " + path.string() + ": " + e.what());
    }
}

std::optional<std::vector<GeocodeMatch>> FixtureStore::lookup(const CacheKey& key) const
{
    if (auto it = entries_.find(key.flat()); it != entries_.end()) {
        return it->second;
    }
    return std::nullopt;
}

} // namespace emgeo

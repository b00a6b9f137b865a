#pragma once

#include "emgeo/cache.hpp"
#include "emgeo/clock.hpp"
#include "emgeo/quota.hpp"

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emgeo {

enum class ClientMode { Live, OfflineFixtures };

struct GeoNamesConfig {
    std::string username;                          // required for live mode
    std::string base_url = "http://api.geonames.org";
    int hourly_budget = 1000;                      // free-tier limits
    int daily_budget = 20000;
    double timeout_seconds = 10.0;
    ClientMode mode = ClientMode::Live;
    std::filesystem::path fixtures_path;           // required for fixture mode
    std::filesystem::path cache_dir;               // empty: in-memory cache only
    bool fulltext_search = true;                   // q= (full text) vs name= (exact)
    bool cache_enabled = true;

    void validate() const;
};

// Search client for the GeoNames "searchJSON" endpoint. Live requests pass
// through the quota governor; responses land in the cache, so repeated
// words cost nothing and an interrupted run resumes where it stopped. In
// fixture mode every lookup is served from the recorded store and the
// network is never touched.
class GeoNamesClient {
public:
    explicit GeoNamesClient(GeoNamesConfig config, std::shared_ptr<Clock> clock = nullptr);

    // Ordered matches for one location word, best first. An empty word
    // issues no query and yields no matches; an unknown word yields an
    // empty list (the record simply stays ungeocoded).
    std::vector<GeocodeMatch> search(std::string_view word,
                                     const std::optional<std::string>& country_bias, int max_rows);

    const GeoNamesConfig& config() const { return config_; }
    Clock& clock() { return *clock_; }
    GeocodeCache& cache() { return *cache_; }
    const QuotaGovernor& governor() const { return *governor_; }

    int network_request_count() const { return network_requests_.load(); }

    // Accumulated non-fatal notes (corrupt cache files, dropped matches).
    std::vector<std::string> take_warnings();

private:
    std::vector<GeocodeMatch> fetch_live(const CacheKey& key, int max_rows);
    std::vector<GeocodeMatch> perform_request(const CacheKey& key, int max_rows);

    GeoNamesConfig config_;
    std::shared_ptr<Clock> clock_;
    std::unique_ptr<QuotaGovernor> governor_;
    std::unique_ptr<GeocodeCache> cache_;
    std::optional<FixtureStore> fixtures_;
    std::vector<std::string> warnings_;
    std::mutex warnings_mutex_;
    std::atomic<int> network_requests_ = 0;
};

// Percent-encodes one query-string value.
std::string url_encode(std::string_view value);

} // namespace emgeo

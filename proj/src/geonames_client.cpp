#include "emgeo/geonames_client.hpp"

#include "emgeo/error.hpp"
#include "emgeo/strings.hpp"
#include "match_json.hpp"

#include <httplib.h>
#include <json.hpp>

#include <array>
#include <cctype>
#include <utility>

namespace emgeo {

using nlohmann::json;

void GeoNamesConfig::validate() const
{
    if (hourly_budget <= 0 || daily_budget <= 0) {
        throw Error(ErrorKind::Config, "quota budgets must be positive");
    }
    if (mode == ClientMode::Live && username.empty()) {
        throw Error(ErrorKind::Config,
                    "live geocoding requires a GeoNames username (flag or GEONAMES_USERNAME)");
    }
    if (mode == ClientMode::OfflineFixtures && fixtures_path.empty()) {
        throw Error(ErrorKind::Config, "fixture mode requires a fixture store path");
    }
}

std::string url_encode(std::string_view value)
{
    static const char* digits = "0123456789ABCDEF";
    std::string out;
    out.reserve(value.size());
    for (unsigned char c : value) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(digits[c >> 4]);
            out.push_back(digits[c & 0xF]);
        }
    }
    return out;
}

namespace {

struct SplitUrl {
    std::string host; // scheme://host[:port]
    std::string path_prefix;
};

SplitUrl split_base_url(const std::string& base_url)
{
    SplitUrl out;
    auto scheme_end = base_url.find("://");
    size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    auto slash = base_url.find('/', host_start);
    if (slash == std::string::npos) {
        out.host = base_url;
    } else {
        out.host = base_url.substr(0, slash);
        out.path_prefix = base_url.substr(slash);
        while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
            out.path_prefix.pop_back();
        }
    }
    return out;
}

// GeoNames reports failures inside a 200 response as {"status": {...}}.
// Values 18/19/20 are the daily/hourly/weekly credit limits.
bool is_quota_status(int value)
{
    return value == 18 || value == 19 || value == 20;
}

} // namespace

GeoNamesClient::GeoNamesClient(GeoNamesConfig config, std::shared_ptr<Clock> clock)
    : config_(std::move(config)), clock_(clock ? std::move(clock) : system_clock())
{
    config_.validate();
    governor_ = std::make_unique<QuotaGovernor>(config_.hourly_budget, config_.daily_budget);
    cache_ = std::make_unique<GeocodeCache>(config_.cache_dir);
    if (config_.mode == ClientMode::OfflineFixtures) {
        fixtures_ = FixtureStore::load(config_.fixtures_path);
    }
}

std::vector<std::string> GeoNamesClient::take_warnings()
{
    std::lock_guard lock(warnings_mutex_);
    return std::exchange(warnings_, {});
}

std::vector<GeocodeMatch> GeoNamesClient::search(std::string_view word,
                                                 const std::optional<std::string>& country_bias,
                                                 int max_rows)
{
    if (max_rows < 1) {
        max_rows = 1;
    }
    const CacheKey key = CacheKey::make(word, country_bias.value_or(""));
    if (key.word.empty()) {
        return {};
    }

    if (config_.cache_enabled) {
        std::vector<std::string> cache_warnings;
        if (auto hit = cache_->lookup(key, &cache_warnings); hit.has_value()) {
            auto matches = hit->matches;
            if (matches.size() > static_cast<size_t>(max_rows)) {
                matches.resize(static_cast<size_t>(max_rows));
            }
            return matches;
        }
        if (!cache_warnings.empty()) {
            std::lock_guard lock(warnings_mutex_);
            warnings_.insert(warnings_.end(), cache_warnings.begin(), cache_warnings.end());
        }
    }

    std::vector<GeocodeMatch> matches;
    if (config_.mode == ClientMode::OfflineFixtures) {
        matches = fixtures_->lookup(key).value_or(std::vector<GeocodeMatch>{});
        if (matches.size() > static_cast<size_t>(max_rows)) {
            matches.resize(static_cast<size_t>(max_rows));
        }
    } else {
        matches = fetch_live(key, max_rows);
    }

    if (config_.cache_enabled) {
        CacheEntry entry;
        entry.key = key;
        entry.matches = matches;
        entry.fetched_at = static_cast<std::int64_t>(clock_->now());
        cache_->store(entry);
    }
    return matches;
}

std::vector<GeocodeMatch> GeoNamesClient::fetch_live(const CacheKey& key, int max_rows)
{
    // Transport failures retry with backoff; each attempt consumes a quota
    // permit since the service may have seen it. Quota refusals from the
    // service are never retried inside the same window.
    static constexpr std::array<double, 2> backoff = {1.0, 2.0};
    constexpr int max_attempts = 3;

    std::string last_failure;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        if (attempt > 0) {
            clock_->sleep_for(backoff[static_cast<size_t>(attempt - 1)]);
        }
        governor_->acquire(*clock_);
        try {
            return perform_request(key, max_rows);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Io) {
                throw; // quota/config/format failures are not transport issues
            }
            last_failure = e.what();
        }
    }
    throw Error(ErrorKind::Io, "geonames request failed after " + std::to_string(max_attempts) +
                                   " attempts: " + last_failure);
}

std::vector<GeocodeMatch> GeoNamesClient::perform_request(const CacheKey& key, int max_rows)
{
    const SplitUrl url = split_base_url(config_.base_url);

    std::string path = url.path_prefix + "/searchJSON?";
    path += (config_.fulltext_search ? "q=" : "name=") + url_encode(key.word);
    if (!key.country_bias.empty()) {
        path += "&country=" + url_encode(key.country_bias);
    }
    path += "&maxRows=" + std::to_string(max_rows);
    path += "&username=" + url_encode(config_.username);

    httplib::Client client(url.host);
    const auto timeout = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::duration<double>(config_.timeout_seconds));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);

    ++network_requests_;
    httplib::Result result = client.Get(path);
    if (!result) {
        throw Error(ErrorKind::Io, "transport error: " + httplib::to_string(result.error()));
    }
    if (result->status >= 500) {
        throw Error(ErrorKind::Io, "server error: http status " + std::to_string(result->status));
    }
    if (result->status != 200) {
        throw Error(ErrorKind::Config, "unexpected http status " + std::to_string(result->status));
    }

    json doc;
    try {
        doc = json::parse(result->body);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Format, std::string("malformed geonames response: ") + e.what());
    }

    if (doc.contains("status")) {
        const auto& status = doc["status"];
        const std::string message = status.value("message", std::string("(no message)"));
        const int value = status.value("value", 0);
        if (is_quota_status(value)) {
            throw Error(ErrorKind::Quota, "geonames quota exhausted: " + message);
        }
        throw Error(ErrorKind::Config, "geonames refused the request: " + message);
    }

    std::vector<std::string> parse_warnings;
    auto matches = detail::parse_match_array(doc.value("geonames", json::array()), &parse_warnings);
    if (!parse_warnings.empty()) {
        std::lock_guard lock(warnings_mutex_);
        warnings_.insert(warnings_.end(), parse_warnings.begin(), parse_warnings.end());
    }
    return matches;
}

} // namespace emgeo

#pragma once

#include "emgeo/cache.hpp"
#include "emgeo/countries.hpp"
#include "emgeo/error.hpp"
#include "emgeo/geonames_client.hpp"
#include "emgeo/locationizer.hpp"
#include "emgeo/table.hpp"

#include <optional>
#include <string>
#include <vector>

namespace emgeo {

// Batch schedule for long runs: consecutive slices of `batch_size` records
// separated by `wait_time` seconds of latency. The defaults keep one batch
// inside the free-tier hourly budget.
struct BatchPlan {
    long long batch_size = 990;
    double wait_time = 4800.0;

    void validate() const;
};

struct GeocodeOptions {
    int n_results = 1;
    bool use_country_bias = true; // bias the search with the record's country
    int worker_count = 1;
};

struct GeocodedRecord {
    LocationizedRecord base;
    std::vector<GeocodeMatch> matches; // ordered, length <= n_results

    // The rank-1 match, absent when nothing matched.
    std::optional<GeoPoint> point() const
    {
        if (matches.empty()) {
            return std::nullopt;
        }
        return matches.front().point;
    }
};

struct GeocodedDataset {
    std::vector<GeocodedRecord> records;
    std::vector<std::string> source_columns;
    std::string consumed_column;
    int n_results = 1;
};

// Raised when the service reports an exhausted quota mid-run. Everything up
// to `resume_index` is already in the cache, so rerunning the same command
// continues from there.
class GeocodeInterrupted : public Error {
public:
    GeocodeInterrupted(const std::string& message, size_t resume_index)
        : Error(ErrorKind::Quota, message + " (completed rows are cached; restart from row " +
                                      std::to_string(resume_index) + ")"),
          resume_index_(resume_index)
    {
    }

    size_t resume_index() const { return resume_index_; }

private:
    size_t resume_index_;
};

// Geocodes every row with a non-empty location word, biasing by the
// record's country unless disabled. Rows keep their input order and count.
GeocodedDataset geocode(const LocationizedDataset& dataset, GeoNamesClient& client,
                        const GeocodeOptions& options = {});

// Same result as geocode, processed in slices with a latency period between
// them (through the client's clock, so tests simulate it).
GeocodedDataset geocode_batches(const LocationizedDataset& dataset, GeoNamesClient& client,
                                const BatchPlan& plan, const GeocodeOptions& options = {});

// Nested mode appends lat/lng (rank-1 match, 5-decimal fixed) plus a JSON
// `matches` column; unwrapped mode appends lat1,lng1..latN,lngN instead.
Table to_table(const GeocodedDataset& dataset, bool unwrap = false);

// Fixed 5-decimal coordinate text, the format used for every geocoded CSV
// cell.
std::string format_coordinate(double value);

} // namespace emgeo

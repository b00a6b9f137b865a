#include "emgeo/geocoder.hpp"

#include "emgeo/error.hpp"
#include "emgeo/strings.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <thread>

namespace emgeo {

void BatchPlan::validate() const
{
    if (batch_size < 1) {
        throw Error(ErrorKind::Config, "batch size must be at least 1");
    }
    if (wait_time < 0) {
        throw Error(ErrorKind::Config, "wait time must not be negative");
    }
}

std::string format_coordinate(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.5f", value);
    return buffer;
}

namespace {

void geocode_rows(const LocationizedDataset& dataset, GeoNamesClient& client,
                  const GeocodeOptions& options, size_t begin, size_t end,
                  std::vector<GeocodedRecord>& out)
{
    auto geocode_one = [&](size_t index) {
        const LocationizedRecord& row = dataset.records[index];
        GeocodedRecord result;
        result.base = row;
        if (!row.location_word.empty()) {
            std::optional<std::string> bias;
            if (options.use_country_bias) {
                bias = country_to_iso2(row.parent.country);
            }
            try {
                result.matches = client.search(row.location_word, bias, options.n_results);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Quota) {
                    throw GeocodeInterrupted(e.what(), index);
                }
                throw;
            }
        }
        out[index] = std::move(result);
    };

    if (options.worker_count <= 1 || end - begin <= 1) {
        for (size_t i = begin; i < end; ++i) {
            geocode_one(i);
        }
        return;
    }

    std::atomic<size_t> next{begin};
    std::atomic<bool> stopped{false};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    size_t failure_index = end;

    auto worker = [&] {
        while (!stopped.load()) {
            const size_t index = next.fetch_add(1);
            if (index >= end) {
                return;
            }
            try {
                geocode_one(index);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure || index < failure_index) {
                    failure = std::current_exception();
                    failure_index = index;
                }
                stopped.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    const int count = std::min<int>(options.worker_count, static_cast<int>(end - begin));
    threads.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        threads.emplace_back(worker);
    }
    for (auto& thread : threads) {
        thread.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

GeocodedDataset geocode(const LocationizedDataset& dataset, GeoNamesClient& client,
                        const GeocodeOptions& options)
{
    if (options.n_results < 1) {
        throw Error(ErrorKind::Config, "n_results must be at least 1");
    }
    GeocodedDataset out;
    out.source_columns = dataset.source_columns;
    out.consumed_column = dataset.consumed_column;
    out.n_results = options.n_results;
    out.records.resize(dataset.records.size());
    geocode_rows(dataset, client, options, 0, dataset.records.size(), out.records);
    return out;
}

GeocodedDataset geocode_batches(const LocationizedDataset& dataset, GeoNamesClient& client,
                                const BatchPlan& plan, const GeocodeOptions& options)
{
    plan.validate();
    if (options.n_results < 1) {
        throw Error(ErrorKind::Config, "n_results must be at least 1");
    }

    GeocodedDataset out;
    out.source_columns = dataset.source_columns;
    out.consumed_column = dataset.consumed_column;
    out.n_results = options.n_results;
    out.records.resize(dataset.records.size());

    const size_t total = dataset.records.size();
    const auto batch = static_cast<size_t>(plan.batch_size);
    for (size_t begin = 0; begin < total; begin += batch) {
        if (begin > 0) {
            client.clock().sleep_for(plan.wait_time);
        }
        geocode_rows(dataset, client, options, begin, std::min(begin + batch, total), out.records);
    }
    return out;
}

Table to_table(const GeocodedDataset& dataset, bool unwrap)
{
    LocationizedDataset base;
    base.source_columns = dataset.source_columns;
    base.consumed_column = dataset.consumed_column;
    for (const auto& record : dataset.records) {
        base.records.push_back(record.base);
    }
    Table table = to_table(base);

    const size_t rows = dataset.records.size();
    if (unwrap) {
        for (int rank = 1; rank <= dataset.n_results; ++rank) {
            std::vector<std::string> lat_cells(rows), lng_cells(rows);
            for (size_t r = 0; r < rows; ++r) {
                const auto& matches = dataset.records[r].matches;
                if (static_cast<size_t>(rank) <= matches.size()) {
                    lat_cells[r] = format_coordinate(matches[static_cast<size_t>(rank) - 1].point.lat);
                    lng_cells[r] = format_coordinate(matches[static_cast<size_t>(rank) - 1].point.lng);
                }
            }
            table.add_column("lat" + std::to_string(rank), std::move(lat_cells));
            table.add_column("lng" + std::to_string(rank), std::move(lng_cells));
        }
        return table;
    }

    std::vector<std::string> lat_cells(rows), lng_cells(rows), match_cells(rows);
    for (size_t r = 0; r < rows; ++r) {
        const auto& record = dataset.records[r];
        if (auto point = record.point(); point.has_value()) {
            lat_cells[r] = format_coordinate(point->lat);
            lng_cells[r] = format_coordinate(point->lng);
        }
        match_cells[r] = matches_to_json(record.matches);
    }
    table.add_column("lat", std::move(lat_cells));
    table.add_column("lng", std::move(lng_cells));
    table.add_column("matches", std::move(match_cells));
    return table;
}

} // namespace emgeo

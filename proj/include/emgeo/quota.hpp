#pragma once

#include "emgeo/clock.hpp"

#include <deque>
#include <mutex>

namespace emgeo {

// Sliding-window rate limiter for the geocoding service. A permit is
// granted only while one more request keeps the trailing-hour count within
// the hourly budget and the trailing-day count within the daily budget;
// otherwise the caller sleeps (through the injected clock) until the oldest
// request falls out of the window. All workers of a process share one
// governor, which is what keeps the budgets global.
class QuotaGovernor {
public:
    QuotaGovernor(int hourly_budget, int daily_budget);

    // Seconds until a permit would be available at time `now`; 0 when free.
    double wait_needed(double now) const;

    // Blocks (via clock.sleep_for) until a permit is free, records the
    // request, and returns the grant time.
    double acquire(Clock& clock);

    int issued_in_window(double now, double window_seconds) const;

private:
    double wait_needed_locked(double now) const;

    static constexpr double kHourWindow = 3600.0;
    static constexpr double kDayWindow = 86400.0;

    int hourly_budget_;
    int daily_budget_;
    std::deque<double> issues_; // grant times, ascending, pruned to one day
    mutable std::mutex mutex_;
};

} // namespace emgeo

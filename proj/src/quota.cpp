#include "emgeo/quota.hpp"

#include "emgeo/error.hpp"

#include <algorithm>

namespace emgeo {

QuotaGovernor::QuotaGovernor(int hourly_budget, int daily_budget)
    : hourly_budget_(hourly_budget), daily_budget_(daily_budget)
{
    if (hourly_budget <= 0 || daily_budget <= 0) {
        throw Error(ErrorKind::Config, "quota budgets must be positive");
    }
}

// A request at time t is inside the window ending at `now` when t > now - W,
// so a permit granted exactly when the oldest request ages out keeps the
// window count at the budget, never above it.
double QuotaGovernor::wait_needed_locked(double now) const
{
    double wait = 0.0;

    auto wait_for_window = [&](double window, int budget) {
        auto first_inside = std::upper_bound(issues_.begin(), issues_.end(), now - window);
        auto inside = static_cast<int>(issues_.end() - first_inside);
        if (inside >= budget) {
            // The request that must age out before one more fits.
            auto blocker = first_inside + (inside - budget);
            wait = std::max(wait, *blocker + window - now);
        }
    };

    wait_for_window(kHourWindow, hourly_budget_);
    wait_for_window(kDayWindow, daily_budget_);
    return wait;
}

double QuotaGovernor::wait_needed(double now) const
{
    std::lock_guard lock(mutex_);
    return wait_needed_locked(now);
}

double QuotaGovernor::acquire(Clock& clock)
{
    std::lock_guard lock(mutex_);
    double now = clock.now();
    for (double wait = wait_needed_locked(now); wait > 0; wait = wait_needed_locked(now)) {
        clock.sleep_for(wait);
        now = clock.now();
    }
    issues_.push_back(now);
    while (!issues_.empty() && issues_.front() <= now - kDayWindow) {
        issues_.pop_front();
    }
    return now;
}

int QuotaGovernor::issued_in_window(double now, double window_seconds) const
{
    std::lock_guard lock(mutex_);
    auto first_inside = std::upper_bound(issues_.begin(), issues_.end(), now - window_seconds);
    return static_cast<int>(issues_.end() - first_inside);
}

} // namespace emgeo

#pragma once

#include <memory>
#include <vector>

namespace emgeo {

// Seconds-based clock seam. Everything that waits (quota windows, retry
// backoff, batch latency) goes through this interface so tests can run on
// simulated time.
class Clock {
public:
    virtual ~Clock() = default;
    virtual double now() = 0;
    virtual void sleep_for(double seconds) = 0;
};

class SystemClock final : public Clock {
public:
    double now() override;
    void sleep_for(double seconds) override;
};

// Manual clock: sleeping advances time instantly and records the request.
class SimulatedClock final : public Clock {
public:
    explicit SimulatedClock(double start = 0.0) : now_(start) {}

    double now() override { return now_; }
    void sleep_for(double seconds) override
    {
        if (seconds > 0) {
            now_ += seconds;
            sleeps_.push_back(seconds);
        }
    }

    void advance(double seconds) { now_ += seconds; }
    const std::vector<double>& sleeps() const { return sleeps_; }

private:
    double now_ = 0.0;
    std::vector<double> sleeps_;
};

std::shared_ptr<Clock> system_clock();

} // namespace emgeo

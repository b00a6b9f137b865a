#include "emgeo/clock.hpp"

#include <chrono>
#include <thread>

namespace emgeo {

double SystemClock::now()
{
    const auto t = std::chrono::system_clock::now().time_since_epoch();
    return std::chrono::duration<double>(t).count();
}

void SystemClock::sleep_for(double seconds)
{
    if (seconds > 0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
    }
}

std::shared_ptr<Clock> system_clock()
{
    return std::make_shared<SystemClock>();
}

} // namespace emgeo

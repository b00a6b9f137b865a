#pragma once

namespace emgeo {

struct GeoPoint {
    double lat = 0.0;
    double lng = 0.0;

    bool operator==(const GeoPoint&) const = default;
};

inline bool valid_latitude(double lat) { return lat >= -90.0 && lat <= 90.0; }
inline bool valid_longitude(double lng) { return lng >= -180.0 && lng <= 180.0; }

} // namespace emgeo

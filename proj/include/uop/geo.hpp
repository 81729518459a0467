#ifndef UOP_GEO_HPP
#define UOP_GEO_HPP

#include <span>
#include <utility>
#include <vector>

namespace uop {

inline constexpr double kEarthRadiusM = 6371000.0;

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
    auto operator<=>(const GeoPoint&) const = default;
};

// Great-circle distance in meters on a sphere of radius 6371 km.
double haversine_m(double lat1, double lon1, double lat2, double lon2);
double haversine_m(const GeoPoint& a, const GeoPoint& b);

// Mean position on the sphere: 3D unit-vector average, renormalized.
GeoPoint spherical_mean(std::span<const GeoPoint> points);

// Even-odd rule in the lon/lat plane. Ring is an open ring (no repeated
// closing vertex); segments wrap from back() to front().
bool point_in_ring(const GeoPoint& p, std::span<const GeoPoint> ring);

} // namespace uop

#endif

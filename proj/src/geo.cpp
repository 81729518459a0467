#include "uop/geo.hpp"

#include <cmath>

namespace uop {

static inline double to_radians(double deg) {
    return deg * M_PI / 180.0;
}

double haversine_m(double lat1, double lon1, double lat2, double lon2) {
    double phi1 = to_radians(lat1);
    double phi2 = to_radians(lat2);
    double dphi = to_radians(lat2 - lat1);
    double dlambda = to_radians(lon2 - lon1);

    double a = std::sin(dphi / 2) * std::sin(dphi / 2) +
               std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
    double c = 2 * std::atan2(std::sqrt(a), std::sqrt(1 - a));
    return kEarthRadiusM * c;
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
    return haversine_m(a.lat, a.lon, b.lat, b.lon);
}

GeoPoint spherical_mean(std::span<const GeoPoint> points) {
    double x = 0, y = 0, z = 0;
    for (const auto& p : points) {
        double phi = to_radians(p.lat);
        double lam = to_radians(p.lon);
        x += std::cos(phi) * std::cos(lam);
        y += std::cos(phi) * std::sin(lam);
        z += std::sin(phi);
    }
    double n = static_cast<double>(points.size());
    if (n == 0)
        return {};
    x /= n;
    y /= n;
    z /= n;
    double hyp = std::sqrt(x * x + y * y);
    return GeoPoint{std::atan2(z, hyp) * 180.0 / M_PI, std::atan2(y, x) * 180.0 / M_PI};
}

bool point_in_ring(const GeoPoint& p, std::span<const GeoPoint> ring) {
    bool inside = false;
    size_t n = ring.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        double xi = ring[i].lon, yi = ring[i].lat;
        double xj = ring[j].lon, yj = ring[j].lat;
        bool crosses = (yi > p.lat) != (yj > p.lat);
        if (crosses && p.lon < (xj - xi) * (p.lat - yi) / (yj - yi) + xi)
            inside = !inside;
    }
    return inside;
}

} // namespace uop

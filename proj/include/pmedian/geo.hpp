/// @file geo.hpp
/// @brief WGS84 coordinates and the local equirectangular projection used for
/// all planar distances (meters).
#pragma once

#include <cmath>
#include <numbers>

namespace pmedian {

inline constexpr double kEarthRadiusM = 6371000.0;

struct GeoPoint {
    double lat = 0.0;  // decimal degrees
    double lon = 0.0;
};

struct XY {
    double x = 0.0;  // meters east
    double y = 0.0;  // meters north
};

// Equirectangular projection centered at a reference point. City-scale error
// is below 0.1%, and distances stay in meters.
class LocalProjection {
  public:
    LocalProjection() = default;
    LocalProjection(double center_lat, double center_lon)
        : lat0_(center_lat), lon0_(center_lon),
          cos_lat0_(std::cos(center_lat * std::numbers::pi / 180.0)) {}

    XY to_xy(const GeoPoint& p) const {
        constexpr double rad = std::numbers::pi / 180.0;
        return XY{kEarthRadiusM * cos_lat0_ * (p.lon - lon0_) * rad,
                  kEarthRadiusM * (p.lat - lat0_) * rad};
    }

    double distance_m(const GeoPoint& a, const GeoPoint& b) const {
        const XY pa = to_xy(a);
        const XY pb = to_xy(b);
        return std::hypot(pa.x - pb.x, pa.y - pb.y);
    }

    double center_lat() const { return lat0_; }
    double center_lon() const { return lon0_; }

  private:
    double lat0_ = 0.0;
    double lon0_ = 0.0;
    double cos_lat0_ = 1.0;
};

}  // namespace pmedian

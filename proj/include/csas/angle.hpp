#pragma once

#include <cmath>
#include <compare>

namespace csas {

inline constexpr double kFullTurnDeg = 360.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }

// A point on the circle of look angles, stored in degrees and always reduced into [0, 360).
class LookAngle {
 public:
  constexpr LookAngle() = default;
  explicit LookAngle(double degrees) : value_(reduce(degrees)) {}

  double degrees() const { return value_; }
  double radians() const { return deg_to_rad(value_); }

  LookAngle operator+(LookAngle other) const { return LookAngle(value_ + other.value_); }
  LookAngle operator-(LookAngle other) const { return LookAngle(value_ - other.value_); }
  LookAngle operator-() const { return LookAngle(-value_); }

  auto operator<=>(const LookAngle&) const = default;

  // Shortest signed arc from `to` to this angle, in [-180, 180).
  double signed_offset_from(LookAngle to) const {
    double d = value_ - to.value_;
    if (d >= 180.0) d -= kFullTurnDeg;
    if (d < -180.0) d += kFullTurnDeg;
    return d;
  }

  static double reduce(double degrees) {
    double r = std::fmod(degrees, kFullTurnDeg);
    if (r < 0.0) r += kFullTurnDeg;
    // fmod of a value just below a negative multiple of 360 can round up to 360
    if (r >= kFullTurnDeg) r = 0.0;
    return r;
  }

 private:
  double value_ = 0.0;
};

}  // namespace csas

#pragma once

#include <array>
#include <cmath>

namespace bf {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;

  constexpr Vec3& operator+=(Vec3 o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

// Length of the segment a-b. Every path-distance computation in the library
// goes through this function, so trees built to hit exact distances can rely
// on it being the only rounding path.
inline double segment_length(Vec3 a, Vec3 b) { return norm(b - a); }

inline Vec3 normalized(Vec3 a) {
  const double n = norm(a);
  return n > 0.0 ? (1.0 / n) * a : Vec3{};
}

// Some unit vector orthogonal to the unit vector `a`.
inline Vec3 any_orthogonal(Vec3 a) {
  const Vec3 helper = std::abs(a.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return normalized(cross(a, helper));
}

// Rotates the unit vector `axis` away from itself by `polar` radians, with the
// tilt direction chosen by `azimuth`.
inline Vec3 tilt(Vec3 axis, double polar, double azimuth) {
  const Vec3 u = any_orthogonal(axis);
  const Vec3 v = cross(axis, u);
  const double s = std::sin(polar);
  return normalized(std::cos(polar) * axis + (s * std::cos(azimuth)) * u + (s * std::sin(azimuth)) * v);
}

}  // namespace bf

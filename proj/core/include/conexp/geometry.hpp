#pragma once

// Small 3-vector toolkit. Planar problems use the (x, y) plane with z = 0.

#include <array>
#include <cmath>
#include <numbers>

namespace conexp {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  friend Vec3 operator*(double s, const Vec3& v) { return v * s; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3 normalized(const Vec3& a) { return a * (1.0 / norm(a)); }

// Cone axis: e_y in the plane, e_z in space.
inline Vec3 cone_axis(int dim) { return dim == 2 ? Vec3{0, 1, 0} : Vec3{0, 0, 1}; }

// Angle between z and the cone axis, in [0, pi].
inline double polar_angle(int dim, const Vec3& z) {
  if (dim == 2) return std::atan2(std::abs(z.x), z.y);
  return std::atan2(std::hypot(z.x, z.y), z.z);
}

// Unit direction at polar angle theta in the meridian plane spanned by e_x and the axis.
inline Vec3 meridian_direction(int dim, double theta) {
  return dim == 2 ? Vec3{std::sin(theta), std::cos(theta), 0}
                  : Vec3{std::sin(theta), 0, std::cos(theta)};
}

// Parameters t at which p + t d meets the cone surface {angle(z, axis) = half_angle}.
// Returns the number of roots written to out (at most 2), sorted ascending.
int cone_crossings(int dim, double half_angle, const Vec3& p, const Vec3& d, double out[2]);

// Parameters t with |p + t d| = r. Returns number of roots (0 or 2), sorted.
int sphere_crossings(const Vec3& p, const Vec3& d, double r, double out[2]);

}  // namespace conexp

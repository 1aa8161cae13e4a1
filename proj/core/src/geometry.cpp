#include "conexp/geometry.hpp"

#include <algorithm>

namespace conexp {

namespace {

int solve_quadratic(double a, double b, double c, double out[2]) {
  // a t^2 + b t + c = 0, robust against cancellation.
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0) return 0;
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) <= 1e-14 * scale) return 0;
    out[0] = -c / b;
    return 1;
  }
  const double disc = b * b - 4 * a * c;
  if (disc < 0) return 0;
  const double s = std::sqrt(disc);
  const double q = -0.5 * (b + (b >= 0 ? s : -s));
  double r0 = q / a;
  double r1 = q != 0 ? c / q : r0;
  if (r0 > r1) std::swap(r0, r1);
  out[0] = r0;
  out[1] = r1;
  return 2;
}

}  // namespace

int cone_crossings(int dim, double half_angle, const Vec3& p, const Vec3& d, double out[2]) {
  const Vec3 a = cone_axis(dim);
  const double c = std::cos(half_angle);
  const double pa = dot(p, a), da = dot(d, a);
  double roots[2];
  int n;
  if (std::abs(c) < 1e-15) {
    if (da == 0) return 0;
    roots[0] = -pa / da;
    n = 1;
  } else {
    const double c2 = c * c;
    n = solve_quadratic(da * da - c2 * dot(d, d), 2 * (pa * da - c2 * dot(p, d)),
                        pa * pa - c2 * dot(p, p), roots);
  }
  int m = 0;
  for (int i = 0; i < n; ++i) {
    const Vec3 z = p + roots[i] * d;
    // Squaring admits the mirror cone; keep the nappe on the correct side.
    if (std::abs(c) < 1e-15 || (dot(z, a) > 0) == (c > 0)) out[m++] = roots[i];
  }
  return m;
}

int sphere_crossings(const Vec3& p, const Vec3& d, double r, double out[2]) {
  double roots[2];
  const int n = solve_quadratic(dot(d, d), 2 * dot(p, d), dot(p, p) - r * r, roots);
  if (n != 2) return 0;
  out[0] = roots[0];
  out[1] = roots[1];
  return 2;
}

}  // namespace conexp

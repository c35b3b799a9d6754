#pragma once

// Independent oracles shared by the unit tests. Nothing here calls the
// library's quadrature or chord code.

#include <cmath>
#include <functional>

#include "zoll/random.hpp"
#include "zoll/sphere_geom.hpp"

namespace oracle {

// Composite Simpson with n (even) intervals.
inline double simpson(const std::function<double(double)>& g, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = g(a) + g(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return s * h / 3.0;
}

// Point at arclength s from (p, v), written out directly.
inline zoll::Vec3 arc_point(const zoll::Vec3& p, const zoll::Vec3& v, double s) {
  return std::cos(s) * p + std::sin(s) * v;
}

inline double bump_value(double d, double eps) {
  if (d >= eps) return 0.0;
  return std::exp(1.0 / eps) * std::exp(1.0 / (d - eps));
}

inline double angle(const zoll::Vec3& a, const zoll::Vec3& b) {
  return std::acos(std::clamp(zoll::dot(a, b) / (zoll::norm(a) * zoll::norm(b)), -1.0, 1.0));
}

}  // namespace oracle

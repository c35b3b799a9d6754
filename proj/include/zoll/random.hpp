#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "zoll/sphere_geom.hpp"

namespace zoll {

// Seeded generator with portable conversions: std::mt19937_64 output is fixed
// by the standard, but the std distributions are not, so doubles are built
// from the raw 64-bit stream directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform on the sphere (Archimedes: z uniform in [-1, 1]).
  SpherePoint point() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, kTwoPi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return SpherePoint(r * std::cos(phi), r * std::sin(phi), z);
  }

  UnitTangent tangent() { return UnitTangent::at_angle(point(), uniform(0.0, kTwoPi)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zoll

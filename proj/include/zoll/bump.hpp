#pragma once

// Compactly supported bumps
//
//   delta(q) = exp(1/eps) * exp(1 / (d(center, q) - eps))   for d < eps,
//
// and the odd sum over a point set Sigma
//
//   f(q) = sum_i delta_{-p_i}(q) - delta_{p_i}(q).

#include <cstddef>
#include <vector>

#include "zoll/fine_sets.hpp"
#include "zoll/quadrature.hpp"
#include "zoll/sphere_geom.hpp"

namespace zoll {

// Within this distance of the support boundary the bump evaluates to 0.
inline constexpr double kBumpBoundaryGuard = 1e-12;

class BumpFunction {
 public:
  // 0 < radius < pi/2.
  BumpFunction(const SpherePoint& center, double radius);

  const SpherePoint& center() const { return center_; }
  double radius() const { return radius_; }

  // Value as a function of the round distance to the center, written as
  // exp(-d / (eps (eps - d))) so that d = 0 gives exactly 1.
  double at_distance(double d) const;

  double operator()(const SpherePoint& q) const { return at_distance(distance0(center_, q)); }

 private:
  SpherePoint center_;
  double radius_;
};

// Intersection of a segment with the open ball around a bump center.
struct SupportChord {
  std::size_t bump = 0;
  double enter = 0.0;
  double exit = 0.0;
  // Arclength of closest approach to the center on the carrying great circle
  // (may fall outside [enter, exit] when the segment is clipped).
  double closest = 0.0;
  // Round distance from the center to the carrying great circle.
  double offset = 0.0;
};

// All chords of B(center, radius) cut out by seg, sorted by entry.
std::vector<SupportChord> ball_chords(const Vec3& center, double radius, const GeodesicSegment& seg,
                                      std::size_t bump_index = 0);

// Integral of a single bump along a segment.
double integrate_bump(const BumpFunction& bump, const GeodesicSegment& seg, const QuadratureRule& rule);

class OddBumpSum {
 public:
  // Requires 0 < epsilon < set.epsilon_sigma.
  OddBumpSum(const FineSet& set, double epsilon);

  // Unchecked construction for controls and tests: only requires the closed
  // supports around the points and their antipodes to be pairwise disjoint.
  static OddBumpSum from_points(std::vector<SpherePoint> sigma, double epsilon);

  const std::vector<SpherePoint>& sigma() const { return sigma_; }
  double epsilon() const { return epsilon_; }

  // Bump 2i sits at p_i with sign -1, bump 2i+1 at -p_i with sign +1.
  std::size_t bump_count() const { return centers_.size(); }
  const SpherePoint& center(std::size_t i) const { return centers_[i]; }
  double sign(std::size_t i) const { return i % 2 == 0 ? -1.0 : 1.0; }

  double operator()(const SpherePoint& q) const;

  // sup |f|; attained at the centers.
  double max_abs() const { return 1.0; }

  std::vector<SupportChord> chords(const GeodesicSegment& seg) const;
  SegmentCuts cuts(const GeodesicSegment& seg) const;

  // f as a generic field (zero baseline, active on the support chords, kinks
  // at the closest approaches).
  ScalarField as_field() const;

  // Round line integral, evaluating only the bump that owns each chord.
  double line_integral(const GeodesicSegment& seg, const QuadratureRule& rule) const;
  double line_integral(const GeodesicPath& path, const QuadratureRule& rule) const;

  // Integral of one bump along a diameter of its support.
  double diameter_integral(const QuadratureRule& rule) const;

 private:
  OddBumpSum(std::vector<SpherePoint> sigma, double epsilon, bool);

  std::vector<SpherePoint> sigma_;
  std::vector<SpherePoint> centers_;
  double epsilon_;
  double cos_epsilon_;
};

// Integral over a diameter of the bump's support minus the integral over the
// boundary-to-boundary extension of `chord`. Throws GeometryError if the
// chord leaves the closed support ball.
double chord_vs_diameter_gap(const BumpFunction& bump, const GeodesicSegment& chord, const QuadratureRule& rule);

}  // namespace zoll

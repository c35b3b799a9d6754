#pragma once

// Round-sphere primitives: points, unit tangents, great-circle segments,
// piecewise geodesic paths and the equal-leg midpoint families joining two
// points.

#include <numbers>
#include <utility>
#include <vector>

#include "zoll/vec3.hpp"

namespace zoll {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Two points whose round distance is within this band of pi are treated as
// antipodal.
inline constexpr double kAntipodalTol = 1e-9;

class SpherePoint {
 public:
  SpherePoint() = default;
  // Renormalizes; throws GeometryError on a (near) zero vector.
  explicit SpherePoint(const Vec3& v);
  SpherePoint(double x, double y, double z) : SpherePoint(Vec3{x, y, z}) {}

  const Vec3& vec() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

  // Exact negation; no renormalization so that antipode(antipode(p)) == p bitwise.
  SpherePoint operator-() const;

  bool operator==(const SpherePoint&) const = default;

 private:
  Vec3 v_{0.0, 0.0, 1.0};
};

SpherePoint antipode(const SpherePoint& p);

// Round distance d0(p, q) in [0, pi]. Uses atan2(|p x q|, <p, q>), which keeps
// full relative accuracy both near 0 and near pi.
double distance0(const SpherePoint& p, const SpherePoint& q);
double angle_between(const Vec3& a, const Vec3& b);

// An element (p, v) of the unit tangent bundle.
class UnitTangent {
 public:
  // Projects `dir` onto the tangent plane at `base` and normalizes it. Throws
  // GeometryError if `dir` is (nearly) parallel to `base`.
  UnitTangent(const SpherePoint& base, const Vec3& dir);

  // Initial direction of the minimizing geodesic from `from` to `to`. Throws if
  // the two points coincide or are antipodal.
  static UnitTangent toward(const SpherePoint& from, const SpherePoint& to);

  // Direction at angle `theta` in the deterministic tangent frame at `base`.
  static UnitTangent at_angle(const SpherePoint& base, double theta);

  const SpherePoint& base() const { return base_; }
  const Vec3& dir() const { return dir_; }

  UnitTangent reversed() const { return UnitTangent(base_, -dir_, Unchecked{}); }

 private:
  struct Unchecked {};
  UnitTangent(const SpherePoint& base, const Vec3& dir, Unchecked) : base_(base), dir_(dir) {}

  SpherePoint base_;
  Vec3 dir_;
};

// Deterministic orthonormal frame (e1, e2) of the tangent plane at p, with
// e1 x e2 = p.
std::pair<Vec3, Vec3> tangent_frame(const SpherePoint& p);

// Angle of a tangent vector at p measured in tangent_frame(p), in [0, 2pi).
double tangent_angle(const SpherePoint& p, const Vec3& dir);

// Unit-speed round geodesic: s -> cos(s) base + sin(s) dir, 0 <= s <= length.
// Lengths up to 2pi are accepted so that full great circles are representable.
class GeodesicSegment {
 public:
  GeodesicSegment(const UnitTangent& start, double length);

  const UnitTangent& start() const { return start_; }
  double length() const { return length_; }

  // Unchecked evaluation, valid for any s.
  SpherePoint point_at(double s) const;
  Vec3 tangent_at(double s) const;
  SpherePoint end() const { return point_at(length_); }

  // Same point set traversed from the other end.
  GeodesicSegment reversed() const;

  // Unit normal of the carrying great circle (base x dir).
  Vec3 pole() const { return cross(start_.base().vec(), start_.dir()); }

 private:
  UnitTangent start_;
  double length_;
};

// Checked arclength evaluation: throws GeometryError if s is outside
// [0, length] (with a 1e-12 slack).
SpherePoint geodesic_point(const GeodesicSegment& seg, double s);

// Great half-circle issuing from v (length exactly pi).
GeodesicSegment half_circle(const UnitTangent& v);

// Full great circle issuing from v (length 2pi).
GeodesicSegment great_circle(const UnitTangent& v);

// Minimizing segment from p to q. Throws if p == q or p, q antipodal.
GeodesicSegment segment_between(const SpherePoint& p, const SpherePoint& q);

// Piecewise round geodesic, legs traversed in order.
using GeodesicPath = std::vector<GeodesicSegment>;

double round_length(const GeodesicPath& path);

// Fibonacci lattice of n nearly uniform points.
std::vector<SpherePoint> fibonacci_lattice(int n);

// Family of paths from p to q made of two equal-length round geodesic legs,
// parametrized by the angle of the non-smooth midpoint on the great circle
// equidistant from p and q:
//
//   m(theta) = cos(theta) e1 + sin(theta) e2.
//
// e1 is the midpoint of the reference segment joining p to q (the minimizing
// one unless a segment is supplied), so theta = 0 is the reference itself.
// When p and q are antipodal the members are the great half-circles from p,
// and m(theta) is the initial direction of the half-circle.
class MidpointFamily {
 public:
  enum class Kind { generic, antipodal };

  // Throws GeometryError when p == q.
  MidpointFamily(const SpherePoint& p, const SpherePoint& q);

  // Family of the endpoints of gamma, with frame anchored at gamma's midpoint.
  explicit MidpointFamily(const GeodesicSegment& gamma);

  Kind kind() const { return kind_; }
  const SpherePoint& p() const { return p_; }
  const SpherePoint& q() const { return q_; }
  double endpoint_distance() const { return distance0(p_, q_); }

  // Frame of the equidistant circle; normal() = (p - q)/|p - q|.
  const Vec3& e1() const { return e1_; }
  const Vec3& e2() const { return e2_; }
  const Vec3& normal() const { return normal_; }

  SpherePoint midpoint(double theta) const;
  GeodesicPath member(double theta) const;
  double member_length(double theta) const;

  // Parameter of the projection of x onto the equidistant circle.
  double parameter_of(const Vec3& x) const;

  // Parameters whose member passes through the great circle joining p (or q)
  // to c, i.e. the members that can run through c.
  std::vector<double> parameters_through(const SpherePoint& c) const;

 private:
  void init_frame(const Vec3& anchor);

  SpherePoint p_;
  SpherePoint q_;
  Kind kind_ = Kind::generic;
  Vec3 normal_;
  Vec3 e1_;
  Vec3 e2_;
};

struct AngleInterval {
  double lo = 0.0;
  double hi = 0.0;

  // Membership for an angle taken modulo 2pi.
  bool contains(double theta, double tol = 0.0) const;
};

// Parameters of the members of round length at most pi. For a half-circle
// family these are the half-circles meeting the reference segment at an
// acute or right angle.
std::vector<AngleInterval> short_subfamily(const MidpointFamily& family);

// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

}  // namespace zoll

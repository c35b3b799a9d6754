#include "zoll/sphere_geom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zoll/errors.hpp"

namespace zoll {

SpherePoint::SpherePoint(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 1e-300) || !std::isfinite(n)) throw GeometryError("SpherePoint: zero or non-finite vector");
  v_ = v / n;
}

SpherePoint SpherePoint::operator-() const {
  SpherePoint r;
  r.v_ = -v_;
  return r;
}

SpherePoint antipode(const SpherePoint& p) { return -p; }

double angle_between(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

double distance0(const SpherePoint& p, const SpherePoint& q) { return angle_between(p.vec(), q.vec()); }

UnitTangent::UnitTangent(const SpherePoint& base, const Vec3& dir) : base_(base) {
  const Vec3 tangential = dir - dot(dir, base.vec()) * base.vec();
  const double n = norm(tangential);
  if (!(n > 1e-14 * norm(dir))) throw GeometryError("UnitTangent: direction is parallel to the base point");
  dir_ = tangential / n;
  // One more projection pass keeps <base, dir> at rounding level.
  dir_ = normalized(dir_ - dot(dir_, base.vec()) * base.vec());
}

UnitTangent UnitTangent::toward(const SpherePoint& from, const SpherePoint& to) {
  if (norm(cross(from.vec(), to.vec())) < 1e-14) {
    throw GeometryError("UnitTangent::toward: endpoints coincide or are antipodal");
  }
  return UnitTangent(from, to.vec());
}

std::pair<Vec3, Vec3> tangent_frame(const SpherePoint& p) {
  const Vec3& v = p.vec();
  const double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
  Vec3 axis{0.0, 0.0, 1.0};
  if (ax <= ay && ax <= az) {
    axis = {1.0, 0.0, 0.0};
  } else if (ay <= az) {
    axis = {0.0, 1.0, 0.0};
  }
  const Vec3 e1 = normalized(cross(axis, v));
  const Vec3 e2 = cross(v, e1);
  return {e1, e2};
}

UnitTangent UnitTangent::at_angle(const SpherePoint& base, double theta) {
  const auto [e1, e2] = tangent_frame(base);
  return UnitTangent(base, std::cos(theta) * e1 + std::sin(theta) * e2, Unchecked{});
}

double tangent_angle(const SpherePoint& p, const Vec3& dir) {
  const auto [e1, e2] = tangent_frame(p);
  double a = std::atan2(dot(dir, e2), dot(dir, e1));
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

GeodesicSegment::GeodesicSegment(const UnitTangent& start, double length) : start_(start), length_(length) {
  if (!(length > 0.0) || length > kTwoPi + 1e-12) {
    throw GeometryError("GeodesicSegment: length must lie in (0, 2pi], got " + std::to_string(length));
  }
}

SpherePoint GeodesicSegment::point_at(double s) const {
  return SpherePoint(std::cos(s) * start_.base().vec() + std::sin(s) * start_.dir());
}

Vec3 GeodesicSegment::tangent_at(double s) const {
  return -std::sin(s) * start_.base().vec() + std::cos(s) * start_.dir();
}

GeodesicSegment GeodesicSegment::reversed() const {
  return GeodesicSegment(UnitTangent(end(), -tangent_at(length_)), length_);
}

SpherePoint geodesic_point(const GeodesicSegment& seg, double s) {
  if (s < -1e-12 || s > seg.length() + 1e-12) {
    throw GeometryError("geodesic_point: arclength " + std::to_string(s) + " outside [0, " +
                        std::to_string(seg.length()) + "]");
  }
  return seg.point_at(s);
}

GeodesicSegment half_circle(const UnitTangent& v) { return GeodesicSegment(v, kPi); }

GeodesicSegment great_circle(const UnitTangent& v) { return GeodesicSegment(v, kTwoPi); }

GeodesicSegment segment_between(const SpherePoint& p, const SpherePoint& q) {
  return GeodesicSegment(UnitTangent::toward(p, q), distance0(p, q));
}

double round_length(const GeodesicPath& path) {
  double total = 0.0;
  for (const auto& leg : path) total += leg.length();
  return total;
}

std::vector<SpherePoint> fibonacci_lattice(int n) {
  std::vector<SpherePoint> pts;
  if (n <= 0) return pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

double wrap_angle(double theta) {
  double a = std::remainder(theta, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

MidpointFamily::MidpointFamily(const SpherePoint& p, const SpherePoint& q) : p_(p), q_(q) {
  const double d = distance0(p, q);
  if (d < 1e-12) throw GeometryError("MidpointFamily: endpoints coincide");
  kind_ = d >= kPi - kAntipodalTol ? Kind::antipodal : Kind::generic;
  normal_ = normalized(p.vec() - q.vec());
  if (kind_ == Kind::generic) {
    init_frame(p.vec() + q.vec());
  } else {
    init_frame(tangent_frame(p).first);
  }
}

MidpointFamily::MidpointFamily(const GeodesicSegment& gamma) : p_(gamma.start().base()), q_(gamma.end()) {
  const double d = distance0(p_, q_);
  if (d < 1e-12) throw GeometryError("MidpointFamily: endpoints coincide");
  kind_ = d >= kPi - kAntipodalTol ? Kind::antipodal : Kind::generic;
  normal_ = normalized(p_.vec() - q_.vec());
  init_frame(gamma.point_at(0.5 * gamma.length()).vec());
}

void MidpointFamily::init_frame(const Vec3& anchor) {
  e1_ = normalized(anchor - dot(anchor, normal_) * normal_);
  e2_ = cross(normal_, e1_);
}

SpherePoint MidpointFamily::midpoint(double theta) const {
  return SpherePoint(std::cos(theta) * e1_ + std::sin(theta) * e2_);
}

GeodesicPath MidpointFamily::member(double theta) const {
  const SpherePoint m = midpoint(theta);
  GeodesicPath path;
  path.reserve(2);
  path.emplace_back(UnitTangent::toward(p_, m), distance0(p_, m));
  path.emplace_back(UnitTangent::toward(m, q_), distance0(m, q_));
  return path;
}

double MidpointFamily::member_length(double theta) const {
  const SpherePoint m = midpoint(theta);
  return distance0(p_, m) + distance0(m, q_);
}

double MidpointFamily::parameter_of(const Vec3& x) const { return std::atan2(dot(x, e2_), dot(x, e1_)); }

std::vector<double> MidpointFamily::parameters_through(const SpherePoint& c) const {
  std::vector<double> out;
  for (const SpherePoint* a : {&p_, &q_}) {
    const Vec3 axis = cross(a->vec(), c.vec());
    if (norm(axis) < 1e-14) continue;
    const Vec3 x = cross(normal_, axis);
    if (norm(x) < 1e-14) continue;
    const double theta = parameter_of(x);
    out.push_back(theta);
    out.push_back(wrap_angle(theta + kPi));
  }
  return out;
}

bool AngleInterval::contains(double theta, double tol) const {
  // Shift theta into [lo, lo + 2pi) before comparing.
  double shifted = lo + std::fmod(std::fmod(theta - lo, kTwoPi) + kTwoPi, kTwoPi);
  if (shifted <= hi + tol) return true;
  // Slightly below lo wraps to lo + 2pi - tiny.
  return shifted >= lo + kTwoPi - tol;
}

std::vector<AngleInterval> short_subfamily(const MidpointFamily& family) {
  if (family.kind() == MidpointFamily::Kind::antipodal) {
    // Half-circles whose initial direction m satisfies <m, e1> >= 0.
    return {{-0.5 * kPi, 0.5 * kPi}};
  }
  // <p, m(theta)> = a cos(theta) + b sin(theta); the member has length
  // 2 d0(p, m) <= pi exactly when that inner product is >= 0.
  const double a = dot(family.p().vec(), family.e1());
  const double b = dot(family.p().vec(), family.e2());
  const double phi = std::atan2(b, a);
  return {{phi - 0.5 * kPi, phi + 0.5 * kPi}};
}

}  // namespace zoll

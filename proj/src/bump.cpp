#include "zoll/bump.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zoll/errors.hpp"

namespace zoll {

namespace {

// Round distance from a bump center to the point at arclength offset x from
// the foot of the perpendicular, for a great circle at distance `offset`:
// cos d = cos(offset) cos(x), in half-angle form.
double distance_along(double offset, double x) {
  const double so = std::sin(0.5 * offset);
  const double sx = std::sin(0.5 * x);
  const double h = so * so + std::cos(offset) * sx * sx;
  return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

template <class Bump>
double integrate_chord(const Bump& at_distance, const SupportChord& chord, const QuadratureRule& rule) {
  auto g = [&](double s) { return at_distance(distance_along(chord.offset, s - chord.closest)); };
  if (chord.closest > chord.enter && chord.closest < chord.exit) {
    return rule.integrate(g, chord.enter, chord.closest) + rule.integrate(g, chord.closest, chord.exit);
  }
  return rule.integrate(g, chord.enter, chord.exit);
}

}  // namespace

BumpFunction::BumpFunction(const SpherePoint& center, double radius) : center_(center), radius_(radius) {
  if (!(radius > 0.0 && radius < 0.5 * kPi)) throw std::invalid_argument("BumpFunction: radius must lie in (0, pi/2)");
}

double BumpFunction::at_distance(double d) const {
  if (d >= radius_ - kBumpBoundaryGuard) return 0.0;
  return std::exp(-d / (radius_ * (radius_ - d)));
}

std::vector<SupportChord> ball_chords(const Vec3& center, double radius, const GeodesicSegment& seg,
                                      std::size_t bump_index) {
  std::vector<SupportChord> out;
  const Vec3& b = seg.start().base().vec();
  const Vec3& u = seg.start().dir();
  const double a = dot(b, center);
  const double beta = dot(u, center);
  const double r = std::hypot(a, beta);
  const double cos_radius = std::cos(radius);
  if (!(r > cos_radius)) return out;
  const double phi = std::atan2(beta, a);
  const double half = std::acos(std::min(1.0, cos_radius / r));
  const double offset = std::atan2(std::abs(dot(center, seg.pole())), r);
  const double length = seg.length();
  for (int k = -1; k <= 2; ++k) {
    const double mid = phi + kTwoPi * k;
    const double lo = std::max(0.0, mid - half);
    const double hi = std::min(length, mid + half);
    if (hi > lo) out.push_back({bump_index, lo, hi, mid, offset});
  }
  return out;
}

double integrate_bump(const BumpFunction& bump, const GeodesicSegment& seg, const QuadratureRule& rule) {
  double total = 0.0;
  auto value = [&](double d) { return bump.at_distance(d); };
  for (const auto& chord : ball_chords(bump.center().vec(), bump.radius(), seg)) {
    total += integrate_chord(value, chord, rule);
  }
  return total;
}

OddBumpSum::OddBumpSum(std::vector<SpherePoint> sigma, double epsilon, bool)
    : sigma_(std::move(sigma)), epsilon_(epsilon), cos_epsilon_(std::cos(epsilon)) {
  if (!(epsilon > 0.0 && epsilon < 0.5 * kPi)) throw std::invalid_argument("OddBumpSum: epsilon must lie in (0, pi/2)");
  for (const auto& p : sigma_) {
    centers_.push_back(p);
    centers_.push_back(-p);
  }
}

OddBumpSum::OddBumpSum(const FineSet& set, double epsilon) : OddBumpSum(set.points, epsilon, true) {
  if (!(epsilon < set.epsilon_sigma)) {
    throw std::invalid_argument("OddBumpSum: epsilon " + std::to_string(epsilon) + " must be below eps(Sigma) " +
                                std::to_string(set.epsilon_sigma));
  }
}

OddBumpSum OddBumpSum::from_points(std::vector<SpherePoint> sigma, double epsilon) {
  OddBumpSum f(std::move(sigma), epsilon, true);
  for (std::size_t i = 0; i < f.centers_.size(); ++i) {
    for (std::size_t j = i + 1; j < f.centers_.size(); ++j) {
      if (!(distance0(f.centers_[i], f.centers_[j]) > 2.0 * epsilon)) {
        throw std::invalid_argument("OddBumpSum: bump supports overlap");
      }
    }
  }
  return f;
}

double OddBumpSum::operator()(const SpherePoint& q) const {
  // Supports are disjoint, so the first hit is the only one.
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    if (dot(q.vec(), centers_[i].vec()) <= cos_epsilon_ - 1e-15) continue;
    const double d = distance0(centers_[i], q);
    if (d >= epsilon_) continue;
    const double r = epsilon_;
    const double v = d >= r - kBumpBoundaryGuard ? 0.0 : std::exp(-d / (r * (r - d)));
    return sign(i) * v;
  }
  return 0.0;
}

std::vector<SupportChord> OddBumpSum::chords(const GeodesicSegment& seg) const {
  std::vector<SupportChord> out;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    auto part = ball_chords(centers_[i].vec(), epsilon_, seg, i);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), [](const SupportChord& x, const SupportChord& y) { return x.enter < y.enter; });
  return out;
}

SegmentCuts OddBumpSum::cuts(const GeodesicSegment& seg) const {
  SegmentCuts cuts;
  std::vector<std::pair<double, double>> active;
  for (const auto& c : chords(seg)) {
    active.emplace_back(c.enter, c.exit);
    if (c.closest > c.enter && c.closest < c.exit) cuts.breaks.push_back(c.closest);
  }
  cuts.active = std::move(active);
  return cuts;
}

ScalarField OddBumpSum::as_field() const {
  return ScalarField([self = *this](const SpherePoint& q) { return self(q); },
                     [self = *this](const GeodesicSegment& seg) { return self.cuts(seg); }, 0.0);
}

double OddBumpSum::line_integral(const GeodesicSegment& seg, const QuadratureRule& rule) const {
  double total = 0.0;
  const double r = epsilon_;
  auto value = [r](double d) { return d >= r - kBumpBoundaryGuard ? 0.0 : std::exp(-d / (r * (r - d))); };
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    for (const auto& chord : ball_chords(centers_[i].vec(), epsilon_, seg, i)) {
      total += sign(i) * integrate_chord(value, chord, rule);
    }
  }
  return total;
}

double OddBumpSum::line_integral(const GeodesicPath& path, const QuadratureRule& rule) const {
  double total = 0.0;
  for (const auto& leg : path) total += line_integral(leg, rule);
  return total;
}

double OddBumpSum::diameter_integral(const QuadratureRule& rule) const {
  const BumpFunction bump(SpherePoint(0, 0, 1), epsilon_);
  auto g = [&](double s) { return bump.at_distance(std::abs(s)); };
  return rule.integrate(g, -epsilon_, 0.0) + rule.integrate(g, 0.0, epsilon_);
}

double chord_vs_diameter_gap(const BumpFunction& bump, const GeodesicSegment& chord, const QuadratureRule& rule) {
  const double r = bump.radius();
  if (distance0(bump.center(), chord.start().base()) > r + 1e-12 || distance0(bump.center(), chord.end()) > r + 1e-12) {
    throw GeometryError("chord_vs_diameter_gap: chord leaves the support ball");
  }
  // Carrying great circle started half a turn back, so the ball's chord sits
  // near s = pi without wrapping.
  const GeodesicSegment circle(UnitTangent(-chord.start().base(), -chord.start().dir()), kTwoPi);
  const double chord_integral = integrate_bump(bump, circle, rule);

  const GeodesicSegment to_edge(UnitTangent::at_angle(bump.center(), 0.0), r);
  const GeodesicSegment diameter(UnitTangent(to_edge.end(), -to_edge.tangent_at(r)), 2.0 * r);
  const double diameter_integral = integrate_bump(bump, diameter, rule);
  return diameter_integral - chord_integral;
}

}  // namespace zoll

#include "zoll/quadrature.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <tuple>

#include "zoll/errors.hpp"

namespace zoll {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  std::vector<double> x(static_cast<std::size_t>(order));
  std::vector<double> w(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
    }
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(order - 1 - i);
    x[lo] = -z;
    x[hi] = z;
    w[lo] = w[hi] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (order % 2 == 1) x[static_cast<std::size_t>(order / 2)] = 0.0;
  return {x, w};
}

QuadratureRule::QuadratureRule(int order, double max_panel, double tol_per_radian, int max_depth)
    : max_panel_(max_panel), tol_(tol_per_radian), max_depth_(max_depth) {
  if (!(max_panel > 0.0)) throw std::invalid_argument("QuadratureRule: max_panel must be positive");
  if (max_depth < 0) throw std::invalid_argument("QuadratureRule: max_depth must be non-negative");
  std::tie(nodes_, weights_) = gauss_legendre(order);
}

QuadratureRule QuadratureRule::for_bumps(double epsilon) {
  return QuadratureRule(8, std::min(0.25 * epsilon, 0.05));
}

QuadratureRule QuadratureRule::refined() const {
  return QuadratureRule(order(), 0.5 * max_panel_, tol_, max_depth_);
}

std::string QuadratureRule::id() const {
  char buf[96];
  std::snprintf(buf, sizeof buf, "gl%d/p%.6g/tol%.3g/d%d", order(), max_panel_, tol_, max_depth_);
  return buf;
}

ScalarField ScalarField::constant(double c) {
  return ScalarField([c](const SpherePoint&) { return c; },
                     [](const GeodesicSegment&) {
                       return SegmentCuts{{}, std::vector<std::pair<double, double>>{}};
                     },
                     c);
}

ScalarField ScalarField::mapped(std::function<double(double)> h) const {
  const double base = h(baseline_);
  auto eval = [inner = eval_, h](const SpherePoint& q) { return h(inner(q)); };
  return ScalarField(std::move(eval), cutter_, base);
}

double integrate_along(const ScalarField& f, const GeodesicSegment& seg, const QuadratureRule& rule) {
  const double length = seg.length();
  SegmentCuts cuts = f.cuts(seg);
  std::vector<std::pair<double, double>> intervals;
  double total = 0.0;
  if (cuts.active) {
    intervals = *cuts.active;
    double inactive = length;
    for (const auto& [a, b] : intervals) inactive -= b - a;
    total += f.baseline() * inactive;
  } else {
    intervals.emplace_back(0.0, length);
  }
  std::sort(cuts.breaks.begin(), cuts.breaks.end());
  auto g = [&](double s) { return f(seg.point_at(s)); };
  for (const auto& [a, b] : intervals) {
    double lo = a;
    for (double br : cuts.breaks) {
      if (br <= lo || br >= b) continue;
      total += rule.integrate(g, lo, br);
      lo = br;
    }
    total += rule.integrate(g, lo, b);
  }
  return total;
}

double integrate_along(const ScalarField& f, const GeodesicPath& path, const QuadratureRule& rule) {
  double total = 0.0;
  for (const auto& leg : path) total += integrate_along(f, leg, rule);
  return total;
}

namespace {

ScalarField conformal_field(const ScalarField& f, double t) {
  const double base = 1.0 + t * f.baseline();
  if (!(base > 0.0)) throw DegenerateMetricError("conformal factor 1 + t f is not positive on the baseline");
  return f.mapped([t](double v) {
    const double c = 1.0 + t * v;
    if (!(c > 0.0)) throw DegenerateMetricError("conformal factor 1 + t f is not positive along the path");
    return c;
  });
}

}  // namespace

double energy_t(const ScalarField& f, double t, const GeodesicPath& path, const QuadratureRule& rule) {
  return integrate_along(conformal_field(f, t), path, rule);
}

double length_t(const ScalarField& f, double t, const GeodesicPath& path, const QuadratureRule& rule) {
  const ScalarField root = conformal_field(f, t).mapped([](double c) { return std::sqrt(c); });
  return integrate_along(root, path, rule);
}

double energy_derivative(const ScalarField& f, const GeodesicPath& path, const QuadratureRule& rule) {
  return integrate_along(f, path, rule);
}

}  // namespace zoll

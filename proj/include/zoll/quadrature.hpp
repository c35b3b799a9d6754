#pragma once

// Line integrals of scalar fields along round geodesics.
//
// The base scheme is composite Gauss-Legendre with a fixed number of nodes
// per panel. Panels are bisected adaptively until the two-halves estimate
// agrees with the parent panel to within a per-radian tolerance. Fields may
// report where they are not constant along a segment (their "active"
// intervals) and where they have kinks; active intervals are integrated
// panel-wise, kinks always land on panel boundaries, and the constant part is
// added exactly.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zoll/sphere_geom.hpp"

namespace zoll {

class QuadratureRule {
 public:
  // tol_per_radian <= 0 disables adaptive bisection (plain composite rule).
  explicit QuadratureRule(int order = 8, double max_panel = 0.05, double tol_per_radian = 1e-12,
                          int max_depth = 40);

  // Default rule for bump sums of radius epsilon: panels no longer than
  // min(epsilon / 4, 0.05).
  static QuadratureRule for_bumps(double epsilon);

  int order() const { return static_cast<int>(nodes_.size()); }
  double max_panel() const { return max_panel_; }
  double tolerance() const { return tol_; }
  int max_depth() const { return max_depth_; }
  bool adaptive() const { return tol_ > 0.0; }

  // Same scheme with panels half as long.
  QuadratureRule refined() const;

  // Short stable identifier recorded in reports, e.g. "gl8/p0.05/tol1e-12".
  std::string id() const;

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Gauss-Legendre on a single panel.
  template <class G>
  double panel(G& g, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * g(mid + half * nodes_[i]);
    return half * sum;
  }

  // Composite (and, if enabled, adaptive) integral of g over [a, b].
  template <class G>
  double integrate(G&& g, double a, double b) const {
    if (!(b > a)) return 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel_ - 1e-12)));
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
      const double lo = a + k * h;
      const double hi = k + 1 == panels ? b : a + (k + 1) * h;
      const double whole = panel(g, lo, hi);
      total += adaptive() ? bisect(g, lo, hi, whole, tol_ * (hi - lo), 0) : whole;
    }
    return total;
  }

 private:
  template <class G>
  double bisect(G& g, double a, double b, double whole, double tol, int depth) const {
    const double m = 0.5 * (a + b);
    const double left = panel(g, a, m);
    const double right = panel(g, m, b);
    const double both = left + right;
    if (depth >= max_depth_ || std::abs(both - whole) <= tol) return both;
    return bisect(g, a, m, left, 0.5 * tol, depth + 1) + bisect(g, m, b, right, 0.5 * tol, depth + 1);
  }

  std::vector<double> nodes_;
  std::vector<double> weights_;
  double max_panel_;
  double tol_;
  int max_depth_;
};

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int order);

// Where a field may vary along a segment, in arclength.
struct SegmentCuts {
  // Interior kink locations; each becomes a panel boundary.
  std::vector<double> breaks;
  // Sorted disjoint intervals outside of which the field equals its baseline.
  // Empty optional means "active everywhere".
  std::optional<std::vector<std::pair<double, double>>> active;
};

class ScalarField {
 public:
  using Eval = std::function<double(const SpherePoint&)>;
  using Cutter = std::function<SegmentCuts(const GeodesicSegment&)>;

  // A field that is active everywhere and has no known kinks.
  explicit ScalarField(Eval eval) : eval_(std::move(eval)) {}
  ScalarField(Eval eval, Cutter cutter, double baseline)
      : eval_(std::move(eval)), cutter_(std::move(cutter)), baseline_(baseline) {}

  static ScalarField constant(double c);

  double operator()(const SpherePoint& q) const { return eval_(q); }
  SegmentCuts cuts(const GeodesicSegment& seg) const { return cutter_ ? cutter_(seg) : SegmentCuts{}; }
  double baseline() const { return baseline_; }

  // Pointwise h(f(q)), with the same cuts and baseline h(baseline).
  ScalarField mapped(std::function<double(double)> h) const;

 private:
  Eval eval_;
  Cutter cutter_;
  double baseline_ = 0.0;
};

// Integral of f along seg with respect to round arclength.
double integrate_along(const ScalarField& f, const GeodesicSegment& seg, const QuadratureRule& rule);

// Leg-by-leg integral along a piecewise geodesic; the corners are panel
// boundaries by construction.
double integrate_along(const ScalarField& f, const GeodesicPath& path, const QuadratureRule& rule);

// Energy of the path for the metric (1 + t f) g0 under the unit round-speed
// parametrization: integral of (1 + t f) ds0. Throws DegenerateMetricError if
// the factor is not positive at a node or on the baseline.
double energy_t(const ScalarField& f, double t, const GeodesicPath& path, const QuadratureRule& rule);

// Length of the path for (1 + t f) g0: integral of sqrt(1 + t f) ds0.
double length_t(const ScalarField& f, double t, const GeodesicPath& path, const QuadratureRule& rule);

// d/dt E_t at t = 0, which equals the round line integral of f.
double energy_derivative(const ScalarField& f, const GeodesicPath& path, const QuadratureRule& rule);

}  // namespace zoll

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "zoll/bump.hpp"
#include "zoll/errors.hpp"
#include "zoll/fine_sets.hpp"
#include "zoll/quadrature.hpp"
#include "zoll/random.hpp"

using namespace zoll;

namespace {

// Odd, smooth and active everywhere.
ScalarField odd_field() {
  return ScalarField([](const SpherePoint& q) { return q.x() + q.y() * q.z() * q.z() - 0.5 * q.z(); });
}

GeodesicPath random_path(Rng& rng, int legs) {
  GeodesicPath path;
  UnitTangent v = rng.tangent();
  for (int i = 0; i < legs; ++i) {
    const GeodesicSegment leg(v, rng.uniform(0.1, 2.0));
    path.push_back(leg);
    v = UnitTangent::at_angle(leg.end(), rng.uniform(0.0, kTwoPi));
  }
  return path;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre exactness on monomials") {
  for (int order : {2, 4, 8, 12}) {
    const auto [x, w] = gauss_legendre(order);
    for (int k = 0; k < 2 * order; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * std::pow(x[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(std::abs(sum - exact) < 1e-13);
    }
  }
  // A panel reproduces polynomial integrals in arclength.
  const QuadratureRule rule(8, 0.05, 0.0);
  auto cubic = [](double s) { return 3 * s * s * s - s + 2; };
  CHECK(rule.integrate(cubic, 0.0, 1.3) == doctest::Approx(0.75 * std::pow(1.3, 4) - 0.5 * 1.69 + 2.6).epsilon(1e-14));
}

TEST_CASE("constant field over a half-circle") {
  Rng rng(1);
  const QuadratureRule rule;
  const auto one = ScalarField::constant(1.0);
  CHECK(integrate_along(one, half_circle(rng.tangent()), rule) == doctest::Approx(kPi).epsilon(1e-15));
  const ScalarField everywhere([](const SpherePoint&) { return 1.0; });
  CHECK(integrate_along(everywhere, half_circle(rng.tangent()), rule) == doctest::Approx(kPi).epsilon(1e-13));
}

TEST_CASE("odd field over a full great circle") {
  Rng rng(2);
  const QuadratureRule rule;
  for (int i = 0; i < 20; ++i) CHECK(std::abs(integrate_along(odd_field(), great_circle(rng.tangent()), rule)) < 1e-10);
}

TEST_CASE("bump over a segment missing its support is exactly zero") {
  const BumpFunction b(SpherePoint(0, 0, 1), 0.1);
  const GeodesicSegment equator(UnitTangent(SpherePoint(1, 0, 0), Vec3{0, 1, 0}), 3.0);
  CHECK(integrate_bump(b, equator, QuadratureRule::for_bumps(0.1)) == 0.0);
}

TEST_CASE("energy and length for constant fields") {
  Rng rng(3);
  const QuadratureRule rule;
  const GeodesicPath path = random_path(rng, 3);
  const double l0 = round_length(path);
  const auto c = ScalarField::constant(0.3);
  CHECK(energy_t(c, 0.0, path, rule) == doctest::Approx(l0).epsilon(1e-14));
  CHECK(length_t(c, 0.0, path, rule) == doctest::Approx(l0).epsilon(1e-14));
  CHECK(energy_t(c, 0.5, path, rule) == doctest::Approx(1.15 * l0).epsilon(1e-14));
  CHECK(length_t(c, 0.5, path, rule) == doctest::Approx(std::sqrt(1.15) * l0).epsilon(1e-14));
  CHECK_THROWS_AS(energy_t(ScalarField::constant(-1.0), 1.0, path, rule), DegenerateMetricError);
  CHECK_THROWS_AS(length_t(odd_field(), 5.0, path, rule), DegenerateMetricError);
}

TEST_CASE("energy difference quotient equals the line integral") {
  Rng rng(4);
  const QuadratureRule rule;
  const ScalarField f = odd_field();
  for (int i = 0; i < 100; ++i) {
    const GeodesicPath path = random_path(rng, 1 + i % 3);
    const double t = 0.1;
    const double quotient = (energy_t(f, t, path, rule) - energy_t(f, 0.0, path, rule)) / t;
    const double derivative = energy_derivative(f, path, rule);
    CHECK(std::abs(quotient - derivative) < 1e-12 * (1.0 + std::abs(derivative)) / t);
    // Independent Simpson oracle for the line integral itself.
    double simpson = 0.0;
    for (const auto& leg : path) {
      simpson += oracle::simpson(
          [&](double s) {
            return f(SpherePoint(oracle::arc_point(leg.start().base().vec(), leg.start().dir(), s)));
          },
          0.0, leg.length(), 4000);
    }
    CHECK(std::abs(derivative - simpson) < 1e-11);
  }
}

TEST_CASE("Cauchy-Schwarz bound on lengths") {
  Rng rng(5);
  const QuadratureRule rule;
  const ScalarField f = odd_field();
  for (int i = 0; i < 1000; ++i) {
    const GeodesicPath path = random_path(rng, 1 + i % 2);
    const double t = rng.uniform(-0.4, 0.4);
    const double lt = length_t(f, t, path, rule);
    CHECK(lt <= std::sqrt(round_length(path) * energy_t(f, t, path, rule)) + 1e-9);
  }
}

TEST_CASE("additivity and reversal") {
  Rng rng(6);
  const QuadratureRule rule;
  const ScalarField f = odd_field();
  for (int i = 0; i < 50; ++i) {
    const UnitTangent v = rng.tangent();
    const double a = rng.uniform(0.1, 1.5);
    const double b = rng.uniform(0.1, 1.5);
    const GeodesicSegment whole(v, a + b);
    const GeodesicSegment first(v, a);
    const GeodesicSegment second(UnitTangent(whole.point_at(a), whole.tangent_at(a)), b);
    const double sum = integrate_along(f, GeodesicPath{first, second}, rule);
    CHECK(std::abs(integrate_along(f, whole, rule) - sum) < 1e-12);
    CHECK(std::abs(integrate_along(f, whole, rule) - integrate_along(f, whole.reversed(), rule)) < 1e-12);
  }
}

TEST_CASE("bump integrals converge under panel refinement") {
  Rng rng(7);
  for (double eps : {0.1, 0.03, 0.01}) {
    const QuadratureRule rule = QuadratureRule::for_bumps(eps);
    const QuadratureRule finer = rule.refined();
    const BumpFunction b(rng.point(), eps);
    for (int i = 0; i < 100; ++i) {
      // Segment through a random point of the support.
      const double r = eps * std::sqrt(rng.uniform());
      const UnitTangent out = UnitTangent::at_angle(b.center(), rng.uniform(0.0, kTwoPi));
      const SpherePoint x = GeodesicSegment(out, r).end();
      const UnitTangent through = UnitTangent::at_angle(x, rng.uniform(0.0, kTwoPi));
      const GeodesicSegment seg(UnitTangent(GeodesicSegment(through, 2 * eps).end(), -GeodesicSegment(through, 2 * eps).tangent_at(2 * eps)), 4 * eps);
      const double coarse = integrate_bump(b, seg, rule);
      CHECK(std::abs(coarse - integrate_bump(b, seg, finer)) < 1e-8);
      // Brute-force oracle on pointwise values.
      const double brute = oracle::simpson(
          [&](double s) {
            const Vec3 q = oracle::arc_point(seg.start().base().vec(), seg.start().dir(), s);
            return oracle::bump_value(oracle::angle(q, b.center().vec()), eps);
          },
          0.0, seg.length(), 200000);
      CHECK(std::abs(coarse - brute) < 1e-9 * eps);
    }
  }
}

TEST_CASE("rule identifiers") {
  CHECK(QuadratureRule().id() == "gl8/p0.05/tol1e-12/d40");
  CHECK(QuadratureRule::for_bumps(0.02).max_panel() == doctest::Approx(0.005));
  CHECK(QuadratureRule::for_bumps(1.0).max_panel() == doctest::Approx(0.05));
  CHECK(QuadratureRule().refined().max_panel() == doctest::Approx(0.025));
}

}

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "support.hpp"
#include "zoll/errors.hpp"
#include "zoll/goodness.hpp"

using namespace zoll;

namespace {

Vec3 dir_at(const SpherePoint& p, double theta) { return UnitTangent::at_angle(p, theta).dir(); }

double half_integral(const OddBumpSum& f, const SpherePoint& p, double theta, const QuadratureRule& rule) {
  return f.line_integral(half_circle(UnitTangent::at_angle(p, theta)), rule);
}

}  // namespace

TEST_SUITE("goodness-verifier") {

TEST_CASE("y-like gaps") {
  const double third = kTwoPi / 3;
  auto r = y_like_check(std::vector<double>{0.0, third, 2 * third});
  CHECK(r.y_like);
  CHECK(r.max_gap == doctest::Approx(third));
  r = y_like_check(std::vector<double>{0.0, 1.0});
  CHECK_FALSE(r.y_like);
  CHECK(r.max_gap == doctest::Approx(kTwoPi - 1.0));
  r = y_like_check(std::vector<double>{0.0, kPi});
  CHECK_FALSE(r.y_like);
  r = y_like_check(std::vector<double>{});
  CHECK_FALSE(r.y_like);
  CHECK(r.max_gap == kTwoPi);
  // Equispaced sets: Y-like from three points on.
  for (int n = 1; n < 12; ++n) {
    std::vector<double> a;
    for (int k = 0; k < n; ++k) a.push_back(kTwoPi * k / n);
    CHECK(y_like_check(a).y_like == (n >= 3));
  }
}

TEST_CASE("zero field has no negative directions") {
  const OddBumpSum zero = OddBumpSum::from_points({}, 0.01);
  const QuadratureRule rule = QuadratureRule::for_bumps(0.01);
  const auto set = negative_direction_set(zero, SpherePoint(1, 0, 0), 64, 0.0, rule);
  CHECK(set.angles.empty());
  CHECK_FALSE(y_like_check(set.angles).y_like);
  CHECK_THROWS_AS(negative_direction_set(zero, SpherePoint(1, 0, 0), 8, 0.0, rule), std::invalid_argument);
  CHECK_THROWS_AS(negative_direction_set(zero, SpherePoint(1, 0, 0), 64, -1.0, rule), std::invalid_argument);
}

TEST_CASE("half-circle through a single bump center") {
  const SpherePoint c(0.2, 0.3, 0.9);
  const double eps = 0.05;
  const OddBumpSum f = OddBumpSum::from_points({c}, eps);
  const QuadratureRule rule = QuadratureRule::for_bumps(eps);
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    const SpherePoint p(GeodesicSegment(UnitTangent::at_angle(c, rng.uniform(0.0, kTwoPi)), rng.uniform(0.2, 2.5)).end());
    const double aim = tangent_angle(p, UnitTangent::toward(p, c).dir());
    const auto scan = scan_half_circles(f, p, 64, rule);
    CHECK(std::is_sorted(scan.angles.begin(), scan.angles.end()));
    const auto it = std::min_element(scan.angles.begin(), scan.angles.end(), [&](double a, double b) {
      return std::abs(wrap_angle(a - aim)) < std::abs(wrap_angle(b - aim));
    });
    CHECK(std::abs(wrap_angle(*it - aim)) < 1e-12);
    const double value = scan.values[static_cast<std::size_t>(it - scan.angles.begin())];
    CHECK(value == doctest::Approx(-f.diameter_integral(rule)).epsilon(1e-10));
    const auto neg = negative_direction_set(f, p, 64, 0.0, rule);
    CHECK(std::find(neg.angles.begin(), neg.angles.end(), *it) != neg.angles.end());
    // Only a narrow cone of directions hits the negative bump.
    CHECK_FALSE(y_like_check(neg.angles).y_like);
  }
}

TEST_CASE("scan values match direct integrals") {
  const OddBumpSum& f = fixture::shipped_f();
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  Rng rng(22);
  for (int i = 0; i < 5; ++i) {
    const SpherePoint p = rng.point();
    const auto scan = scan_half_circles(f, p, 32, rule);
    CHECK(scan.angles.size() == 32 + f.bump_count());
    for (std::size_t k = 0; k < scan.angles.size(); ++k) {
      CHECK(scan.values[k] == doctest::Approx(half_integral(f, p, scan.angles[k], rule)).epsilon(1e-12));
      // Mirror image at the antipode.
      const UnitTangent mirrored(-p, -dir_at(p, scan.angles[k]));
      CHECK(std::abs(f.line_integral(half_circle(mirrored), rule) + scan.values[k]) < 1e-12);
    }
  }
}

TEST_CASE("threshold monotonicity") {
  const OddBumpSum& f = fixture::shipped_f();
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    const SpherePoint p = rng.point();
    const auto loose = negative_direction_set(f, p, 64, 0.0, rule);
    const auto tight = negative_direction_set(f, p, 64, 1e-5, rule);
    CHECK(tight.angles.size() <= loose.angles.size());
    for (double a : tight.angles) CHECK(std::find(loose.angles.begin(), loose.angles.end(), a) != loose.angles.end());
    for (double v : tight.values) CHECK(v < -1e-5);
  }
}

TEST_CASE("base point sampling") {
  const auto& set = fixture::shipped_set();
  std::vector<SpherePoint> centers;
  for (const auto& p : set.points) {
    centers.push_back(p);
    centers.push_back(-p);
  }
  const double eps = 0.01;
  const auto pts = sample_base_points(100, centers, eps, 0.25, 1.5);
  CHECK(pts.size() > 100);
  // Every added point lies within the ring extent of some center.
  for (std::size_t i = 100; i < pts.size(); ++i) {
    double nearest = kPi;
    for (const auto& c : centers) nearest = std::min(nearest, oracle::angle(pts[i].vec(), c.vec()));
    CHECK(nearest <= 1.5 * eps + 1e-12);
  }
  CHECK(sample_base_points(100, centers, 0.0, 0.25, 1.5).size() == 100);
}

TEST_CASE("nu estimate on the shipped set") {
  const OddBumpSum& f = fixture::shipped_f();
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  const SamplingConfig cfg = fixture::small_sampling();
  const NuEstimate est = estimate_nu(f, cfg, rule);
  CHECK(est.nu_hat > 0.0);
  CHECK(est.max_semicircle_gap < kPi);
  CHECK(est.base_points == est.witnesses.size());
  CHECK(est.samples == est.base_points * static_cast<std::size_t>(cfg.directions));
  for (const auto& w : est.witnesses) {
    CHECK(std::abs(wrap_angle(w.w_angle - w.v_angle)) < 0.5 * kPi);
    CHECK(w.integral <= -est.nu_hat);
    CHECK(w.integral == doctest::Approx(half_integral(f, w.base, w.w_angle, rule)).epsilon(1e-12));
  }
  CHECK(est.worst.integral == doctest::Approx(-est.nu_hat));
}

TEST_CASE("a single bump pair is not good") {
  const OddBumpSum f = OddBumpSum::from_points({SpherePoint(0, 0, 1)}, 0.05);
  SamplingConfig cfg = fixture::small_sampling();
  cfg.base_samples = 50;
  CHECK_THROWS_AS(estimate_nu(f, cfg, QuadratureRule::for_bumps(0.05)), GoodnessError);
}

TEST_CASE("near-antipodal threshold") {
  const OddBumpSum& f = fixture::shipped_f();
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  const SamplingConfig cfg = fixture::small_sampling();
  const double nu = 1e-5;
  const Lemma24Result r = estimate_lemma24_eps(f, nu, cfg, rule);
  CHECK(r.eps >= cfg.l24_floor);
  CHECK(r.eps < kPi);
  CHECK(r.nu == nu);
  CHECK(r.checks > 0);
  CHECK_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.size() <= static_cast<std::size_t>(cfg.witness_keep));
  for (const auto& w : r.witnesses) {
    const GeodesicPath tau = w.path();
    REQUIRE(tau.size() == 2);
    CHECK(tau[0].length() == doctest::Approx(tau[1].length()).epsilon(1e-9));
    CHECK(w.round_length <= kPi + 1e-9);
    CHECK(round_length(tau) == doctest::Approx(w.round_length).epsilon(1e-12));
    CHECK(w.integral < -nu);
    CHECK(w.gamma_length == doctest::Approx(kPi - r.eps).epsilon(1e-12));
    CHECK(w.integral == doctest::Approx(f.line_integral(tau, rule)).epsilon(1e-10));
    // Endpoints shared with gamma.
    const GeodesicSegment gamma(UnitTangent(w.start, w.dir), w.gamma_length);
    CHECK(oracle::angle(tau[0].start().base().vec(), gamma.start().base().vec()) < 1e-9);
    CHECK(oracle::angle(tau[1].end().vec(), gamma.end().vec()) < 1e-7);
  }
}

TEST_CASE("through-point directions") {
  const auto& set = fixture::shipped_set();
  const SamplingConfig cfg = fixture::small_sampling();
  const GvReport r = gv_y_like_check(set.points, set.epsilon_sigma, cfg.gv_base_samples, 0.5 * set.epsilon_sigma, cfg);
  CHECK(r.all_y_like);
  CHECK(r.max_gap < kPi);
  CHECK(r.samples >= static_cast<std::size_t>(cfg.gv_base_samples));
  CHECK_NOTHROW(require_y_like(r));

  // Four points cannot surround every base point.
  const GvReport tet = gv_y_like_check(tetrahedron_vertices(), 0.05, 1000, 0.05, cfg);
  CHECK(tet.max_gap > 0.0);
  CHECK(tet.max_gap <= kTwoPi);
  CHECK_FALSE(tet.all_y_like);
  CHECK_THROWS_AS(require_y_like(tet), GoodnessError);
}

TEST_CASE("certificate assembly") {
  const auto& set = fixture::shipped_set();
  const OddBumpSum& f = fixture::shipped_f();
  const QuadratureRule rule = QuadratureRule::for_bumps(f.epsilon());
  const SamplingConfig cfg = fixture::small_sampling();
  const GoodnessCertificate c = certify_goodness(f, set.epsilon_sigma, cfg, rule);
  CHECK(c.epsilon == f.epsilon());
  CHECK(c.nu_hat > 0.0);
  CHECK(c.lemma24_nu == doctest::Approx(cfg.l24_nu_fraction * c.nu_hat));
  CHECK(c.lemma24_eps >= cfg.l24_floor);
  CHECK(c.max_semicircle_gap < kPi);
  CHECK(c.gv_max_gap < kPi);
  CHECK(c.quadrature_id == rule.id());
  CHECK_FALSE(c.lemma24_witnesses.empty());
}

}

#pragma once

// Sampled certification that an odd bump sum is A-good: at every sampled
// base point the directions of great half-circles with negative integral meet
// every open semicircle, every sampled (p, v) has an acute witness
// half-circle with integral below -nu_hat, and long segments admit short
// two-leg witnesses (the near-antipodal threshold).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "zoll/bump.hpp"
#include "zoll/quadrature.hpp"
#include "zoll/sphere_geom.hpp"

namespace zoll {

struct SamplingConfig {
  // Half-circle scan (nu_hat and semicircle gaps).
  int base_samples = 10000;
  int directions = 512;
  // Extra base points on rings around every point of Sigma and -Sigma, with
  // spacing refine_spacing * eps out to radius refine_extent * eps.
  double refine_spacing = 0.125;
  double refine_extent = 1.5;

  // Near-antipodal threshold search.
  int l24_base_samples = 500;
  int l24_directions = 24;
  int l24_family_grid = 32;
  double l24_nu_fraction = 0.5;
  double l24_floor = 1e-3;
  double l24_resolution = 1e-3;
  int witness_keep = 256;

  // Through-point direction check.
  int gv_base_samples = 10000;
};

// Base points: Fibonacci lattice plus refinement rings around `centers`.
std::vector<SpherePoint> sample_base_points(int lattice_size, std::span<const SpherePoint> centers, double eps,
                                            double spacing_fraction, double extent_fraction);

// Half-circle integrals at one base point: `n_dirs` equispaced directions of
// the tangent frame plus the directions aimed at every bump center.
struct HalfCircleScan {
  SpherePoint base;
  std::vector<double> angles;  // strictly increasing in [0, 2pi)
  std::vector<double> values;
};

HalfCircleScan scan_half_circles(const OddBumpSum& f, const SpherePoint& p, int n_dirs, const QuadratureRule& rule);

// Strict negativity "< 0" is applied as "< -kNegativeSlack * length".
inline constexpr double kNegativeSlack = 1e-12;

struct DirectionSet {
  SpherePoint base;
  std::vector<double> angles;
  std::vector<double> values;
};

// Directions whose half-circle integral is below -threshold (threshold >= 0;
// zero means strict negativity up to kNegativeSlack). Throws
// std::invalid_argument for n_dirs < 16.
DirectionSet negative_direction_set(const OddBumpSum& f, const SpherePoint& p, int n_dirs, double threshold,
                                    const QuadratureRule& rule);

struct YLikeResult {
  bool y_like = false;
  double max_gap = 0.0;
};

// Largest circular gap between consecutive angles (2pi for an empty set);
// Y-like iff that gap is below pi.
YLikeResult y_like_check(std::span<const double> angles);

struct Witness {
  SpherePoint base;
  double v_angle = 0.0;  // sampled direction
  double w_angle = 0.0;  // witness half-circle direction
  double integral = 0.0;
};

struct NuEstimate {
  double nu_hat = 0.0;
  double max_semicircle_gap = 0.0;
  std::size_t base_points = 0;
  std::size_t samples = 0;  // (p, v) pairs
  Witness worst;
  // Worst (p, v) at each base point.
  std::vector<Witness> witnesses;
};

// Throws GoodnessError naming the offending (p, v) if some sample has no
// acute witness with negative integral, or if some base point's negative
// direction set is not Y-like.
NuEstimate estimate_nu(const OddBumpSum& f, const SamplingConfig& cfg, const QuadratureRule& rule);

// Two-leg witness tau in the short subfamily of gamma.
struct PathWitness {
  SpherePoint start;
  Vec3 dir;
  double gamma_length = 0.0;
  double theta = 0.0;
  double round_length = 0.0;  // L0(tau)
  double integral = 0.0;

  GeodesicPath path() const;
};

struct Lemma24Result {
  double eps = 0.0;
  double nu = 0.0;
  std::size_t segments_per_check = 0;
  int checks = 0;
  // Hardest witnesses (integral closest to -nu) at length pi - eps.
  std::vector<PathWitness> witnesses;
};

// Largest eps (binary search to cfg.l24_resolution) such that every sampled
// segment gamma with length in {pi - eps, pi - eps/2, pi} has a member of its
// short subfamily with integral below -nu. Throws GoodnessError when even
// cfg.l24_floor fails.
Lemma24Result estimate_lemma24_eps(const OddBumpSum& f, double nu, const SamplingConfig& cfg,
                                   const QuadratureRule& rule);

struct GvReport {
  std::size_t samples = 0;
  double max_gap = 0.0;
  bool all_y_like = false;
  SpherePoint worst_base;
};

// At each sampled base point p, the directions of half-circles from p that
// pass through a point of Sigma at parameter in (eps_sigma, pi - eps_sigma)
// and avoid -Sigma on the open arc; reports the largest semicircle gap.
GvReport gv_y_like_check(std::span<const SpherePoint> sigma, double eps_sigma, int base_samples,
                         double refine_eps, const SamplingConfig& cfg);

// Throws GoodnessError if the report has a gap of at least pi.
void require_y_like(const GvReport& report);

struct GoodnessCertificate {
  double epsilon = 0.0;
  double nu_hat = 0.0;
  double lemma24_eps = 0.0;
  double lemma24_nu = 0.0;
  double max_semicircle_gap = 0.0;
  double gv_max_gap = 0.0;
  std::size_t base_points = 0;
  std::size_t samples = 0;
  std::size_t gv_samples = 0;
  std::string quadrature_id;
  SamplingConfig sampling;
  Witness worst;
  std::vector<PathWitness> lemma24_witnesses;
  std::vector<Witness> witnesses;
};

GoodnessCertificate certify_goodness(const OddBumpSum& f, double eps_sigma, const SamplingConfig& cfg,
                                     const QuadratureRule& rule);

}  // namespace zoll

#pragma once

// Fine point sets: no collinear triple, no forbidden concurrent triple of
// great circles through pairs of points, and at least three points in every
// open hemisphere. Each condition is certified with a quantitative margin in
// radians.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zoll/sphere_geom.hpp"

namespace zoll {

// Points closer than this (or this close to antipodal) count as equal.
inline constexpr double kFineTol = 1e-9;

struct FineMargins {
  double collinearity = 0.0;
  double concurrency = 0.0;
  double hemisphere = 0.0;
  // Lipschitz grid certificate for the hemisphere margin.
  double hemisphere_certified = 0.0;
  int hemisphere_grid_level = 0;
};

struct FineSet {
  std::vector<SpherePoint> points;
  FineMargins margins;
  double epsilon_sigma = 0.0;
};

// Unit vectors of the regular inscribed tetrahedron.
std::vector<SpherePoint> tetrahedron_vertices();

// Each tetrahedron vertex replaced by three points drawn uniformly from the
// spherical cap of radius `spread` around it. Deterministic in `seed`.
// 0 <= spread < 0.3; spread = 0 gives coincident triples.
std::vector<SpherePoint> generate_perturbed_tetrahedron(std::uint64_t seed, double spread);

// Minimum over triples of the distance from one point to the great circle
// through the other two. Throws FinenessError (duplicate_or_antipodal) if two
// points coincide or are antipodal.
double check_collinearity(std::span<const SpherePoint> points);

// Minimum, over pairs of distinct great circles through pairs of points, of
// the distance from their intersection to every other such circle; the
// intersections lying in the set or its antipodes are exempt. pi/2 when no
// constrained intersection exists.
double check_concurrency(std::span<const SpherePoint> points);

struct HemisphereCheck {
  // min over centers c of asin(third-largest <c, p_i>).
  double margin = 0.0;
  SpherePoint worst_center;
  // asin(grid minimum - covering radius): a lower bound for the margin.
  double certified_lower = 0.0;
  int grid_level = 0;
  double grid_covering_radius = 0.0;
};

// The minimum of the third-largest inner product is attained at one of the
// finitely many critical points of the arrangement of bisector circles; all
// are enumerated. An icosphere sweep then certifies it via 1-Lipschitz
// continuity, at a grid level whose covering radius is at most margin / 4
// (and at least `min_grid_level`). Throws std::invalid_argument for fewer
// than three points.
HemisphereCheck check_hemispheres(std::span<const SpherePoint> points, int min_grid_level = 0);

// Third-largest <c, p_i>.
double third_largest_dot(std::span<const SpherePoint> points, const Vec3& c);

// min((1/2 - 1e-3) * min pairwise distance within points and antipodes,
//     hemisphere margin).
double epsilon_sigma(std::span<const SpherePoint> points, double hemisphere_margin);

// Outcome of all three checks without throwing on a failed condition.
struct FinenessReport {
  bool duplicate_or_antipodal = false;
  FineMargins margins;
  bool collinearity_ok = false;
  bool concurrency_ok = false;
  bool hemisphere_ok = false;
  double epsilon_sigma = 0.0;

  bool fine() const { return !duplicate_or_antipodal && collinearity_ok && concurrency_ok && hemisphere_ok; }
  // Names of the failed conditions, comma separated; empty when fine.
  std::string failures() const;
};

FinenessReport evaluate_fineness(std::span<const SpherePoint> points, int min_grid_level = 0);

// Runs all checks and returns a certified FineSet, or throws FinenessError
// naming the first failed condition.
FineSet certify_fine_set(std::vector<SpherePoint> points, int min_grid_level = 0);

}  // namespace zoll

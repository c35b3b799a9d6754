#include "zoll/fine_sets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zoll/errors.hpp"
#include "zoll/mesh.hpp"
#include "zoll/random.hpp"

namespace zoll {

namespace {

double distance_to_circle(const Vec3& x, const Vec3& unit_normal) {
  return std::asin(std::min(1.0, std::abs(dot(x, unit_normal))));
}

void require_distinct(std::span<const SpherePoint> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = distance0(points[i], points[j]);
      if (d < kFineTol || d > kPi - kFineTol) {
        throw FinenessError(FinenessError::Condition::duplicate_or_antipodal,
                            "points " + std::to_string(i) + " and " + std::to_string(j) +
                                (d < kFineTol ? " coincide" : " are antipodal"));
      }
    }
  }
}

bool near_set_or_antipodes(const Vec3& x, std::span<const SpherePoint> points) {
  for (const auto& p : points) {
    if (angle_between(x, p.vec()) < kFineTol || angle_between(x, -p.vec()) < kFineTol) return true;
  }
  return false;
}

}  // namespace

std::vector<SpherePoint> tetrahedron_vertices() {
  return {SpherePoint(1, 1, 1), SpherePoint(1, -1, -1), SpherePoint(-1, 1, -1), SpherePoint(-1, -1, 1)};
}

std::vector<SpherePoint> generate_perturbed_tetrahedron(std::uint64_t seed, double spread) {
  if (!(spread >= 0.0 && spread < 0.3)) {
    throw std::invalid_argument("generate_perturbed_tetrahedron: spread must lie in [0, 0.3)");
  }
  Rng rng(seed);
  std::vector<SpherePoint> out;
  out.reserve(12);
  const double cos_spread = std::cos(spread);
  for (const auto& vertex : tetrahedron_vertices()) {
    const auto [e1, e2] = tangent_frame(vertex);
    for (int k = 0; k < 3; ++k) {
      // Uniform area measure on the cap: cos(angle) uniform in [cos spread, 1].
      const double c = 1.0 - rng.uniform() * (1.0 - cos_spread);
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      const double phi = rng.uniform(0.0, kTwoPi);
      out.emplace_back(c * vertex.vec() + s * (std::cos(phi) * e1 + std::sin(phi) * e2));
    }
  }
  return out;
}

double check_collinearity(std::span<const SpherePoint> points) {
  if (points.size() < 3) throw std::invalid_argument("check_collinearity: need at least 3 points");
  require_distinct(points);
  double margin = kPi / 2;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 normal = normalized(cross(points[i].vec(), points[j].vec()));
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        margin = std::min(margin, distance_to_circle(points[k].vec(), normal));
      }
    }
  }
  return margin;
}

double check_concurrency(std::span<const SpherePoint> points) {
  const std::size_t n = points.size();
  std::vector<Vec3> circles;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      circles.push_back(normalized(cross(points[i].vec(), points[j].vec())));
    }
  }
  double margin = kPi / 2;
  const std::size_t m = circles.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const Vec3 axis = cross(circles[a], circles[b]);
      if (norm(axis) < 1e-15) {
        // Coincident circles: four collinear points, already a collinearity failure.
        return 0.0;
      }
      const Vec3 x = normalized(axis);
      if (near_set_or_antipodes(x, points)) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a || c == b) continue;
        // Max distance from x to the three circles; x lies on a and b.
        const double d = std::max({distance_to_circle(x, circles[a]), distance_to_circle(x, circles[b]),
                                   distance_to_circle(x, circles[c])});
        margin = std::min(margin, d);
      }
    }
  }
  return margin;
}

double third_largest_dot(std::span<const SpherePoint> points, const Vec3& c) {
  double top[3] = {-2.0, -2.0, -2.0};
  for (const auto& p : points) {
    const double v = dot(c, p.vec());
    if (v > top[0]) {
      top[2] = top[1];
      top[1] = top[0];
      top[0] = v;
    } else if (v > top[1]) {
      top[2] = top[1];
      top[1] = v;
    } else if (v > top[2]) {
      top[2] = v;
    }
  }
  return top[2];
}

HemisphereCheck check_hemispheres(std::span<const SpherePoint> points, int min_grid_level) {
  if (points.size() < 3) throw std::invalid_argument("check_hemispheres: need at least 3 points");
  const std::size_t n = points.size();

  std::vector<Vec3> candidates;
  for (const auto& p : points) candidates.push_back(-p.vec());
  std::vector<Vec3> bisectors;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const Vec3 sum = points[j].vec() + points[k].vec();
      if (norm(sum) > 1e-12) {
        candidates.push_back(normalized(sum));
        candidates.push_back(-normalized(sum));
      }
      const Vec3 diff = points[j].vec() - points[k].vec();
      if (norm(diff) > 1e-12) bisectors.push_back(normalized(diff));
    }
  }
  for (std::size_t a = 0; a < bisectors.size(); ++a) {
    for (std::size_t b = a + 1; b < bisectors.size(); ++b) {
      const Vec3 x = cross(bisectors[a], bisectors[b]);
      if (norm(x) < 1e-14) continue;
      candidates.push_back(normalized(x));
      candidates.push_back(-normalized(x));
    }
  }

  HemisphereCheck out;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    const double s3 = third_largest_dot(points, c);
    if (s3 < best) {
      best = s3;
      out.worst_center = SpherePoint(c);
    }
  }
  out.margin = std::asin(std::clamp(best, -1.0, 1.0));

  // Grid sweep at covering radius <= margin / 4.
  int level = std::max(min_grid_level, 3);
  if (out.margin > 0.0) {
    while (level < 7 && build_mesh(level).covering_radius > 0.25 * out.margin) ++level;
  }
  const SphereMesh grid = build_mesh(level);
  double grid_min = std::numeric_limits<double>::infinity();
  for (const auto& v : grid.vertices) grid_min = std::min(grid_min, third_largest_dot(points, v.vec()));
  out.grid_level = level;
  out.grid_covering_radius = grid.covering_radius;
  out.certified_lower = std::asin(std::clamp(grid_min - grid.covering_radius, -1.0, 1.0));
  return out;
}

double epsilon_sigma(std::span<const SpherePoint> points, double hemisphere_margin) {
  double min_dist = kPi;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d = distance0(points[i], points[j]);
      // d(p_i, -p_j) = pi - d(p_i, p_j); d(p_i, -p_i) = pi.
      min_dist = std::min({min_dist, d, kPi - d});
    }
  }
  return std::min((0.5 - 1e-3) * min_dist, hemisphere_margin);
}

std::string FinenessReport::failures() const {
  std::string out;
  auto add = [&](const char* name) {
    if (!out.empty()) out += ",";
    out += name;
  };
  if (duplicate_or_antipodal) add("duplicate_or_antipodal");
  if (!duplicate_or_antipodal && !collinearity_ok) add("collinearity");
  if (!duplicate_or_antipodal && !concurrency_ok) add("concurrency");
  if (!duplicate_or_antipodal && !hemisphere_ok) add("hemispheres");
  return out;
}

FinenessReport evaluate_fineness(std::span<const SpherePoint> points, int min_grid_level) {
  FinenessReport report;
  try {
    report.margins.collinearity = check_collinearity(points);
  } catch (const FinenessError&) {
    report.duplicate_or_antipodal = true;
    return report;
  }
  report.margins.concurrency = check_concurrency(points);
  const HemisphereCheck hemi = check_hemispheres(points, min_grid_level);
  report.margins.hemisphere = hemi.margin;
  report.margins.hemisphere_certified = hemi.certified_lower;
  report.margins.hemisphere_grid_level = hemi.grid_level;
  report.collinearity_ok = report.margins.collinearity > kFineTol;
  report.concurrency_ok = report.margins.concurrency > kFineTol;
  report.hemisphere_ok = hemi.margin > kFineTol && hemi.certified_lower > 0.0;
  if (report.fine()) report.epsilon_sigma = epsilon_sigma(points, hemi.margin);
  return report;
}

FineSet certify_fine_set(std::vector<SpherePoint> points, int min_grid_level) {
  const FinenessReport report = evaluate_fineness(points, min_grid_level);
  using C = FinenessError::Condition;
  if (report.duplicate_or_antipodal) {
    throw FinenessError(C::duplicate_or_antipodal, "fineness failed: duplicate or antipodal pair");
  }
  if (!report.collinearity_ok) {
    throw FinenessError(C::collinearity,
                        "fineness failed: collinearity margin " + std::to_string(report.margins.collinearity));
  }
  if (!report.concurrency_ok) {
    throw FinenessError(C::concurrency,
                        "fineness failed: concurrency margin " + std::to_string(report.margins.concurrency));
  }
  if (!report.hemisphere_ok) {
    throw FinenessError(C::hemispheres,
                        "fineness failed: hemisphere margin " + std::to_string(report.margins.hemisphere));
  }
  return FineSet{std::move(points), report.margins, report.epsilon_sigma};
}

}  // namespace zoll

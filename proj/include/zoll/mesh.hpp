#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "zoll/sphere_geom.hpp"

namespace zoll {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Icosahedron subdivided `level` times with vertices projected to the sphere.
struct SphereMesh {
  int level = 0;
  std::vector<SpherePoint> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
  // Sorted (lo, hi) vertex pairs.
  std::vector<Edge> edges;
  // Max round distance from a point of the sphere to its nearest vertex.
  double covering_radius = 0.0;
};

inline constexpr int kMaxMeshLevel = 8;

// 0 <= level <= kMaxMeshLevel; 10 * 4^level + 2 vertices.
SphereMesh build_mesh(int level);

// Largest spherical circumradius over the faces. Every point of a spherical
// triangle lies within the circumradius of one of its corners, so this bounds
// the covering radius of the vertex set.
double covering_radius(const std::vector<SpherePoint>& vertices,
                       const std::vector<std::array<std::uint32_t, 3>>& faces);

// Mesh edges plus chords between vertices at graph distance exactly 2.
std::vector<Edge> with_two_hop_chords(const SphereMesh& mesh);

}  // namespace zoll

#include "zoll/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace zoll {

namespace {

std::vector<SpherePoint> icosahedron_vertices() {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double raw[12][3] = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                             {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                             {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<SpherePoint> v;
  for (const auto& r : raw) v.emplace_back(r[0], r[1], r[2]);
  return v;
}

constexpr std::uint32_t kIcosahedronFaces[20][3] = {
    {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
    {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
    {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

}  // namespace

double covering_radius(const std::vector<SpherePoint>& vertices,
                       const std::vector<std::array<std::uint32_t, 3>>& faces) {
  double h = 0.0;
  for (const auto& f : faces) {
    const Vec3& a = vertices[f[0]].vec();
    const Vec3& b = vertices[f[1]].vec();
    const Vec3& c = vertices[f[2]].vec();
    Vec3 center = normalized(cross(b - a, c - a));
    if (dot(center, a + b + c) < 0.0) center = -center;
    h = std::max(h, angle_between(center, a));
  }
  return h + 1e-12;
}

SphereMesh build_mesh(int level) {
  if (level < 0 || level > kMaxMeshLevel) {
    throw std::invalid_argument("build_mesh: level must be in [0, " + std::to_string(kMaxMeshLevel) + "]");
  }
  SphereMesh mesh;
  mesh.level = level;
  mesh.vertices = icosahedron_vertices();
  for (const auto& f : kIcosahedronFaces) mesh.faces.push_back({f[0], f[1], f[2]});

  for (int l = 0; l < level; ++l) {
    std::map<Edge, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const Edge key = a < b ? Edge{a, b} : Edge{b, a};
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const auto idx = static_cast<std::uint32_t>(mesh.vertices.size());
      mesh.vertices.emplace_back(mesh.vertices[a].vec() + mesh.vertices[b].vec());
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<std::uint32_t, 3>> next;
    next.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      const std::uint32_t ab = midpoint(f[0], f[1]);
      const std::uint32_t bc = midpoint(f[1], f[2]);
      const std::uint32_t ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.faces = std::move(next);
  }

  for (const auto& f : mesh.faces) {
    for (int k = 0; k < 3; ++k) {
      std::uint32_t a = f[k], b = f[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      mesh.edges.emplace_back(a, b);
    }
  }
  std::sort(mesh.edges.begin(), mesh.edges.end());
  mesh.edges.erase(std::unique(mesh.edges.begin(), mesh.edges.end()), mesh.edges.end());
  mesh.covering_radius = covering_radius(mesh.vertices, mesh.faces);
  return mesh;
}

std::vector<Edge> with_two_hop_chords(const SphereMesh& mesh) {
  const std::size_t n = mesh.vertices.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [a, b] : mesh.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  std::vector<Edge> out = mesh.edges;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v : adj[u]) {
      for (std::uint32_t w : adj[v]) {
        if (w <= u) continue;
        if (std::binary_search(adj[u].begin(), adj[u].end(), w)) continue;
        out.emplace_back(u, w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace zoll

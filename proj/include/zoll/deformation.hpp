#pragma once

// Upper bounds on the diameter of (1 + t f) g0 from shortest paths on an
// icosphere graph whose edge weights are the deformed lengths of the round
// edges.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "zoll/bump.hpp"
#include "zoll/goodness.hpp"
#include "zoll/mesh.hpp"
#include "zoll/quadrature.hpp"

namespace zoll {

// 1 + t f(q). Throws DegenerateMetricError if 1 - |t| sup|f| <= 0.
double conformal_factor(const OddBumpSum& f, double t, const SpherePoint& q);
void require_positive_factor(const OddBumpSum& f, double t);

// Icosphere edges plus two-hop chords.
struct MeshGraph {
  SphereMesh mesh;
  std::vector<Edge> edges;
  std::vector<double> round_lengths;

  double covering_radius() const { return mesh.covering_radius; }
};

MeshGraph build_mesh_graph(int level);

// length_t of the round segment of every edge.
std::vector<double> deformed_edge_lengths(const MeshGraph& graph, const OddBumpSum& f, double t,
                                          const QuadratureRule& rule);

// Undirected graph in compressed adjacency form.
class WeightedGraph {
 public:
  WeightedGraph(std::size_t n, std::span<const Edge> edges, std::span<const double> weights);

  std::size_t size() const { return offsets_.size() - 1; }
  double min_weight() const { return min_weight_; }
  double max_weight() const { return max_weight_; }

  // Single-source distances. Throws DisconnectedGraphError if some vertex is
  // unreachable.
  std::vector<double> distances_from(std::uint32_t source) const;
  double eccentricity(std::uint32_t source) const;

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<double> weights_;
  double min_weight_ = 0.0;
  double max_weight_ = 0.0;
};

struct DiameterResult {
  double diameter = 0.0;
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::size_t sources = 0;  // single-source runs performed
};

// Exact max over vertex pairs of the shortest-path distance. Sources are
// pruned with eccentricity upper bounds ecc(v) + d(v, w).
DiameterResult graph_diameter(const WeightedGraph& graph);
DiameterResult graph_diameter(const MeshGraph& graph, std::span<const double> weights);

// Exact diameters of reweighted copies of one mesh graph. The round
// eccentricities are computed once; for new weights w,
//   ecc_w(v) <= ecc_0(v) + sum_e max(0, w_e - w0_e),
// so only vertices whose bound beats the running maximum are re-solved.
class DiameterSolver {
 public:
  explicit DiameterSolver(int level);

  const MeshGraph& graph() const { return graph_; }
  const std::vector<double>& round_eccentricities();
  DiameterResult solve(std::span<const double> weights);

 private:
  MeshGraph graph_;
  std::vector<double> ecc0_;
  std::vector<std::uint32_t> order_;
};

struct DiameterReport {
  double t = 0.0;
  int level = 0;
  double covering_radius = 0.0;
  double graph_diameter = 0.0;
  double certified_bound = 0.0;
  double margin_below_pi = 0.0;
  bool success = false;
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::size_t sources = 0;
  std::string fd_epsilon_note;
};

// certified_bound = graph diameter + 2 h sqrt(1 + |t| sup|f|); success iff
// below pi. Throws DegenerateMetricError for a nonpositive factor.
DiameterReport certify_diameter_drop(const OddBumpSum& f, double t, DiameterSolver& solver,
                                     const QuadratureRule& rule, double lemma24_eps = 0.0);
DiameterReport certify_diameter_drop(const OddBumpSum& f, double t, int level, const QuadratureRule& rule);

struct ShortcutReport {
  double t = 0.0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  // min over witnesses of pi - L_t(tau) and of L_0(tau) - L_t(tau).
  double min_slack = 0.0;
  double min_gain = 0.0;
  bool ok() const { return violations == 0; }
};

// For every witness tau checks L_t(tau) < L_0(tau) <= pi (t = 0 only checks
// the right inequality and equality L_t = L_0).
ShortcutReport shortcut_length_check(const OddBumpSum& f, double t, std::span<const PathWitness> witnesses,
                                     const QuadratureRule& rule);

}  // namespace zoll

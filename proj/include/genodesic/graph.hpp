#pragma once

#include "genodesic/density.hpp"
#include "genodesic/metric.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace genodesic {

/// Undirected edge with i < j.
struct Edge {
  Index i;
  Index j;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct FixedRadius {
  double epsilon;
};
struct AdaptiveRadius {
  int min_neighbors;
};
using Neighborhood = std::variant<FixedRadius, AdaptiveRadius>;

enum class EpsGraphMethod { kAuto, kBruteForce, kGrid };

/// Brute force below this many points, uniform cell grid above (d <= 3).
inline constexpr Index kGridThreshold = 2000;

/// Vertices plus sorted, duplicate-free undirected edges.
struct EpsGraph {
  PointCloud points;
  std::vector<Edge> edges;
  Neighborhood neighborhood;

  Index num_vertices() const { return points.rows(); }
  Index dim() const { return points.cols(); }
};

/// Edges {(i, j) : ||x_i - x_j||_2 < epsilon}. Pairs at exactly epsilon are excluded.
EpsGraph build_eps_graph(const PointCloud& points, double epsilon, EpsGraphMethod method = EpsGraphMethod::kAuto);

/// Each vertex grows its radius to its k-th nearest neighbour distance; the edge
/// set is the union of those neighbourhoods, so every degree is >= k.
EpsGraph build_adaptive_graph(const PointCloud& points, int min_neighbors);

/// Component label per vertex, labels numbered in order of first appearance.
std::vector<Index> connected_components(Index num_vertices, const std::vector<Edge>& edges);
inline std::vector<Index> connected_components(const EpsGraph& graph) {
  return connected_components(graph.num_vertices(), graph.edges);
}
Index count_components(const std::vector<Index>& labels);

/// Compressed adjacency for an undirected weighted graph.
struct Adjacency {
  std::vector<Index> offsets;
  std::vector<Index> targets;
  std::vector<double> weights;

  Index num_vertices() const { return static_cast<Index>(offsets.size()) - 1; }
};

Adjacency make_adjacency(Index num_vertices, const std::vector<Edge>& edges, const std::vector<double>& weights);

/// The K-approximate weighted epsilon graph.
///
/// Shortest paths are searched on the weights the graph was built with. A
/// later change of p0 only multiplies the reported lengths by
/// (p0' + lambda) / (p0 + lambda), so it can never reorder or re-tie paths.
class WeightedEpsGraph {
 public:
  WeightedEpsGraph(EpsGraph graph, std::vector<double> weights, MetricParams params,
                   std::shared_ptr<const DensityModel> density);

  const EpsGraph& graph() const { return graph_; }
  const PointCloud& points() const { return graph_.points; }
  const std::vector<Edge>& edges() const { return graph_.edges; }
  const MetricParams& params() const { return params_; }
  const std::shared_ptr<const DensityModel>& density() const { return density_; }
  /// Weights at the p0 of construction, the ones Dijkstra runs on.
  const std::vector<double>& search_weights() const { return search_weights_; }
  /// Factor from search costs to metric lengths; 1 unless p0 was changed.
  double distance_scale() const { return distance_scale_; }
  const Adjacency& adjacency() const { return adjacency_; }

  Index num_vertices() const { return graph_.num_vertices(); }
  double weight(std::size_t edge) const { return distance_scale_ * search_weights_[edge]; }
  std::vector<double> weights() const;

  /// Same topology with p0 replaced; distances scale by (p0' + lambda) / (p0 + lambda).
  WeightedEpsGraph with_p0(double p0) const;

 private:
  EpsGraph graph_;
  std::vector<double> search_weights_;
  double distance_scale_ = 1.0;
  MetricParams params_;
  std::shared_ptr<const DensityModel> density_;
  Adjacency adjacency_;
};

/// Weights every edge by the quadrature length of its straight segment.
WeightedEpsGraph weigh_graph(EpsGraph graph, std::shared_ptr<const DensityModel> density,
                             const MetricParams& params);

}  // namespace genodesic

#pragma once

#include "genodesic/graph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace genodesic {

/// One Dijkstra pass: distances and predecessors from `source`.
struct SsspTree {
  Index source = kNoVertex;
  std::vector<double> distance;
  std::vector<Index> predecessor;  // kNoVertex for the source and unreachable vertices

  bool reachable(Index v) const { return distance[static_cast<std::size_t>(v)] < kInfinity; }
  /// Vertex sequence source..v, empty when v is unreachable.
  std::vector<Index> path_to(Index v) const;
};

struct GeodesicResult {
  Index source = kNoVertex;
  Index target = kNoVertex;
  double distance = kInfinity;
  std::vector<Index> path;
  PointCloud coords;  // one row per path vertex

  bool connected() const { return distance < kInfinity; }
};

/// Binary-heap Dijkstra with lazy deletion on nonnegative weights.
/// When `stop_at` is given the search ends once that vertex is settled.
SsspTree dijkstra(const Adjacency& adjacency, Index source, std::optional<Index> stop_at = std::nullopt);

/// Single-source shortest paths on the metric weights (p0 + lambda included).
SsspTree sssp(const WeightedEpsGraph& graph, Index source);

GeodesicResult geodesic(const WeightedEpsGraph& graph, Index source, Index target);

/// Pairwise linear interpolating costs among `subset` (all vertices by default),
/// by one SSSP per row. The result is exactly symmetric with a zero diagonal.
DistanceMatrix all_pairs_distances(const WeightedEpsGraph& graph,
                                   std::optional<std::span<const Index>> subset = std::nullopt);

/// Sum of metric edge weights along consecutive path vertices.
double path_cost(const WeightedEpsGraph& graph, std::span<const Index> path);

}  // namespace genodesic

#include "genodesic/shortest_path.hpp"

#include "genodesic/parallel.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

namespace genodesic {
namespace {

void check_vertex(Index v, Index n, const char* role) {
  if (v < 0 || v >= n) {
    fail(ErrorCode::kInvalidInput,
         std::string(role) + " index " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
  }
}

}  // namespace

std::vector<Index> SsspTree::path_to(Index v) const {
  std::vector<Index> path;
  if (!reachable(v)) return path;
  for (Index cur = v; cur != kNoVertex; cur = predecessor[static_cast<std::size_t>(cur)]) path.push_back(cur);
  std::reverse(path.begin(), path.end());
  return path;
}

SsspTree dijkstra(const Adjacency& adjacency, Index source, std::optional<Index> stop_at) {
  const Index n = adjacency.num_vertices();
  check_vertex(source, n, "source");
  SsspTree tree;
  tree.source = source;
  tree.distance.assign(static_cast<std::size_t>(n), kInfinity);
  tree.predecessor.assign(static_cast<std::size_t>(n), kNoVertex);
  tree.distance[static_cast<std::size_t>(source)] = 0.0;

  using Entry = std::pair<double, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > tree.distance[static_cast<std::size_t>(u)]) continue;
    if (stop_at && u == *stop_at) break;
    const auto begin = static_cast<std::size_t>(adjacency.offsets[static_cast<std::size_t>(u)]);
    const auto end = static_cast<std::size_t>(adjacency.offsets[static_cast<std::size_t>(u) + 1]);
    for (std::size_t k = begin; k < end; ++k) {
      const Index v = adjacency.targets[k];
      const double candidate = d + adjacency.weights[k];
      auto& best = tree.distance[static_cast<std::size_t>(v)];
      if (candidate < best) {
        best = candidate;
        tree.predecessor[static_cast<std::size_t>(v)] = u;
        heap.emplace(candidate, v);
      }
    }
  }
  return tree;
}

SsspTree sssp(const WeightedEpsGraph& graph, Index source) {
  SsspTree tree = dijkstra(graph.adjacency(), source);
  const double scale = graph.distance_scale();
  for (double& d : tree.distance) d *= scale;
  return tree;
}

GeodesicResult geodesic(const WeightedEpsGraph& graph, Index source, Index target) {
  const Index n = graph.num_vertices();
  check_vertex(source, n, "source");
  check_vertex(target, n, "target");
  const SsspTree tree = dijkstra(graph.adjacency(), source, target);

  GeodesicResult result;
  result.source = source;
  result.target = target;
  result.path = tree.path_to(target);
  if (!result.path.empty()) {
    result.distance = graph.distance_scale() * tree.distance[static_cast<std::size_t>(target)];
  }
  result.coords.resize(static_cast<Index>(result.path.size()), graph.points().cols());
  for (std::size_t k = 0; k < result.path.size(); ++k) {
    result.coords.row(static_cast<Index>(k)) = graph.points().row(result.path[k]);
  }
  return result;
}

DistanceMatrix all_pairs_distances(const WeightedEpsGraph& graph, std::optional<std::span<const Index>> subset) {
  const Index n = graph.num_vertices();
  std::vector<Index> rows;
  if (subset) {
    rows.assign(subset->begin(), subset->end());
    for (Index v : rows) check_vertex(v, n, "subset");
  } else {
    rows.resize(static_cast<std::size_t>(n));
    for (Index v = 0; v < n; ++v) rows[static_cast<std::size_t>(v)] = v;
  }
  const auto m = static_cast<Index>(rows.size());
  DistanceMatrix base(m, m);
  parallel_for(0, rows.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const SsspTree tree = dijkstra(graph.adjacency(), rows[r]);
      for (Index c = 0; c < m; ++c) {
        base(static_cast<Index>(r), c) = tree.distance[static_cast<std::size_t>(rows[static_cast<std::size_t>(c)])];
      }
    }
  });
  // Both directions are shortest-path costs up to summation order; keep the smaller.
  const double scale = graph.distance_scale();
  DistanceMatrix out(m, m);
  for (Index i = 0; i < m; ++i) {
    out(i, i) = 0.0;
    for (Index j = i + 1; j < m; ++j) {
      const double d = scale * std::min(base(i, j), base(j, i));
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return out;
}

double path_cost(const WeightedEpsGraph& graph, std::span<const Index> path) {
  double total = 0.0;
  const auto& adj = graph.adjacency();
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Index u = path[k - 1];
    const Index v = path[k];
    double best = kInfinity;
    for (Index s = adj.offsets[static_cast<std::size_t>(u)]; s < adj.offsets[static_cast<std::size_t>(u) + 1]; ++s) {
      if (adj.targets[static_cast<std::size_t>(s)] == v) best = std::min(best, adj.weights[static_cast<std::size_t>(s)]);
    }
    if (best == kInfinity) return kInfinity;
    total += graph.distance_scale() * best;
  }
  return total;
}

}  // namespace genodesic

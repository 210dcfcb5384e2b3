#include "genodesic/graph.hpp"

#include "genodesic/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace genodesic {
namespace {

void validate_points(const PointCloud& points) {
  require(points.rows() >= 1 && points.cols() >= 1, ErrorCode::kInvalidInput, "graph needs at least one point");
  require(points.allFinite(), ErrorCode::kInvalidInput, "point coordinates must be finite");
}

double pair_distance(const PointCloud& points, Index i, Index j) {
  return (points.row(i) - points.row(j)).norm();
}

std::vector<Edge> flatten(std::vector<std::vector<Index>>& rows) {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  std::vector<Edge> edges;
  edges.reserve(total);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::sort(rows[i].begin(), rows[i].end());
    for (Index j : rows[i]) edges.push_back({static_cast<Index>(i), j});
  }
  return edges;
}

std::vector<Edge> brute_force_edges(const PointCloud& points, double epsilon) {
  const Index n = points.rows();
  std::vector<std::vector<Index>> rows(static_cast<std::size_t>(n));
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (Index j = static_cast<Index>(i) + 1; j < n; ++j) {
        if (pair_distance(points, static_cast<Index>(i), j) < epsilon) rows[i].push_back(j);
      }
    }
  });
  return flatten(rows);
}

std::vector<Edge> grid_edges(const PointCloud& points, double epsilon) {
  const Index n = points.rows();
  const Index d = points.cols();
  const Eigen::RowVectorXd origin = points.colwise().minCoeff();

  using Key = std::array<std::int64_t, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return static_cast<std::size_t>(k[0] * 73856093LL ^ k[1] * 19349663LL ^ k[2] * 83492791LL);
    }
  };
  auto cell_of = [&](Index i) {
    Key key{0, 0, 0};
    for (Index a = 0; a < d; ++a) {
      key[static_cast<std::size_t>(a)] = static_cast<std::int64_t>(std::floor((points(i, a) - origin[a]) / epsilon));
    }
    return key;
  };
  std::unordered_map<Key, std::vector<Index>, KeyHash> cells;
  for (Index i = 0; i < n; ++i) cells[cell_of(i)].push_back(i);

  std::vector<Key> offsets;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = (d >= 2 ? -1 : 0); dy <= (d >= 2 ? 1 : 0); ++dy) {
      for (int dz = (d >= 3 ? -1 : 0); dz <= (d >= 3 ? 1 : 0); ++dz) offsets.push_back({dx, dy, dz});
    }
  }

  std::vector<std::vector<Index>> rows(static_cast<std::size_t>(n));
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const Key home = cell_of(static_cast<Index>(i));
      for (const auto& off : offsets) {
        const Key probe{home[0] + off[0], home[1] + off[1], home[2] + off[2]};
        const auto it = cells.find(probe);
        if (it == cells.end()) continue;
        for (Index j : it->second) {
          if (j > static_cast<Index>(i) && pair_distance(points, static_cast<Index>(i), j) < epsilon) {
            rows[i].push_back(j);
          }
        }
      }
    }
  });
  return flatten(rows);
}

Index find_root(std::vector<Index>& parent, Index v) {
  while (parent[static_cast<std::size_t>(v)] != v) {
    auto& p = parent[static_cast<std::size_t>(v)];
    p = parent[static_cast<std::size_t>(p)];
    v = p;
  }
  return v;
}

}  // namespace

EpsGraph build_eps_graph(const PointCloud& points, double epsilon, EpsGraphMethod method) {
  validate_points(points);
  require(std::isfinite(epsilon) && epsilon > 0.0, ErrorCode::kInvalidInput, "epsilon must be > 0");
  if (method == EpsGraphMethod::kAuto) {
    method = points.rows() > kGridThreshold && points.cols() <= 3 ? EpsGraphMethod::kGrid : EpsGraphMethod::kBruteForce;
  }
  if (method == EpsGraphMethod::kGrid) {
    require(points.cols() <= 3, ErrorCode::kUnsupported, "grid construction supports d <= 3");
  }
  auto edges = method == EpsGraphMethod::kGrid ? grid_edges(points, epsilon) : brute_force_edges(points, epsilon);
  return EpsGraph{points, std::move(edges), FixedRadius{epsilon}};
}

EpsGraph build_adaptive_graph(const PointCloud& points, int min_neighbors) {
  validate_points(points);
  const Index n = points.rows();
  require(min_neighbors >= 1, ErrorCode::kInvalidInput, "min_neighbors must be >= 1");
  require(min_neighbors < n, ErrorCode::kInvalidInput, "min_neighbors must be smaller than the point count");

  // radius[i] is the distance to the k-th nearest other vertex.
  std::vector<double> radius(static_cast<std::size_t>(n));
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> dist;
    for (std::size_t i = lo; i < hi; ++i) {
      dist.clear();
      for (Index j = 0; j < n; ++j) {
        if (j != static_cast<Index>(i)) dist.push_back(pair_distance(points, static_cast<Index>(i), j));
      }
      auto kth = dist.begin() + (min_neighbors - 1);
      std::nth_element(dist.begin(), kth, dist.end());
      radius[i] = *kth;
    }
  });

  std::vector<std::vector<Index>> rows(static_cast<std::size_t>(n));
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (Index j = static_cast<Index>(i) + 1; j < n; ++j) {
        const double dij = pair_distance(points, static_cast<Index>(i), j);
        if (dij <= radius[i] || dij <= radius[static_cast<std::size_t>(j)]) rows[i].push_back(j);
      }
    }
  });
  return EpsGraph{points, flatten(rows), AdaptiveRadius{min_neighbors}};
}

std::vector<Index> connected_components(Index num_vertices, const std::vector<Edge>& edges) {
  std::vector<Index> parent(static_cast<std::size_t>(num_vertices));
  std::iota(parent.begin(), parent.end(), Index{0});
  for (const auto& e : edges) {
    const Index a = find_root(parent, e.i);
    const Index b = find_root(parent, e.j);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<Index> labels(static_cast<std::size_t>(num_vertices), kNoVertex);
  std::vector<Index> root_label(static_cast<std::size_t>(num_vertices), kNoVertex);
  Index next = 0;
  for (Index v = 0; v < num_vertices; ++v) {
    auto& slot = root_label[static_cast<std::size_t>(find_root(parent, v))];
    if (slot == kNoVertex) slot = next++;
    labels[static_cast<std::size_t>(v)] = slot;
  }
  return labels;
}

Index count_components(const std::vector<Index>& labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

Adjacency make_adjacency(Index num_vertices, const std::vector<Edge>& edges, const std::vector<double>& weights) {
  Adjacency adj;
  adj.offsets.assign(static_cast<std::size_t>(num_vertices) + 1, 0);
  for (const auto& e : edges) {
    ++adj.offsets[static_cast<std::size_t>(e.i) + 1];
    ++adj.offsets[static_cast<std::size_t>(e.j) + 1];
  }
  std::partial_sum(adj.offsets.begin(), adj.offsets.end(), adj.offsets.begin());
  adj.targets.resize(2 * edges.size());
  adj.weights.resize(2 * edges.size());
  std::vector<Index> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    for (auto [from, to] : {std::pair{e.i, e.j}, std::pair{e.j, e.i}}) {
      const auto slot = static_cast<std::size_t>(cursor[static_cast<std::size_t>(from)]++);
      adj.targets[slot] = to;
      adj.weights[slot] = weights[k];
    }
  }
  return adj;
}

WeightedEpsGraph::WeightedEpsGraph(EpsGraph graph, std::vector<double> weights, MetricParams params,
                                   std::shared_ptr<const DensityModel> density)
    : graph_(std::move(graph)),
      search_weights_(std::move(weights)),
      params_(params),
      density_(std::move(density)) {
  params_.validate();
  require(search_weights_.size() == graph_.edges.size(), ErrorCode::kInvalidInput,
          "weighted graph needs one weight per edge");
  for (double w : search_weights_) {
    require(std::isfinite(w) && w >= 0.0, ErrorCode::kInvalidInput, "edge weights must be finite and >= 0");
  }
  for (const auto& e : graph_.edges) {
    require(e.i >= 0 && e.i < e.j && e.j < graph_.num_vertices(), ErrorCode::kInvalidInput,
            "edges must satisfy 0 <= i < j < n");
  }
  adjacency_ = make_adjacency(graph_.num_vertices(), graph_.edges, search_weights_);
}

std::vector<double> WeightedEpsGraph::weights() const {
  std::vector<double> out(search_weights_.size());
  for (std::size_t e = 0; e < out.size(); ++e) out[e] = weight(e);
  return out;
}

WeightedEpsGraph WeightedEpsGraph::with_p0(double p0) const {
  WeightedEpsGraph out = *this;
  out.params_.p0 = p0;
  out.params_.validate();
  out.distance_scale_ = distance_scale_ * out.params_.scale() / params_.scale();
  return out;
}

WeightedEpsGraph weigh_graph(EpsGraph graph, std::shared_ptr<const DensityModel> density,
                             const MetricParams& params) {
  params.validate();
  require(density != nullptr, ErrorCode::kInvalidInput, "weigh_graph needs a density");
  require(density->dim() == graph.dim(), ErrorCode::kDimensionMismatch, "density and points differ in dimension");

  const auto n = static_cast<std::size_t>(graph.num_vertices());
  std::vector<double> vertex_density(n);
  parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t v = lo; v < hi; ++v) vertex_density[v] = (*density)(graph.points.row(static_cast<Index>(v)).transpose());
  });

  std::vector<double> weights(graph.edges.size());
  parallel_for(
      0, weights.size(),
      [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) {
          const auto& e = graph.edges[k];
          weights[k] = segment_length(*density, params, graph.points.row(e.i).transpose(),
                                        graph.points.row(e.j).transpose(), vertex_density[static_cast<std::size_t>(e.i)],
                                        vertex_density[static_cast<std::size_t>(e.j)]);
        }
      },
      256);
  return WeightedEpsGraph(std::move(graph), std::move(weights), params, std::move(density));
}

}  // namespace genodesic

#include "genodesic/shortest_path.hpp"
#include "path_oracle.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace genodesic;
using namespace genodesic::testing;

namespace {

std::shared_ptr<const DensityModel> flat() {
  return std::make_shared<const DensityModel>(DensityModel::uniform(1.0, Box::cube(2, -10, 10)));
}

std::shared_ptr<const DensityModel> ring() {
  return std::make_shared<const DensityModel>(make_ring_density(Box::cube(2, -1, 1), {}, kRingZ));
}

}  // namespace

TEST_CASE("single vertex") {
  auto g = weigh_graph(build_eps_graph(PointCloud::Zero(1, 2), 1.0), flat(), MetricParams{});
  auto tree = sssp(g, 0);
  CHECK(tree.distance == std::vector<double>{0.0});
  CHECK(tree.predecessor == std::vector<Index>{kNoVertex});
}

TEST_CASE("path graph") {
  PointCloud p(3, 1);
  p << 0, 1, 3;
  auto density = std::make_shared<const DensityModel>(DensityModel::uniform(1.0, Box::cube(1, -10, 10)));
  auto g = weigh_graph(build_eps_graph(p, 2.5), density, MetricParams{});
  REQUIRE(g.edges().size() == 2);
  auto tree = sssp(g, 0);
  CHECK(tree.distance[2] == 3.0);
  CHECK(tree.path_to(2) == std::vector<Index>{0, 1, 2});
  auto r = geodesic(g, 0, 2);
  CHECK(r.distance == 3.0);
  CHECK(r.path == std::vector<Index>{0, 1, 2});
  CHECK(r.coords.rows() == 3);
  CHECK(r.coords(2, 0) == 3.0);
}

TEST_CASE("dijkstra matches exhaustive simple-path enumeration") {
  std::mt19937_64 rng(100);
  for (int rep = 0; rep < 100; ++rep) {
    auto g = random_small_graph(rng);
    for (Index s = 0; s < g.num_vertices(); ++s) {
      const auto oracle = enumerate_simple_paths(g, s);
      const auto tree = sssp(g, s);
      for (Index v = 0; v < g.num_vertices(); ++v) {
        if (oracle[v] == kInfinity) {
          CHECK(tree.distance[v] == kInfinity);
        } else {
          CHECK(tree.distance[v] == doctest::Approx(oracle[v]).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("geodesic endpoints") {
  std::mt19937_64 rng(3);
  PointCloud p = random_cloud(rng, 60, 2);
  auto g = weigh_graph(build_eps_graph(p, 0.4), ring(), MetricParams{});
  SUBCASE("source equals target") {
    auto r = geodesic(g, 5, 5);
    CHECK(r.distance == 0.0);
    CHECK(r.path == std::vector<Index>{5});
  }
  SUBCASE("index validation") {
    CHECK_THROWS_AS(geodesic(g, 0, 60), Error);
    CHECK_THROWS_AS(sssp(g, -1), Error);
  }
}

TEST_CASE("disconnected endpoints") {
  PointCloud p(4, 2);
  p << 0, 0, 0.1, 0, 0.9, 0.9, 0.9, 0.8;
  auto g = weigh_graph(build_eps_graph(p, 0.2), ring(), MetricParams{});
  auto r = geodesic(g, 0, 3);
  CHECK_FALSE(r.connected());
  CHECK(r.distance == kInfinity);
  CHECK(r.path.empty());
  auto d = all_pairs_distances(g);
  CHECK(d(0, 3) == kInfinity);
  CHECK(d(0, 1) < kInfinity);
}

TEST_CASE("geodesic invariants") {
  std::mt19937_64 rng(4);
  PointCloud p = random_cloud(rng, 300, 2);
  auto g = weigh_graph(build_eps_graph(p, 0.2), ring(), MetricParams{});
  for (int rep = 0; rep < 40; ++rep) {
    const Index s = rng() % 300, t = rng() % 300;
    auto r = geodesic(g, s, t);
    CHECK(r.connected() == !r.path.empty());
    if (!r.connected()) continue;
    CHECK(r.path.front() == s);
    CHECK(r.path.back() == t);
    CHECK(path_cost(g, r.path) == doctest::Approx(r.distance).epsilon(1e-10));
    double recomputed = 0;
    for (std::size_t k = 1; k < r.path.size(); ++k) {
      recomputed += segment_length(*g.density(), g.params(), p.row(r.path[k - 1]).transpose(),
                                   p.row(r.path[k]).transpose());
    }
    CHECK(recomputed == doctest::Approx(r.distance).epsilon(1e-10));
  }
}

TEST_CASE("collinear points tie the direct edge") {
  PointCloud p(3, 2);
  const double s = 0.25;
  p << 0, 0, s, 0, 2 * s, 0;
  auto g = weigh_graph(build_eps_graph(p, 1.0), flat(), MetricParams{});
  auto d = all_pairs_distances(g);
  CHECK(d(0, 2) == 2 * s);
}

TEST_CASE("all pairs is a metric on finite entries") {
  std::mt19937_64 rng(5);
  PointCloud p = random_cloud(rng, 120, 2);
  auto g = weigh_graph(build_eps_graph(p, 0.3), ring(), MetricParams{});
  auto d = all_pairs_distances(g);
  const Index n = d.rows();
  for (Index i = 0; i < n; ++i) {
    CHECK(d(i, i) == 0.0);
    for (Index j = 0; j < n; ++j) {
      CHECK(d(i, j) == d(j, i));
      CHECK(d(i, j) >= 0.0);
      if (i != j) CHECK(d(i, j) > 0.0);
    }
  }
  double worst = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        if (d(i, j) < kInfinity && d(j, k) < kInfinity) worst = std::max(worst, d(i, k) - d(i, j) - d(j, k));
  CHECK(worst <= 1e-9);
}

TEST_CASE("subset rows match the full matrix") {
  std::mt19937_64 rng(6);
  PointCloud p = random_cloud(rng, 80, 2);
  auto g = weigh_graph(build_eps_graph(p, 0.35), ring(), MetricParams{});
  auto full = all_pairs_distances(g);
  std::vector<Index> subset{7, 3, 50};
  auto part = all_pairs_distances(g, std::span<const Index>(subset));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(part(a, b) == full(subset[a], subset[b]));
}

TEST_CASE("p0 scales distances and keeps paths") {
  std::mt19937_64 rng(7);
  PointCloud p = random_cloud(rng, 200, 2);
  auto g = weigh_graph(build_eps_graph(p, 0.25), ring(), MetricParams{});
  auto g7 = g.with_p0(7.0);
  const double factor = (7.0 + 0.01) / (1.0 + 0.01);
  for (int rep = 0; rep < 30; ++rep) {
    const Index s = rng() % 200, t = rng() % 200;
    auto a = geodesic(g, s, t), b = geodesic(g7, s, t);
    CHECK(a.path == b.path);
    if (a.connected()) CHECK(b.distance == doctest::Approx(factor * a.distance).epsilon(1e-12));
  }
}

TEST_CASE("duplicate points are at distance zero") {
  PointCloud p(3, 2);
  p << 0.2, 0.2, 0.2, 0.2, 0.3, 0.2;
  auto g = weigh_graph(build_eps_graph(p, 0.5), ring(), MetricParams{});
  auto d = all_pairs_distances(g);
  CHECK(d(0, 1) == 0.0);
  CHECK(d(0, 2) == d(1, 2));
}

TEST_CASE("large lambda approaches Euclidean graph distances") {
  std::mt19937_64 rng(8);
  PointCloud p = random_cloud(rng, 150, 2);
  auto topo = build_eps_graph(p, 0.3);
  std::vector<double> euclid;
  for (const auto& e : topo.edges) euclid.push_back((p.row(e.i) - p.row(e.j)).norm());
  WeightedEpsGraph euclidean(topo, euclid, MetricParams{.lambda = 1.0, .p0 = 1.0}, flat());
  auto reference = all_pairs_distances(euclidean);
  double prev = kInfinity;
  for (double lambda : {1.0, 1e2, 1e4, 1e6}) {
    auto g = weigh_graph(topo, ring(), MetricParams{.lambda = lambda});
    auto d = all_pairs_distances(g);
    double gap = 0;
    for (Index i = 0; i < d.rows(); ++i)
      for (Index j = 0; j < d.cols(); ++j)
        if (reference(i, j) < kInfinity) gap = std::max(gap, std::abs(d(i, j) - reference(i, j)));
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev < 1e-5);
}

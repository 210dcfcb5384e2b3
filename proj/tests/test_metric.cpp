#include "genodesic/metric.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace genodesic;
using namespace genodesic::testing;

namespace {

DensityModel ring() { return make_ring_density(Box::cube(2, -1, 1), {}, kRingZ); }

DensityModel smooth_mixture() {
  PointCloud c(3, 2);
  c << -0.4, 0.1, 0.5, -0.3, 0.0, 0.6;
  return DensityModel::gaussian_mixture(c, 0.09, Eigen::Vector3d(0.5, 0.3, 0.2));
}

}  // namespace

TEST_CASE("conformal factor") {
  auto uni = DensityModel::uniform(1.0, Box::cube(2, -1, 1));
  MetricParams p{.lambda = 0.37, .p0 = 1.0};
  CHECK(conformal_factor(uni, p, Eigen::Vector2d(0.2, 0.1)) == 1.0);
  CHECK(conformal_factor(0.0, MetricParams{.lambda = 1.0, .p0 = 1.0}) == 2.0);
  const double big = conformal_factor(5.0, MetricParams{.lambda = 1e6, .p0 = 1.0});
  CHECK(big == doctest::Approx((1 + 1e6) / (5 + 1e6)).epsilon(1e-15));
  CHECK(std::abs(big - 1.0) < 1e-5);
  CHECK(conformal_factor(0.5f, MetricParams{.lambda = 1.0, .p0 = 1.0}) == doctest::Approx(2.0f / 1.5f));
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(MetricParams{}.validate());
  CHECK_THROWS_AS((MetricParams{.lambda = 0.0}.validate()), Error);
  CHECK_THROWS_AS((MetricParams{.lambda = -1.0}.validate()), Error);
  CHECK_THROWS_AS((MetricParams{.p0 = 0.0}.validate()), Error);
  CHECK_THROWS_AS((MetricParams{.quad_points = 0}.validate()), Error);
  CHECK(parse_quadrature_rule("trapezoid") == QuadratureRule::kTrapezoid);
  CHECK(parse_quadrature_rule("left-riemann") == QuadratureRule::kLeftRiemann);
  CHECK_THROWS_AS(parse_quadrature_rule("simpson"), Error);
}

TEST_CASE("segment length under a density equal to p0 is Euclidean") {
  auto uni = DensityModel::uniform(1.0, Box::cube(2, -10, 10));
  for (int k : {1, 2, 10, 33}) {
    for (auto rule : {QuadratureRule::kTrapezoid, QuadratureRule::kLeftRiemann}) {
      MetricParams p{.lambda = 0.01, .p0 = 1.0, .quad_points = k, .rule = rule};
      CHECK(segment_length(uni, p, Eigen::Vector2d(0, 0), Eigen::Vector2d(3, 4)) == 5.0);
    }
  }
}

TEST_CASE("zero-length segment") {
  auto model = ring();
  CHECK(segment_length(model, MetricParams{}, Eigen::Vector2d(0.3, 0.2), Eigen::Vector2d(0.3, 0.2)) == 0.0);
}

TEST_CASE("ring chord matches the dense quadrature oracle") {
  auto model = ring();
  const Eigen::Vector2d a(-1, 0), b(1, 0);
  const double k10 = segment_length(model, MetricParams{}, a, b);
  CHECK(k10 == doctest::Approx(kRingChordK10).epsilon(1e-12));
  CHECK(std::abs(k10 - kRingChordDense) / kRingChordDense < 0.02);
}

TEST_CASE("trapezoid is exactly symmetric") {
  std::mt19937_64 rng(2);
  auto model = ring();
  for (int rep = 0; rep < 500; ++rep) {
    PointCloud pts = random_cloud(rng, 2, 2);
    MetricParams p{.quad_points = 1 + static_cast<int>(rng() % 40)};
    const Eigen::VectorXd x = pts.row(0).transpose(), y = pts.row(1).transpose();
    CHECK(segment_length(model, p, x, y) == segment_length(model, p, y, x));
  }
}

TEST_CASE("left-riemann asymmetry is bounded by the gradient") {
  std::mt19937_64 rng(4);
  auto model = ring();
  // |grad p| <= sharpness / Z, so |grad f| <= (p0 + lambda) * (10 / Z) / lambda^2.
  MetricParams p{.lambda = 1.0, .p0 = 1.0, .quad_points = 10, .rule = QuadratureRule::kLeftRiemann};
  const double grad = p.scale() * (10.0 / kRingZ) / (p.lambda * p.lambda);
  bool any_asymmetric = false;
  for (int rep = 0; rep < 300; ++rep) {
    PointCloud pts = random_cloud(rng, 2, 2);
    const Eigen::VectorXd x = pts.row(0).transpose(), y = pts.row(1).transpose();
    const double len = (y - x).norm();
    const double gap = std::abs(segment_length(model, p, x, y) - segment_length(model, p, y, x));
    CHECK(gap <= grad * len * len / p.quad_points * (1 + 1e-12));
    any_asymmetric = any_asymmetric || gap > 0;
  }
  CHECK(any_asymmetric);
}

TEST_CASE("segment length bounds") {
  std::mt19937_64 rng(9);
  auto model = ring();
  const MetricParams p{};
  for (int rep = 0; rep < 300; ++rep) {
    PointCloud pts = random_cloud(rng, 2, 2);
    const Eigen::VectorXd x = pts.row(0).transpose(), y = pts.row(1).transpose();
    const double len = (y - x).norm();
    double pmax = 0;
    for (int i = 0; i <= p.quad_points; ++i) {
      const double t = double(i) / p.quad_points;
      pmax = std::max(pmax, eval_density(model, ((1 - t) * x + t * y).eval()));
    }
    const double l = segment_length(model, p, x, y);
    CHECK(l >= p.scale() / (pmax + p.lambda) * len * (1 - 1e-12));
    CHECK(l <= p.scale() / p.lambda * len * (1 + 1e-12));
  }
}

TEST_CASE("trapezoid converges at second order on a smooth density") {
  std::mt19937_64 rng(21);
  auto model = smooth_mixture();
  std::vector<double> ratios;
  for (int rep = 0; rep < 30; ++rep) {
    PointCloud pts = random_cloud(rng, 2, 2);
    const Eigen::VectorXd x = pts.row(0).transpose(), y = pts.row(1).transpose();
    const double oracle = segment_length(model, MetricParams{.lambda = 0.1, .quad_points = 4096}, x, y);
    for (int k : {8, 16, 32}) {
      const double e1 = std::abs(segment_length(model, MetricParams{.lambda = 0.1, .quad_points = k}, x, y) - oracle);
      const double e2 =
          std::abs(segment_length(model, MetricParams{.lambda = 0.1, .quad_points = 2 * k}, x, y) - oracle);
      if (e2 > 0) ratios.push_back(e1 / e2);
    }
  }
  std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
  const double median = ratios[ratios.size() / 2];
  CHECK(median >= 3.0);
  CHECK(median <= 5.0);
}

TEST_CASE("p0 rescales lengths by one constant") {
  std::mt19937_64 rng(8);
  auto model = ring();
  const MetricParams a{.lambda = 0.01, .p0 = 1.0}, b{.lambda = 0.01, .p0 = 7.0};
  const double factor = b.scale() / a.scale();
  for (int rep = 0; rep < 200; ++rep) {
    PointCloud pts = random_cloud(rng, 2, 2);
    const Eigen::VectorXd x = pts.row(0).transpose(), y = pts.row(1).transpose();
    CHECK(segment_length(model, b, x, y) == doctest::Approx(factor * segment_length(model, a, x, y)).epsilon(1e-12));
  }
}

TEST_CASE("euclidean limit gap") {
  std::mt19937_64 rng(12);
  std::vector<Segment> segments;
  for (int i = 0; i < 20; ++i) {
    PointCloud pts = random_cloud(rng, 2, 2);
    segments.push_back({pts.row(0).transpose(), pts.row(1).transpose()});
  }
  SUBCASE("uniform density has no gap") {
    auto uni = DensityModel::uniform(1.0, Box::cube(2, -1, 1));
    for (double lambda : {1e-3, 1.0, 1e4}) {
      CHECK(euclidean_limit_gap(uni, MetricParams{.lambda = lambda}, segments) == 0.0);
    }
  }
  SUBCASE("ring gap shrinks with lambda") {
    auto model = ring();
    double prev = kInfinity;
    for (double lambda : {1.0, 1e2, 1e4, 1e6}) {
      const double gap = euclidean_limit_gap(model, MetricParams{.lambda = lambda}, segments);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev < 1e-5);
  }
  SUBCASE("zero-length segment") {
    std::vector<Segment> one{{Eigen::Vector2d(0.1, 0.2), Eigen::Vector2d(0.1, 0.2)}};
    CHECK(euclidean_limit_gap(ring(), MetricParams{}, one) == 0.0);
  }
}

TEST_CASE("composite sum is mirror exact") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> v(2 + rng() % 30);
    for (auto& x : v) x = u(rng);
    std::vector<double> r(v.rbegin(), v.rend());
    CHECK(composite_sum<double>(v, QuadratureRule::kTrapezoid) == composite_sum<double>(r, QuadratureRule::kTrapezoid));
  }
}

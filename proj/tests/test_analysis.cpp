#include "genodesic/analysis.hpp"
#include "genodesic/io.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace genodesic;

namespace {

DistanceMatrix two_blocks(int a, int b, double across = kInfinity) {
  DistanceMatrix d = DistanceMatrix::Zero(a + b, a + b);
  d.topRightCorner(a, b).setConstant(across);
  d.bottomLeftCorner(b, a).setConstant(across);
  return d;
}

std::vector<int> block_labels(int a, int b) {
  std::vector<int> l(a + b, 0);
  for (int i = a; i < a + b; ++i) l[i] = 1;
  return l;
}

}  // namespace

TEST_CASE("affinity values") {
  DistanceMatrix d(3, 3);
  d << 0, 2, kInfinity, 2, 0, 0, kInfinity, 0, 0;
  auto a = affinity(d, 2.0);
  CHECK(a.values(0, 0) == 1.0);
  CHECK(a.values(1, 2) == 1.0);
  CHECK(a.values(0, 2) == 0.0);
  CHECK(a.values(0, 1) == doctest::Approx(std::exp(-1.0)));
  CHECK(a.tau == 2.0);
  CHECK_THROWS_AS(affinity(d, 0.0), Error);
  CHECK_THROWS_AS(affinity(d, -1.0), Error);
}

TEST_CASE("affinity monotonicity") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 5.0);
  for (int rep = 0; rep < 200; ++rep) {
    DistanceMatrix d(2, 2), e(2, 2);
    const double x = u(rng), y = x + u(rng);
    d << 0, x, x, 0;
    e << 0, y, y, 0;
    const double tau = u(rng);
    CHECK(affinity(d, tau).values(0, 1) > affinity(e, tau).values(0, 1));
    CHECK(affinity(d, tau).values(0, 1) < affinity(d, tau * 1.5).values(0, 1));
    const double v = affinity(d, tau).values(0, 1);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("nmi") {
  std::vector<int> a{0, 0, 1, 1}, b{0, 1, 0, 1}, c{1, 1, 0, 0};
  CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nmi(a, c) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nmi(a, b) == doctest::Approx(0.0));
  std::vector<int> shorter{0, 1};
  CHECK_THROWS_AS(nmi(a, shorter), Error);

  SUBCASE("bounded, symmetric, permutation invariant") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 200; ++rep) {
      const int n = 1 + rng() % 40;
      std::vector<int> x(n), y(n), py(n);
      for (int i = 0; i < n; ++i) {
        x[i] = rng() % 3;
        y[i] = rng() % 4;
        py[i] = (y[i] + 1) % 4;
      }
      const double v = nmi(x, y);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
      CHECK(v == doctest::Approx(nmi(y, x)).epsilon(1e-14));
      CHECK(v == doctest::Approx(nmi(x, py)).epsilon(1e-14));
    }
  }
  SUBCASE("arithmetic-mean normalization") {
    // H(a) = ln 2, H(d) = ln 3 - (1/3) ln... computed by hand: labels d split one block further.
    std::vector<int> x{0, 0, 0, 1, 1, 1}, d{0, 0, 1, 2, 2, 2};
    const double hx = std::log(2.0);
    const double hd = -(2.0 / 6 * std::log(2.0 / 6) + 1.0 / 6 * std::log(1.0 / 6) + 3.0 / 6 * std::log(3.0 / 6));
    const double mi = hx;  // d refines x
    CHECK(nmi(x, d) == doctest::Approx(mi / ((hx + hd) / 2)).epsilon(1e-14));
  }
}

TEST_CASE("spectral clustering recovers ideal blocks") {
  auto a = affinity(two_blocks(7, 5), 1.0);
  auto r = spectral_cluster(a, 2, 7);
  CHECK(r.k == 2);
  CHECK(nmi(r.labels, block_labels(7, 5)) == doctest::Approx(1.0));
  CHECK(r.warnings.empty());
}

TEST_CASE("spectral clustering is deterministic") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  Eigen::MatrixXd pts(40, 2);
  for (int i = 0; i < 40; ++i) pts.row(i) << u(rng) + (i < 20 ? 0 : 1.5), u(rng);
  DistanceMatrix d(40, 40);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) d(i, j) = (pts.row(i) - pts.row(j)).norm();
  auto a = affinity(d, 0.3);
  auto r1 = spectral_cluster(a, 3, 11), r2 = spectral_cluster(a, 3, 11);
  CHECK(r1.labels == r2.labels);
  for (int l : r1.labels) {
    CHECK(l >= 0);
    CHECK(l < 3);
  }
}

TEST_CASE("identity affinity is degenerate") {
  AffinityMatrix a{Eigen::MatrixXd::Identity(6, 6), 1.0};
  auto r = spectral_cluster(a, 2, 0);
  CHECK_FALSE(r.warnings.empty());
  REQUIRE(r.labels.size() == 6);
  for (int l : r.labels) {
    CHECK(l >= 0);
    CHECK(l < 2);
  }
}

TEST_CASE("isolated points are pooled") {
  DistanceMatrix d = two_blocks(6, 6, 0.5);
  d.conservativeResize(13, 13);
  d.row(12).setConstant(kInfinity);
  d.col(12).setConstant(kInfinity);
  d(12, 12) = 0.0;
  auto r = spectral_cluster(affinity(d, 1.0), 2, 0);
  CHECK(r.labels[12] == 1);
  for (int i = 0; i < 12; ++i) CHECK(r.labels[i] == 0);
}

TEST_CASE("spectral preconditions") {
  AffinityMatrix a{Eigen::MatrixXd::Ones(4, 4), 1.0};
  CHECK_THROWS_AS(spectral_cluster(a, 1, 0), Error);
  CHECK_THROWS_AS(spectral_cluster(a, 5, 0), Error);
}

TEST_CASE("tau sweep on ideal blocks") {
  auto taus = parse_range("1e-3:1e3:log13");
  REQUIRE(taus.size() == 13);
  CHECK(taus.front() == doctest::Approx(1e-3));
  CHECK(taus.back() == doctest::Approx(1e3));
  auto rows = tau_sweep(two_blocks(10, 10), taus, 2, block_labels(10, 10), 1);
  REQUIRE(rows.size() == 13);
  for (const auto& row : rows) CHECK(row.nmi == doctest::Approx(1.0));
}

TEST_CASE("range parsing") {
  CHECK(parse_range("0:1:lin3") == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(parse_range("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
  CHECK_THROWS_AS(parse_range("1:2:cubic3"), Error);
  CHECK_THROWS_AS(parse_range(""), Error);
}

TEST_CASE("distance csv round trip gives identical affinities") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 3);
  DistanceMatrix d(12, 12);
  for (int i = 0; i < 12; ++i) {
    d(i, i) = 0;
    for (int j = i + 1; j < 12; ++j) d(i, j) = d(j, i) = (j == 11 ? kInfinity : u(rng));
  }
  auto back = io::parse_matrix_csv(io::matrix_to_csv(d));
  CHECK(back == d);
  auto a = affinity(d, 0.7), b = affinity(back, 0.7);
  CHECK(a.values == b.values);
  CHECK(spectral_cluster(a, 2, 3).labels == spectral_cluster(b, 2, 3).labels);
}

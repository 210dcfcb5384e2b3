#include "genodesic/io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

#include <unistd.h>

using namespace genodesic;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidInput;
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("genodesic_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("real formatting") {
  CHECK(io::format_real(0.1) == "0.10000000000000001");
  CHECK(io::format_real(2.0) == "2");
  CHECK(io::format_real(kInfinity) == "inf");
  CHECK(io::format_real(-1.5e-300) == "-1.5000000000000001e-300");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = v;
    CHECK(io::parse_matrix_csv(io::matrix_to_csv(m))(0, 0) == v);
  }
}

TEST_CASE("point csv") {
  auto p = io::parse_points_csv("1,2\n3.5, -4\n\n");
  REQUIRE(p.rows() == 2);
  CHECK(p(1, 0) == 3.5);
  CHECK(p(1, 1) == -4.0);
  CHECK(io::parse_points_csv("x,y\n1,2\n", true).rows() == 1);
  CHECK(io::parse_points_csv(io::points_to_csv(p)) == p);
  CHECK(code_of([] { io::parse_points_csv("x,y\n1,2\n"); }) == ErrorCode::kMalformedCsv);
  CHECK(code_of([] { io::parse_points_csv("1,2\n3\n"); }) == ErrorCode::kMalformedCsv);
  CHECK(code_of([] { io::parse_points_csv("1,nan\n"); }) == ErrorCode::kMalformedCsv);
  CHECK(code_of([] { io::parse_points_csv("1,inf\n"); }) == ErrorCode::kMalformedCsv);
  CHECK(code_of([] { io::parse_points_csv(""); }) == ErrorCode::kMalformedCsv);
}

TEST_CASE("matrix csv keeps infinities") {
  Eigen::MatrixXd d(2, 2);
  d << 0, kInfinity, kInfinity, 0;
  const auto text = io::matrix_to_csv(d);
  CHECK(text == "0,inf\ninf,0\n");
  CHECK(io::parse_matrix_csv(text) == d);
  CHECK(code_of([] { io::parse_matrix_csv("0,1\n1,nan\n"); }) == ErrorCode::kMalformedCsv);
}

TEST_CASE("labels csv") {
  CHECK(io::parse_labels_csv("0\n1\n1\n") == std::vector<int>{0, 1, 1});
  CHECK(io::labels_to_csv({2, 0}) == "2\n0\n");
  CHECK(code_of([] { io::parse_labels_csv("0\nx\n"); }) == ErrorCode::kMalformedCsv);
}

TEST_CASE("density json round trip") {
  PointCloud c(2, 2);
  c << 0.1, 0.2, -0.3, 0.4;
  std::vector<DensityModel> models{
      DensityModel::uniform(2.5, Box::cube(2, -1, 1)),
      make_ring_density(Box::cube(2, -1, 1), {}, testing::kRingZ),
      DensityModel::gaussian_mixture(c, 0.01, Eigen::Vector2d(0.25, 0.75)),
  };
  std::mt19937_64 rng(2);
  for (const auto& m : models) {
    auto back = io::density_from_json(io::parse_json(io::density_to_json(m).dump()));
    CHECK(back.domain().lo == m.domain().lo);
    CHECK(back.domain().hi == m.domain().hi);
    auto probes = testing::random_cloud(rng, 20, 2);
    for (Index i = 0; i < 20; ++i) CHECK(back(probes.row(i).transpose()) == m(probes.row(i).transpose()));
  }
  auto j = io::density_to_json(models[2]);
  CHECK(j["kind"] == "gmm");
  CHECK(j["sigma2"] == 0.01);
  CHECK(code_of([] { io::density_from_json(io::parse_json(R"({"kind":"cone"})")); }) == ErrorCode::kMalformedJson);
  CHECK(code_of([] { io::density_from_json(io::parse_json(R"({"kind":"gmm"})")); }) == ErrorCode::kMalformedJson);
  CHECK(code_of([] { io::parse_json("{oops"); }) == ErrorCode::kMalformedJson);
}

TEST_CASE("graph json round trip") {
  std::mt19937_64 rng(3);
  auto density = std::make_shared<const DensityModel>(make_ring_density(Box::cube(2, -1, 1), {}, testing::kRingZ));
  auto g = weigh_graph(build_eps_graph(testing::random_cloud(rng, 50, 2), 0.4), density,
                       MetricParams{.lambda = 0.02, .p0 = 2.0, .quad_points = 7});
  auto j = io::graph_to_json(g);
  CHECK(j["dim"] == 2);
  CHECK(j["params"]["K"] == 7);
  CHECK(j["params"]["eps"] == 0.4);
  auto back = io::graph_from_json(io::parse_json(j.dump()));
  CHECK(back.points() == g.points());
  CHECK(back.edges() == g.edges());
  CHECK(back.params().p0 == 2.0);
  for (std::size_t e = 0; e < g.edges().size(); ++e) CHECK(back.weight(e) == doctest::Approx(g.weight(e)).epsilon(1e-15));
  j["dim"] = 3;
  CHECK(code_of([&] { io::graph_from_json(j); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("path json") {
  GeodesicResult r;
  auto j = io::path_to_json(r);
  CHECK(j["distance"] == "inf");
  CHECK(j["indices"].empty());
  r.distance = 0.0;
  r.path = {0};
  r.coords = PointCloud::Zero(1, 2);
  j = io::path_to_json(r);
  CHECK(j["distance"] == 0.0);
  CHECK(j["indices"] == nlohmann::json::array({0}));
}

TEST_CASE("atomic writes") {
  const auto dir = scratch_dir();
  const auto target = dir / "out.csv";
  io::write_atomic(target, "first\n");
  io::write_atomic(target, "second\n");
  CHECK(io::read_text(target) == "second\n");
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path() == target);
  CHECK(code_of([&] { io::write_atomic(dir / "missing" / "x.csv", "data"); }) == ErrorCode::kIo);
  CHECK_FALSE(fs::exists(dir / "missing" / "x.csv"));
  CHECK(code_of([&] { io::read_text(dir / "nope.csv"); }) == ErrorCode::kIo);
  fs::remove_all(dir);
}

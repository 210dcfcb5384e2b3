#include "genodesic/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace genodesic::io {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || end != token.data() + token.size() || std::isnan(value)) {
    fail(ErrorCode::kMalformedCsv, "line " + std::to_string(line) + ": cannot parse '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::vector<double>> parse_rows(const std::string& text, bool skip_header) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (skip_header && number == 1) continue;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_real(rest.substr(0, comma), number));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(ErrorCode::kMalformedCsv, "line " + std::to_string(number) + ": expected " +
                                         std::to_string(rows.front().size()) + " columns, found " +
                                         std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto cols = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  Eigen::MatrixXd m(static_cast<Index>(rows.size()), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Index c = 0; c < cols; ++c) m(static_cast<Index>(r), c) = rows[r][static_cast<std::size_t>(c)];
  }
  return m;
}

json real_to_json(double v) { return std::isinf(v) ? json(v > 0 ? "inf" : "-inf") : json(v); }

double real_from_json(const json& j) {
  if (j.is_string()) {
    if (j == "inf") return kInfinity;
    if (j == "-inf") return -kInfinity;
  }
  if (!j.is_number()) fail(ErrorCode::kMalformedJson, "expected a number, found " + j.dump());
  return j.get<double>();
}

json matrix_rows_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(real_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

PointCloud matrix_rows_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::kMalformedJson, std::string(what) + " must be a nonempty array");
  const std::size_t cols = j.front().size();
  PointCloud m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      fail(ErrorCode::kMalformedJson, std::string(what) + " rows must have equal length");
    }
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = real_from_json(j[r][c]);
  }
  return m;
}

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::kMalformedJson, std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = real_from_json(j[i]);
  return v;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(real_to_json(v[i]));
  return out;
}

json box_to_json(const Box& box) { return {{"lo", vector_to_json(box.lo)}, {"hi", vector_to_json(box.hi)}}; }

Box box_from_json(const json& j) {
  return Box{vector_from_json(j.at("lo"), "domain.lo"), vector_from_json(j.at("hi"), "domain.hi")};
}

}  // namespace

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, end);
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto temp = path;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kIo, "cannot open '" + temp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) fail(ErrorCode::kIo, "failed writing '" + temp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    fail(ErrorCode::kIo, "cannot move output into '" + path.string() + "'");
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

PointCloud parse_points_csv(const std::string& text, bool skip_header) {
  const auto rows = parse_rows(text, skip_header);
  if (rows.empty()) fail(ErrorCode::kMalformedCsv, "point file has no rows");
  PointCloud points = rows_to_matrix(rows);
  if (!points.allFinite()) fail(ErrorCode::kMalformedCsv, "point coordinates must be finite");
  return points;
}

PointCloud read_points_csv(const std::filesystem::path& path, bool skip_header) {
  return parse_points_csv(read_text(path), skip_header);
}

std::string points_to_csv(const PointCloud& points) { return matrix_to_csv(points); }

Eigen::MatrixXd parse_matrix_csv(const std::string& text) { return rows_to_matrix(parse_rows(text, false)); }

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) { return parse_matrix_csv(read_text(path)); }

std::string matrix_to_csv(const Eigen::MatrixXd& matrix) {
  std::string out;
  for (Index r = 0; r < matrix.rows(); ++r) {
    for (Index c = 0; c < matrix.cols(); ++c) {
      if (c) out += ',';
      out += format_real(matrix(r, c));
    }
    out += '\n';
  }
  return out;
}

std::vector<int> parse_labels_csv(const std::string& text) {
  std::vector<int> labels;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto token = trim(line);
    if (token.empty()) continue;
    int value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size()) {
      fail(ErrorCode::kMalformedCsv, "line " + std::to_string(number) + ": bad label '" + std::string(token) + "'");
    }
    labels.push_back(value);
  }
  return labels;
}

std::vector<int> read_labels_csv(const std::filesystem::path& path) { return parse_labels_csv(read_text(path)); }

std::string labels_to_csv(const std::vector<int>& labels) {
  std::string out;
  for (int l : labels) out += std::to_string(l) + '\n';
  return out;
}

json density_to_json(const DensityModel& model) {
  json j = std::visit(Overloaded{
                          [](const UniformDensity& u) { return json{{"kind", "uniform"}, {"value", u.value}}; },
                          [](const RingDensity& r) {
                            return json{{"kind", "ring"},
                                        {"scale", r.scale},
                                        {"radius", r.radius},
                                        {"sharpness", r.sharpness},
                                        {"Z", r.normalization}};
                          },
                          [](const GaussianMixture& g) {
                            return json{{"kind", "gmm"},
                                        {"sigma2", g.sigma2},
                                        {"centers", matrix_rows_to_json(g.centers)},
                                        {"weights", vector_to_json(g.weights)}};
                          },
                      },
                      model.kind());
  j["domain"] = box_to_json(model.domain());
  return j;
}

DensityModel density_from_json(const json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gmm") {
      PointCloud centers = matrix_rows_from_json(j.at("centers"), "centers");
      const double sigma2 = real_from_json(j.at("sigma2"));
      Eigen::VectorXd weights = vector_from_json(j.at("weights"), "weights");
      if (j.contains("domain")) {
        return DensityModel(GaussianMixture{std::move(centers), sigma2, std::move(weights)},
                            box_from_json(j.at("domain")));
      }
      return DensityModel::gaussian_mixture(std::move(centers), sigma2, std::move(weights));
    }
    if (kind == "ring") {
      RingDensity ring;
      ring.scale = j.value("scale", 1.0);
      ring.radius = j.value("radius", 0.75);
      ring.sharpness = j.value("sharpness", 10.0);
      ring.normalization = real_from_json(j.at("Z"));
      return DensityModel(ring, box_from_json(j.at("domain")));
    }
    if (kind == "uniform") return DensityModel::uniform(j.value("value", 1.0), box_from_json(j.at("domain")));
    fail(ErrorCode::kMalformedJson, "unknown density kind '" + kind + "'");
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedJson, std::string("density JSON: ") + e.what());
  }
}

json graph_to_json(const WeightedEpsGraph& graph) {
  json edges = json::array();
  for (std::size_t k = 0; k < graph.edges().size(); ++k) {
    const auto& e = graph.edges()[k];
    edges.push_back(json::array({e.i, e.j, graph.weight(k)}));
  }
  const auto& p = graph.params();
  json params = {{"lambda", p.lambda},
                 {"p0", p.p0},
                 {"K", p.quad_points},
                 {"quad_rule", std::string(quadrature_rule_name(p.rule))}};
  std::visit(Overloaded{
                 [&](const FixedRadius& r) { params["eps"] = r.epsilon; },
                 [&](const AdaptiveRadius& r) { params["knn"] = r.min_neighbors; },
             },
             graph.graph().neighborhood);
  return {{"dim", graph.points().cols()},
          {"points", matrix_rows_to_json(graph.points())},
          {"edges", std::move(edges)},
          {"params", std::move(params)},
          {"density", density_to_json(*graph.density())}};
}

WeightedEpsGraph graph_from_json(const json& j) {
  try {
    PointCloud points = matrix_rows_from_json(j.at("points"), "points");
    if (j.contains("dim") && j.at("dim").get<Index>() != points.cols()) {
      fail(ErrorCode::kDimensionMismatch, "graph 'dim' does not match its points");
    }
    const json& pj = j.at("params");
    MetricParams params;
    params.lambda = real_from_json(pj.at("lambda"));
    params.p0 = real_from_json(pj.at("p0"));
    params.quad_points = pj.at("K").get<int>();
    params.rule = parse_quadrature_rule(pj.value("quad_rule", std::string("trapezoid")));
    params.validate();
    Neighborhood neighborhood = pj.contains("knn") ? Neighborhood{AdaptiveRadius{pj.at("knn").get<int>()}}
                                                   : Neighborhood{FixedRadius{real_from_json(pj.at("eps"))}};
    std::vector<Edge> edges;
    std::vector<double> weights;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) fail(ErrorCode::kMalformedJson, "edges must be [i, j, w] triples");
      Index a = e[0].get<Index>();
      Index b = e[1].get<Index>();
      if (a > b) std::swap(a, b);
      edges.push_back({a, b});
      weights.push_back(real_from_json(e[2]));
    }
    auto density = std::make_shared<const DensityModel>(density_from_json(j.at("density")));
    if (density->dim() != points.cols()) fail(ErrorCode::kDimensionMismatch, "graph density and points differ in dimension");
    return WeightedEpsGraph(EpsGraph{std::move(points), std::move(edges), neighborhood}, std::move(weights), params,
                            std::move(density));
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedJson, std::string("graph JSON: ") + e.what());
  }
}

json path_to_json(const GeodesicResult& result) {
  return {{"distance", real_to_json(result.distance)},
          {"indices", result.path},
          {"coords", matrix_rows_to_json(result.coords)}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedJson, e.what());
  }
}

}  // namespace genodesic::io

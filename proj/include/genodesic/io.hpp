#pragma once

#include "genodesic/graph.hpp"
#include "genodesic/shortest_path.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace genodesic::io {

/// Shortest round-trip text is not enough for byte-stable outputs, so every
/// real goes out with 17 significant digits; +inf is written as "inf".
std::string format_real(double value);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);
std::string read_text(const std::filesystem::path& path);

PointCloud parse_points_csv(const std::string& text, bool skip_header = false);
PointCloud read_points_csv(const std::filesystem::path& path, bool skip_header = false);
std::string points_to_csv(const PointCloud& points);

/// Real matrix with "inf" entries allowed.
Eigen::MatrixXd parse_matrix_csv(const std::string& text);
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
std::string matrix_to_csv(const Eigen::MatrixXd& matrix);

std::vector<int> parse_labels_csv(const std::string& text);
std::vector<int> read_labels_csv(const std::filesystem::path& path);
std::string labels_to_csv(const std::vector<int>& labels);

nlohmann::json density_to_json(const DensityModel& model);
DensityModel density_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const WeightedEpsGraph& graph);
WeightedEpsGraph graph_from_json(const nlohmann::json& j);

/// {"distance": ..., "indices": [...], "coords": [[...], ...]}
nlohmann::json path_to_json(const GeodesicResult& result);

nlohmann::json parse_json(const std::string& text);

}  // namespace genodesic::io

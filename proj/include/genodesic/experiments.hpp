#pragma once

#include "genodesic/shortest_path.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace genodesic {

enum class DatasetKind { kTwoMoons, kTwoCircles, kTwoSpirals, kNarrowMog, kUniformBox, kDensitySampled };

DatasetKind parse_dataset_kind(std::string_view name);
std::string_view dataset_kind_name(DatasetKind kind);

/// Shape constants of the toy generators. Defaults are shipped in configs/.
struct GeneratorConstants {
  double circle_radius = 0.5;    // inner circle; the outer one has twice the radius
  double spiral_turns = 1.5;
  double spiral_pitch = 1.0;     // radial growth per full turn
  double spiral_start = 0.15;    // fraction of the arc skipped near the centre
  double moon_radius = 1.0;
  double mog_offset = 0.5;       // half distance between the two component axes
  double mog_long_std = 1.0;
  double mog_short_std = 0.05;
};

struct DatasetSpec {
  DatasetKind kind = DatasetKind::kTwoMoons;
  Index n = 200;
  double noise = 0.0;
  std::uint64_t seed = 0;
  Box domain = Box::cube(2, -1.0, 1.0);
  GeneratorConstants constants;
  std::shared_ptr<const DensityModel> density;  // kDensitySampled only
  Index max_attempts = 0;                       // rejection budget, 0 = 1000 n + 10^6
};

struct Dataset {
  PointCloud points;
  std::vector<int> labels;
};

Dataset generate(const DatasetSpec& spec);

/// Rejection sampling from `model` over its domain box.
PointCloud sample_from_density(const DensityModel& model, Index n, std::uint64_t seed, Index max_attempts = 0);

/// Upper bound on the density over its domain, used as the rejection envelope.
double density_upper_bound(const DensityModel& model);

/// Primitive grid offsets (dx, dy) with max(|dx|, |dy|) <= radius. Radius 1
/// is the 8-connected stencil.
std::vector<std::array<int, 2>> grid_stencil(int radius);

/// Dense regular-grid geodesic in 2-D with the same edge quadrature.
///
/// The domain box is split into `resolution` cells per axis and every node is
/// joined to the nodes of its stencil (8-connected by default). Endpoints that
/// are not grid nodes are attached to the corners of their cell. Edge weights
/// are evaluated lazily during the search, so wide stencils on fine grids stay
/// within memory.
GeodesicResult reference_geodesic(const DensityModel& model, const MetricParams& params, const PointRef& x,
                                  const PointRef& y, int resolution = 1024, int stencil_radius = 1);

/// Metric length of a polyline, one straight-segment quadrature per piece.
double polyline_length(const DensityModel& model, const MetricParams& params, const PointCloud& path);

/// The reference path plus its mirror images (across the chord, across the
/// chord's perpendicular bisector, and the half turn about the chord midpoint)
/// whose metric length matches within `tolerance` relative. Symmetric problems
/// have several geodesics; path comparisons use the closest one.
std::vector<PointCloud> equivalent_reference_paths(const DensityModel& model, const MetricParams& params,
                                                   const PointCloud& path, double tolerance = 1e-9);

/// Hausdorff distance between two polylines (rows are vertices), taken
/// between their vertex sets after densifying every piece to spacing <= step.
double hausdorff(const PointCloud& path_a, const PointCloud& path_b, double step = 1e-3);

enum class SamplingMode { kUniform, kDensity };
std::string_view sampling_mode_name(SamplingMode mode);
SamplingMode parse_sampling_mode(std::string_view name);

struct ConvergenceRun {
  std::shared_ptr<const DensityModel> density;
  Point source;
  Point target;
  std::vector<Index> n_grid;
  int trials = 20;
  std::vector<SamplingMode> modes{SamplingMode::kUniform, SamplingMode::kDensity};
  MetricParams params;
  double epsilon = 0.158;
  int reference_resolution = 512;
  int reference_stencil = 8;
  std::uint64_t seed = 0;
  double hausdorff_step = 1e-3;
};

struct ConvergenceTrial {
  Index n;
  SamplingMode mode;
  int trial;
  double distance;   // +inf when disconnected
  double error;      // |distance - reference|, +inf when disconnected
  double hausdorff;  // +inf when disconnected
  std::vector<Index> path;
};

struct ConvergenceRow {
  Index n;
  SamplingMode mode;
  double mean_error;   // over connected trials, NaN when none connected
  double std_error;
  int fail_count;
  double mean_hausdorff;
};

struct ConvergenceTable {
  GeodesicResult reference;
  std::vector<PointCloud> reference_paths;  // the reference and its equal-length mirror images
  std::vector<ConvergenceRow> rows;
  std::vector<ConvergenceTrial> trials;
};

/// Repeated graph geodesics between fixed endpoints against the grid reference.
/// Every trial's vertex set is the sampled points plus the two endpoints
/// (vertices 0 and 1).
ConvergenceTable convergence_study(const ConvergenceRun& run);

struct LimitsRow {
  double lambda;
  double max_gap;           // max over pairs of |d_lambda - d_euclid|
  double max_relative_gap;  // the same gap divided by d_euclid
};

/// Gap between generative and Euclidean-weighted graph distances on one fixed
/// graph for each lambda, over `pairs` seeded random connected vertex pairs.
std::vector<LimitsRow> limits_table(const EpsGraph& graph, std::shared_ptr<const DensityModel> density,
                                    const MetricParams& params, std::span<const double> lambdas, int pairs = 10,
                                    std::uint64_t seed = 0);

}  // namespace genodesic

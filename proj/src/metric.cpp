#include "genodesic/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace genodesic {

QuadratureRule parse_quadrature_rule(std::string_view name) {
  if (name == "trapezoid") return QuadratureRule::kTrapezoid;
  if (name == "left-riemann") return QuadratureRule::kLeftRiemann;
  fail(ErrorCode::kInvalidInput, "unknown quadrature rule '" + std::string(name) + "'");
}

std::string_view quadrature_rule_name(QuadratureRule rule) {
  return rule == QuadratureRule::kTrapezoid ? "trapezoid" : "left-riemann";
}

void MetricParams::validate() const {
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::kInvalidInput, "lambda must be > 0");
  require(std::isfinite(p0) && p0 > 0.0, ErrorCode::kInvalidInput, "p0 must be > 0");
  require(quad_points >= 1, ErrorCode::kInvalidInput, "quadrature K must be >= 1");
}

double conformal_factor(const DensityModel& model, const MetricParams& params, const PointRef& x) {
  return conformal_factor(eval_density(model, x), params);
}

double segment_length(const DensityModel& model, const MetricParams& params, const PointRef& x, const PointRef& y,
                      std::optional<double> density_x, std::optional<double> density_y) {
  if (x.size() != model.dim() || y.size() != model.dim()) {
    fail(ErrorCode::kDimensionMismatch, "segment endpoints do not match the model dimension");
  }
  const double length = (y - x).norm();
  if (length == 0.0) return 0.0;

  const int k = params.quad_points;
  thread_local std::vector<double> nodes;
  thread_local Eigen::VectorXd sample;
  nodes.resize(static_cast<std::size_t>(k) + 1);
  sample.resize(x.size());

  // Node i sits at ((K - i) / K) x + (i / K) y; the mirrored node of the reversed
  // segment evaluates the identical expression, which keeps trapezoid symmetric.
  const int last = params.rule == QuadratureRule::kLeftRiemann ? k - 1 : k;
  for (int i = 0; i <= last; ++i) {
    double p;
    if (i == 0 && density_x) {
      p = *density_x;
    } else if (i == k && density_y) {
      p = *density_y;
    } else if (i == 0) {
      p = model(x);
    } else if (i == k) {
      p = model(y);
    } else {
      const double a = static_cast<double>(k - i) / k;
      const double b = static_cast<double>(i) / k;
      sample = a * x + b * y;
      p = model(sample);
    }
    nodes[static_cast<std::size_t>(i)] = conformal_factor(p, params);
  }
  if (params.rule == QuadratureRule::kLeftRiemann) nodes[static_cast<std::size_t>(k)] = 0.0;
  return length * composite_sum<double>(nodes, params.rule);
}

double euclidean_limit_gap(const DensityModel& model, const MetricParams& params,
                           std::span<const Segment> segments) {
  require(!segments.empty(), ErrorCode::kInvalidInput, "euclidean_limit_gap needs at least one segment");
  double gap = 0.0;
  for (const auto& s : segments) {
    gap = std::max(gap, std::abs(segment_length(model, params, s.from, s.to) - (s.to - s.from).norm()));
  }
  return gap;
}

}  // namespace genodesic

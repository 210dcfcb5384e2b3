#pragma once

#include "genodesic/density.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace genodesic {

enum class QuadratureRule { kTrapezoid, kLeftRiemann };

QuadratureRule parse_quadrature_rule(std::string_view name);
std::string_view quadrature_rule_name(QuadratureRule rule);

/// Parameters of the conformal metric ((p0 + lambda) / (p(x) + lambda))^2 u.v and
/// of the straight-segment quadrature. `quad_points` counts subintervals.
struct MetricParams {
  double lambda = 0.01;
  double p0 = 1.0;
  int quad_points = 10;
  QuadratureRule rule = QuadratureRule::kTrapezoid;

  void validate() const;
  /// Numerator p0 + lambda of the conformal factor.
  double scale() const { return p0 + lambda; }
};

struct Segment {
  Point from;
  Point to;
};

/// Norm factor (p0 + lambda) / (density + lambda).
template <typename Scalar>
Scalar conformal_factor(Scalar density, const MetricParams& params) {
  return Scalar(params.p0 + params.lambda) / (density + Scalar(params.lambda));
}

double conformal_factor(const DensityModel& model, const MetricParams& params, const PointRef& x);

/// Composite quadrature over K equal subintervals given the K+1 node values.
/// Trapezoid pairs mirrored nodes before summing so reversing the values
/// reproduces the result bit for bit.
template <typename Scalar>
Scalar composite_sum(std::span<const Scalar> nodes, QuadratureRule rule) {
  const std::size_t k = nodes.size() - 1;
  Scalar sum(0);
  if (rule == QuadratureRule::kLeftRiemann) {
    for (std::size_t i = 0; i < k; ++i) sum += nodes[i];
    return sum / Scalar(k);
  }
  sum = (nodes[0] + nodes[k]) / Scalar(2);
  for (std::size_t i = 1, j = k - 1; i < j; ++i, --j) sum += nodes[i] + nodes[j];
  if (k % 2 == 0 && k > 0) sum += nodes[k / 2];
  return sum / Scalar(k);
}

/// Metric length of the straight segment from x to y under the chosen quadrature.
/// Optional endpoint densities skip two evaluations when the caller has them cached.
double segment_length(const DensityModel& model, const MetricParams& params, const PointRef& x, const PointRef& y,
                      std::optional<double> density_x = std::nullopt,
                      std::optional<double> density_y = std::nullopt);

/// max over segments of |segment_length - ||y - x||_2|.
double euclidean_limit_gap(const DensityModel& model, const MetricParams& params,
                           std::span<const Segment> segments);

}  // namespace genodesic

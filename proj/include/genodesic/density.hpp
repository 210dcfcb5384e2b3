#pragma once

#include "genodesic/error.hpp"
#include "genodesic/types.hpp"

#include <functional>
#include <optional>
#include <variant>

namespace genodesic {

struct UniformDensity {
  double value = 1.0;
};

/// p(x) = scale * exp(-sharpness * |radius - ||x||_2|) / normalization
struct RingDensity {
  double scale = 1.0;
  double radius = 0.75;
  double sharpness = 10.0;
  double normalization = 1.0;

  double unnormalized(double norm) const;
};

/// Isotropic mixture sum_j w_j N(x; c_j, sigma2 I).
struct GaussianMixture {
  PointCloud centers;
  double sigma2 = 1.0;
  Eigen::VectorXd weights;
};

/// Immutable density oracle p(x) >= 0 over a bounding box.
///
/// Evaluation is const and allocation-free on the hot path, so one model can be
/// shared across any number of worker threads.
class DensityModel {
 public:
  using Kind = std::variant<UniformDensity, RingDensity, GaussianMixture>;

  DensityModel(Kind kind, Box domain);

  static DensityModel uniform(double value, Box domain);
  static DensityModel gaussian_mixture(PointCloud centers, double sigma2, Eigen::VectorXd weights);

  double operator()(const PointRef& x) const;

  Index dim() const { return domain_.dim(); }
  const Box& domain() const { return domain_; }
  const Kind& kind() const { return kind_; }

 private:
  double eval_mixture(const GaussianMixture& gmm, const PointRef& x) const;

  Kind kind_;
  Box domain_;
  // Mixture caches: centers as columns, log-weights plus the Gaussian log normalizer.
  Eigen::MatrixXd centers_by_column_;
  Eigen::ArrayXd log_weights_;
};

/// p(x); throws kDimensionMismatch when x has the wrong size.
double eval_density(const DensityModel& model, const PointRef& x);

/// Ring density with the normalization filled in.
///
/// When `normalization` is empty the ring is integrated over `domain` on a
/// tensor trapezoid grid (d <= 3). Passing `allow_unnormalized` keeps Z = 1;
/// callers must opt in explicitly because lambda and p0 interact with the
/// absolute density scale.
DensityModel make_ring_density(Box domain, RingDensity shape = {},
                               std::optional<double> normalization = std::nullopt,
                               bool allow_unnormalized = false, int resolution = 1024);

/// Tensor-product trapezoid estimate of the integral of `f` over `domain`,
/// `resolution` subintervals per axis. Limited to d <= 3.
double estimate_normalization(const std::function<double(const PointRef&)>& f, const Box& domain,
                              int resolution);

/// Integral of the model's unnormalized form over its domain.
double estimate_normalization(const DensityModel& model, int resolution);

/// One isotropic component per sample, equal weights, variance sigma^2.
DensityModel fit_kde(const PointCloud& samples, double sigma);

}  // namespace genodesic

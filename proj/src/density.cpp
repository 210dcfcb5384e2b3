#include "genodesic/density.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace genodesic {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate_box(const Box& box) {
  require(box.lo.size() >= 1 && box.lo.size() == box.hi.size(), ErrorCode::kInvalidInput,
          "domain box must have matching lo/hi of dimension >= 1");
  require(box.lo.allFinite() && box.hi.allFinite(), ErrorCode::kInvalidInput, "domain box must be finite");
  require((box.hi.array() > box.lo.array()).all(), ErrorCode::kInvalidInput, "domain box must have hi > lo");
}

}  // namespace

double RingDensity::unnormalized(double norm) const {
  return scale * std::exp(-sharpness * std::abs(radius - norm));
}

DensityModel::DensityModel(Kind kind, Box domain) : kind_(std::move(kind)), domain_(std::move(domain)) {
  validate_box(domain_);
  std::visit(Overloaded{
                 [](const UniformDensity& u) {
                   require(std::isfinite(u.value) && u.value >= 0.0, ErrorCode::kInvalidInput,
                           "uniform density value must be finite and >= 0");
                 },
                 [](const RingDensity& r) {
                   require(std::isfinite(r.normalization) && r.normalization > 0.0, ErrorCode::kInvalidInput,
                           "ring normalization Z must be > 0");
                   require(std::isfinite(r.scale) && r.scale >= 0.0 && std::isfinite(r.radius) &&
                               std::isfinite(r.sharpness),
                           ErrorCode::kInvalidInput, "ring parameters must be finite");
                 },
                 [this](const GaussianMixture& g) {
                   require(g.centers.rows() >= 1, ErrorCode::kInvalidInput, "mixture needs at least one center");
                   require(g.centers.allFinite(), ErrorCode::kInvalidInput, "mixture centers must be finite");
                   require(g.centers.cols() == domain_.dim(), ErrorCode::kDimensionMismatch,
                           "mixture centers and domain differ in dimension");
                   require(std::isfinite(g.sigma2) && g.sigma2 > 0.0, ErrorCode::kInvalidInput,
                           "mixture variance must be > 0");
                   require(g.weights.size() == g.centers.rows(), ErrorCode::kInvalidInput,
                           "mixture needs one weight per center");
                   require((g.weights.array() >= 0.0).all() && g.weights.allFinite(), ErrorCode::kInvalidInput,
                           "mixture weights must be finite and >= 0");
                   require(std::abs(g.weights.sum() - 1.0) <= 1e-9, ErrorCode::kInvalidInput,
                           "mixture weights must sum to 1");
                   const double d = static_cast<double>(g.centers.cols());
                   const double log_norm = -0.5 * d * std::log(2.0 * std::numbers::pi * g.sigma2);
                   centers_by_column_ = g.centers.transpose();
                   log_weights_ = g.weights.array().log() + log_norm;
                 },
             },
             kind_);
}

DensityModel DensityModel::uniform(double value, Box domain) {
  return DensityModel(UniformDensity{value}, std::move(domain));
}

DensityModel DensityModel::gaussian_mixture(PointCloud centers, double sigma2, Eigen::VectorXd weights) {
  require(centers.rows() >= 1 && centers.cols() >= 1, ErrorCode::kInvalidInput,
          "mixture needs at least one center");
  require(std::isfinite(sigma2) && sigma2 > 0.0, ErrorCode::kInvalidInput, "mixture variance must be > 0");
  const double pad = 6.0 * std::sqrt(sigma2);
  Box domain{centers.colwise().minCoeff().transpose().array() - pad,
             centers.colwise().maxCoeff().transpose().array() + pad};
  return DensityModel(GaussianMixture{std::move(centers), sigma2, std::move(weights)}, std::move(domain));
}

double DensityModel::eval_mixture(const GaussianMixture& gmm, const PointRef& x) const {
  // Log-sum-exp with max shift; far from every center the result underflows to 0.
  thread_local Eigen::ArrayXd log_terms;
  log_terms = log_weights_ - (centers_by_column_.colwise() - x).colwise().squaredNorm().transpose().array() *
                                 (0.5 / gmm.sigma2);
  const double top = log_terms.maxCoeff();
  if (!std::isfinite(top)) return 0.0;
  return std::exp(top) * (log_terms - top).exp().sum();
}

double DensityModel::operator()(const PointRef& x) const {
  return std::visit(Overloaded{
                        [](const UniformDensity& u) { return u.value; },
                        [&x](const RingDensity& r) { return r.unnormalized(x.norm()) / r.normalization; },
                        [this, &x](const GaussianMixture& g) { return eval_mixture(g, x); },
                    },
                    kind_);
}

double eval_density(const DensityModel& model, const PointRef& x) {
  if (x.size() != model.dim()) {
    fail(ErrorCode::kDimensionMismatch, "point has dimension " + std::to_string(x.size()) + ", model expects " +
                                            std::to_string(model.dim()));
  }
  return model(x);
}

double estimate_normalization(const std::function<double(const PointRef&)>& f, const Box& domain,
                              int resolution) {
  validate_box(domain);
  const Index d = domain.dim();
  if (d > 3) fail(ErrorCode::kUnsupported, "grid normalization supports d <= 3; supply Z explicitly");
  require(resolution >= 2, ErrorCode::kInvalidInput, "normalization resolution must be >= 2");

  const Eigen::VectorXd step = (domain.hi - domain.lo) / resolution;
  const Index per_axis = resolution + 1;
  Index total = 1;
  for (Index a = 0; a < d; ++a) total *= per_axis;

  Eigen::VectorXd x(d);
  double sum = 0.0;
  for (Index flat = 0; flat < total; ++flat) {
    Index rest = flat;
    double weight = 1.0;
    for (Index a = 0; a < d; ++a) {
      const Index i = rest % per_axis;
      rest /= per_axis;
      x[a] = i == resolution ? domain.hi[a] : domain.lo[a] + step[a] * static_cast<double>(i);
      if (i == 0 || i == resolution) weight *= 0.5;
    }
    sum += weight * f(x);
  }
  return sum * step.prod();
}

double estimate_normalization(const DensityModel& model, int resolution) {
  return std::visit(Overloaded{
                        [&](const RingDensity& r) {
                          return estimate_normalization([&r](const PointRef& x) { return r.unnormalized(x.norm()); },
                                                        model.domain(), resolution);
                        },
                        [&](const auto&) {
                          return estimate_normalization([&model](const PointRef& x) { return model(x); },
                                                        model.domain(), resolution);
                        },
                    },
                    model.kind());
}

DensityModel make_ring_density(Box domain, RingDensity shape, std::optional<double> normalization,
                               bool allow_unnormalized, int resolution) {
  if (normalization) {
    shape.normalization = *normalization;
  } else if (allow_unnormalized) {
    shape.normalization = 1.0;
  } else {
    validate_box(domain);
    if (domain.dim() > 3) {
      fail(ErrorCode::kUnsupported, "ring normalization needs d <= 3; supply Z explicitly");
    }
    // Keep the 3-D grid tractable.
    const int res = domain.dim() == 3 ? std::min(resolution, 256) : resolution;
    shape.normalization = estimate_normalization(
        [&shape](const PointRef& x) { return shape.unnormalized(x.norm()); }, domain, res);
  }
  return DensityModel(shape, std::move(domain));
}

DensityModel fit_kde(const PointCloud& samples, double sigma) {
  require(samples.rows() >= 1 && samples.cols() >= 1, ErrorCode::kInvalidInput, "KDE needs at least one sample");
  require(std::isfinite(sigma) && sigma > 0.0, ErrorCode::kInvalidInput, "KDE bandwidth must be > 0");
  const Index m = samples.rows();
  return DensityModel::gaussian_mixture(samples, sigma * sigma,
                                        Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m)));
}

}  // namespace genodesic

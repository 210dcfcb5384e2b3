#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>

namespace genodesic {

using Index = Eigen::Index;

/// Row-per-point storage; the column count is the ambient dimension.
template <typename Scalar>
using PointCloudT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using PointCloud = PointCloudT<double>;

template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Point = PointT<double>;

using PointRef = Eigen::Ref<const Eigen::VectorXd>;

/// Square, symmetric matrix of pairwise distances; +inf marks disconnected pairs.
using DistanceMatrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr Index kNoVertex = -1;

/// Axis-aligned box [lo, hi] in R^d.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  Index dim() const { return lo.size(); }
  bool contains(const PointRef& x) const {
    return x.size() == dim() && (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  }
  double volume() const { return (hi - lo).prod(); }

  static Box cube(Index dim, double lo, double hi) {
    return Box{Eigen::VectorXd::Constant(dim, lo), Eigen::VectorXd::Constant(dim, hi)};
  }
};

}  // namespace genodesic

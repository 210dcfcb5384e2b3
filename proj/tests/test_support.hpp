#pragma once

#include "genodesic/types.hpp"

#include <cmath>
#include <random>

namespace genodesic::testing {

/// Independently computed constants (numpy/scipy, see README).
inline constexpr double kRingZ = 0.9144329436225328;              // 8192^2 trapezoid grid on [-1,1]^2
inline constexpr double kRingChordDense = 59.6206949643928;       // K = 10^6 trapezoid, (-1,0) -> (1,0)
inline constexpr double kRingChordK10 = 60.5748959211019;         // K = 10 trapezoid, same segment
inline constexpr double kRingRef8Conn256 = 4.19929211401253;      // 8-connected grid Dijkstra (scipy)
inline constexpr double kRingRef8Conn512 = 4.18596804106201;
inline constexpr double kRingRef8Conn1024 = 4.17928207311879;
inline constexpr double kRingRefRadius8Res512 = 4.029473;         // stencil radius 8 grid (scipy), 6 digits
inline constexpr double kRingMeanNorm = 0.7649920714276203;       // E||x|| under the ring density
inline constexpr double kRingNormStd = 0.1223;  // Monte Carlo, 10^6 samples

inline PointCloud random_cloud(std::mt19937_64& rng, Index n, Index d, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  PointCloud p(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index a = 0; a < d; ++a) p(i, a) = u(rng);
  }
  return p;
}

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace genodesic::testing

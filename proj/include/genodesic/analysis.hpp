#pragma once

#include "genodesic/error.hpp"
#include "genodesic/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace genodesic {

/// A_ij = exp(-D_ij / tau); disconnected pairs map to 0, the diagonal to 1.
struct AffinityMatrix {
  Eigen::MatrixXd values;
  double tau = 1.0;
};

AffinityMatrix affinity(const DistanceMatrix& distances, double tau);

struct ClusteringResult {
  std::vector<int> labels;
  int k = 0;
  std::optional<double> nmi;
  std::vector<std::string> warnings;
};

struct SpectralOptions {
  int kmeans_restarts = 20;
  int kmeans_max_iterations = 300;
};

/// Normalized-symmetric-Laplacian spectral clustering followed by seeded
/// k-means++ (best inertia over restarts).
///
/// Points whose off-diagonal affinities are all zero are pooled into cluster
/// k - 1 before the eigen-solve and the remaining points are split into k - 1
/// clusters. If too few connected points remain the affinity is reported as
/// degenerate and a round-robin partition is returned.
ClusteringResult spectral_cluster(const AffinityMatrix& affinity, int k, std::uint64_t seed,
                                  const SpectralOptions& options = {});

/// Normalized mutual information, mutual information over the arithmetic mean
/// of the two entropies. Two constant labelings score 1, one constant 0.
double nmi(std::span<const int> labels_a, std::span<const int> labels_b);

struct TauSweepRow {
  double tau;
  double nmi;
};

std::vector<TauSweepRow> tau_sweep(const DistanceMatrix& distances, std::span<const double> taus, int k,
                                   std::span<const int> truth, std::uint64_t seed);

/// Parses "lo:hi:logN" (N log-spaced values), "lo:hi:linN", or a comma list.
std::vector<double> parse_range(const std::string& spec);

/// Seeded Lloyd iterations from k-means++ seeds; returns labels of the best restart.
std::vector<int> kmeans(const Eigen::MatrixXd& rows, int k, std::uint64_t seed, int restarts, int max_iterations,
                        double* inertia = nullptr);

}  // namespace genodesic

#include "genodesic/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace genodesic {

AffinityMatrix affinity(const DistanceMatrix& distances, double tau) {
  require(std::isfinite(tau) && tau > 0.0, ErrorCode::kInvalidInput, "tau must be > 0");
  require(distances.rows() == distances.cols(), ErrorCode::kInvalidInput, "distance matrix must be square");
  AffinityMatrix a;
  a.tau = tau;
  a.values = distances.unaryExpr([tau](double d) {
    if (std::isnan(d) || d < 0.0) fail(ErrorCode::kInvalidInput, "distances must be >= 0 or +inf");
    return d == kInfinity ? 0.0 : std::exp(-d / tau);
  });
  a.values.diagonal().setOnes();
  return a;
}

std::vector<int> kmeans(const Eigen::MatrixXd& rows, int k, std::uint64_t seed, int restarts, int max_iterations,
                        double* inertia_out) {
  const Index n = rows.rows();
  require(k >= 1 && k <= n, ErrorCode::kInvalidInput, "k-means needs 1 <= k <= n");
  std::mt19937_64 rng(seed);

  std::vector<int> best_labels;
  double best_inertia = kInfinity;
  std::vector<int> labels(static_cast<std::size_t>(n));
  Eigen::VectorXd nearest(n);

  for (int restart = 0; restart < std::max(1, restarts); ++restart) {
    // k-means++ seeding.
    Eigen::MatrixXd centers(k, rows.cols());
    std::uniform_int_distribution<Index> pick(0, n - 1);
    centers.row(0) = rows.row(pick(rng));
    for (Index i = 0; i < n; ++i) nearest[i] = (rows.row(i) - centers.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
      const double total = nearest.sum();
      Index chosen = pick(rng);
      if (total > 0.0) {
        double target = std::uniform_real_distribution<double>(0.0, total)(rng);
        for (chosen = 0; chosen < n - 1; ++chosen) {
          target -= nearest[chosen];
          if (target < 0.0) break;
        }
      }
      centers.row(c) = rows.row(chosen);
      for (Index i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], (rows.row(i) - centers.row(c)).squaredNorm());
    }

    double inertia = kInfinity;
    for (int iter = 0; iter < max_iterations; ++iter) {
      bool changed = iter == 0;
      inertia = 0.0;
      for (Index i = 0; i < n; ++i) {
        int arg = 0;
        double best = kInfinity;
        for (int c = 0; c < k; ++c) {
          const double d = (rows.row(i) - centers.row(c)).squaredNorm();
          if (d < best) {
            best = d;
            arg = c;
          }
        }
        nearest[i] = best;
        inertia += best;
        if (labels[static_cast<std::size_t>(i)] != arg) {
          labels[static_cast<std::size_t>(i)] = arg;
          changed = true;
        }
      }
      if (!changed) break;
      Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, rows.cols());
      Eigen::VectorXi counts = Eigen::VectorXi::Zero(k);
      for (Index i = 0; i < n; ++i) {
        sums.row(labels[static_cast<std::size_t>(i)]) += rows.row(i);
        ++counts[labels[static_cast<std::size_t>(i)]];
      }
      for (int c = 0; c < k; ++c) {
        if (counts[c] > 0) {
          centers.row(c) = sums.row(c) / counts[c];
        } else {
          // Empty cluster: restart it at the worst-fit point.
          Index far = 0;
          nearest.maxCoeff(&far);
          centers.row(c) = rows.row(far);
          nearest[far] = 0.0;
        }
      }
    }
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best_labels = labels;
    }
  }

  // Canonical labels: numbered by first appearance.
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int& l : best_labels) {
    auto& slot = remap[static_cast<std::size_t>(l)];
    if (slot < 0) slot = next++;
    l = slot;
  }
  if (inertia_out) *inertia_out = best_inertia;
  return best_labels;
}

ClusteringResult spectral_cluster(const AffinityMatrix& affinity, int k, std::uint64_t seed,
                                  const SpectralOptions& options) {
  const Eigen::MatrixXd& a = affinity.values;
  const Index n = a.rows();
  require(a.rows() == a.cols(), ErrorCode::kInvalidInput, "affinity must be square");
  require(k >= 2 && k <= n, ErrorCode::kInvalidInput, "spectral clustering needs 2 <= k <= n");
  require(a.allFinite() && (a.array() >= 0.0).all(), ErrorCode::kInvalidInput, "affinity entries must be >= 0");

  ClusteringResult result;
  result.k = k;
  result.labels.assign(static_cast<std::size_t>(n), 0);

  std::vector<Index> active;
  std::vector<Index> isolated;
  for (Index i = 0; i < n; ++i) {
    const double off_diagonal = a.row(i).sum() - a(i, i);
    (off_diagonal > 0.0 ? active : isolated).push_back(i);
  }
  const int active_k = isolated.empty() ? k : k - 1;
  if (!isolated.empty()) {
    result.warnings.push_back(std::to_string(isolated.size()) + " isolated point(s) pooled into cluster " +
                              std::to_string(k - 1));
    for (Index i : isolated) result.labels[static_cast<std::size_t>(i)] = k - 1;
  }
  if (static_cast<Index>(active.size()) < std::max(active_k, 2)) {
    result.warnings.push_back("degenerate affinity: too few connected points for " + std::to_string(k) +
                              " clusters; returning a round-robin partition");
    for (Index i = 0; i < n; ++i) result.labels[static_cast<std::size_t>(i)] = static_cast<int>(i % k);
    return result;
  }
  if (active_k == 1) return result;

  const auto m = static_cast<Index>(active.size());
  Eigen::MatrixXd sub(m, m);
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < m; ++c) sub(r, c) = a(active[static_cast<std::size_t>(r)], active[static_cast<std::size_t>(c)]);
  }
  const Eigen::VectorXd inv_sqrt_degree = sub.rowwise().sum().cwiseSqrt().cwiseInverse();
  // The k smallest eigenvectors of I - D^-1/2 A D^-1/2 are the k largest of the normalized affinity.
  const Eigen::MatrixXd normalized = inv_sqrt_degree.asDiagonal() * sub * inv_sqrt_degree.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(normalized);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kNumericalFailure, "eigen-solver did not converge on the normalized Laplacian");
  }
  Eigen::MatrixXd embedding = solver.eigenvectors().rightCols(active_k);
  for (Index r = 0; r < m; ++r) {
    const double norm = embedding.row(r).norm();
    if (norm > 0.0) embedding.row(r) /= norm;
  }
  require(embedding.allFinite(), ErrorCode::kNumericalFailure, "spectral embedding is not finite");

  const auto labels = kmeans(embedding, active_k, seed, options.kmeans_restarts, options.kmeans_max_iterations);
  for (Index r = 0; r < m; ++r) {
    result.labels[static_cast<std::size_t>(active[static_cast<std::size_t>(r)])] = labels[static_cast<std::size_t>(r)];
  }
  return result;
}

double nmi(std::span<const int> labels_a, std::span<const int> labels_b) {
  require(labels_a.size() == labels_b.size(), ErrorCode::kInvalidInput, "label vectors differ in length");
  require(!labels_a.empty(), ErrorCode::kInvalidInput, "label vectors must be nonempty");
  const double n = static_cast<double>(labels_a.size());

  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> count_a;
  std::map<int, double> count_b;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    joint[{labels_a[i], labels_b[i]}] += 1.0;
    count_a[labels_a[i]] += 1.0;
    count_b[labels_b[i]] += 1.0;
  }
  auto entropy = [n](const std::map<int, double>& counts) {
    double h = 0.0;
    for (const auto& [label, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double ha = entropy(count_a);
  const double hb = entropy(count_b);
  if (count_a.size() == 1 && count_b.size() == 1) return 1.0;
  if (count_a.size() == 1 || count_b.size() == 1) return 0.0;

  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    mi += (c / n) * std::log(c * n / (count_a[key.first] * count_b[key.second]));
  }
  return std::clamp(mi / (0.5 * (ha + hb)), 0.0, 1.0);
}

std::vector<TauSweepRow> tau_sweep(const DistanceMatrix& distances, std::span<const double> taus, int k,
                                   std::span<const int> truth, std::uint64_t seed) {
  require(static_cast<Index>(truth.size()) == distances.rows(), ErrorCode::kInvalidInput,
          "truth labels must match the distance matrix size");
  std::vector<TauSweepRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    const auto clusters = spectral_cluster(affinity(distances, tau), k, seed);
    rows.push_back({tau, nmi(clusters.labels, truth)});
  }
  return rows;
}

std::vector<double> parse_range(const std::string& spec) {
  auto number = [&spec](const std::string& token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::kInvalidInput, "malformed range '" + spec + "'");
    }
  };
  std::vector<double> values;
  if (spec.find(':') == std::string::npos) {
    std::stringstream in(spec);
    std::string token;
    while (std::getline(in, token, ',')) values.push_back(number(token));
    require(!values.empty(), ErrorCode::kInvalidInput, "empty value list");
    return values;
  }
  std::vector<std::string> parts;
  std::stringstream in(spec);
  std::string token;
  while (std::getline(in, token, ':')) parts.push_back(token);
  require(parts.size() == 3 && parts[2].size() > 3, ErrorCode::kInvalidInput, "range must be lo:hi:logN or lo:hi:linN");
  const double lo = number(parts[0]);
  const double hi = number(parts[1]);
  const std::string mode = parts[2].substr(0, 3);
  const double count = number(parts[2].substr(3));
  require(count >= 1 && count == std::floor(count), ErrorCode::kInvalidInput, "range count must be a positive integer");
  const int steps = static_cast<int>(count);
  if (mode == "log") {
    require(lo > 0.0 && hi > 0.0, ErrorCode::kInvalidInput, "log range needs positive bounds");
  } else {
    require(mode == "lin", ErrorCode::kInvalidInput, "range mode must be log or lin");
  }
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    values.push_back(mode == "log" ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo));
  }
  if (steps > 1) values.back() = hi;
  if (steps >= 1) values.front() = lo;
  return values;
}

}  // namespace genodesic

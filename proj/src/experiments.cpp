#include "genodesic/experiments.hpp"

#include "genodesic/parallel.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <random>
#include <string>

namespace genodesic {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::mt19937_64 make_rng(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  for (auto p : parts) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

void add_noise(PointCloud& points, double noise, std::mt19937_64& rng) {
  if (noise <= 0.0) return;
  std::normal_distribution<double> normal(0.0, noise);
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index a = 0; a < points.cols(); ++a) points(i, a) += normal(rng);
  }
}

/// Polyline vertices plus interior points so no gap exceeds `step`.
PointCloud densify(const PointCloud& path, double step) {
  std::vector<Eigen::RowVectorXd> pts{path.row(0)};
  for (Index s = 0; s + 1 < path.rows(); ++s) {
    const Eigen::RowVectorXd a = path.row(s);
    const Eigen::RowVectorXd b = path.row(s + 1);
    const auto pieces = std::max<Index>(1, static_cast<Index>(std::ceil((b - a).norm() / step)));
    for (Index i = 1; i < pieces; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(pieces);
      pts.push_back((1.0 - t) * a + t * b);
    }
    pts.push_back(b);
  }
  PointCloud out(static_cast<Index>(pts.size()), path.cols());
  for (std::size_t i = 0; i < pts.size(); ++i) out.row(static_cast<Index>(i)) = pts[i];
  return out;
}

/// Exact directed Hausdorff distance between finite point sets, scanning the
/// target in a fixed shuffled order and stopping a row once it cannot raise the max.
double directed_hausdorff(const PointCloud& from, const PointCloud& to) {
  std::vector<Index> order(static_cast<std::size_t>(to.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::shuffle(order.begin(), order.end(), std::mt19937_64(0x4a05d0ffULL));
  double worst2 = 0.0;
  for (Index i = 0; i < from.rows(); ++i) {
    double best2 = kInfinity;
    bool dominated = false;
    for (Index j : order) {
      const double d2 = (from.row(i) - to.row(j)).squaredNorm();
      if (d2 < worst2) {
        dominated = true;
        break;
      }
      best2 = std::min(best2, d2);
    }
    if (!dominated) worst2 = std::max(worst2, best2);
  }
  return std::sqrt(worst2);
}

}  // namespace

DatasetKind parse_dataset_kind(std::string_view name) {
  if (name == "two-moons") return DatasetKind::kTwoMoons;
  if (name == "two-circles") return DatasetKind::kTwoCircles;
  if (name == "two-spirals") return DatasetKind::kTwoSpirals;
  if (name == "narrow-mog") return DatasetKind::kNarrowMog;
  if (name == "uniform-box") return DatasetKind::kUniformBox;
  if (name == "density-sampled") return DatasetKind::kDensitySampled;
  fail(ErrorCode::kInvalidInput, "unknown dataset kind '" + std::string(name) + "'");
}

std::string_view dataset_kind_name(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kTwoMoons: return "two-moons";
    case DatasetKind::kTwoCircles: return "two-circles";
    case DatasetKind::kTwoSpirals: return "two-spirals";
    case DatasetKind::kNarrowMog: return "narrow-mog";
    case DatasetKind::kUniformBox: return "uniform-box";
    case DatasetKind::kDensitySampled: return "density-sampled";
  }
  return "unknown";
}

std::string_view sampling_mode_name(SamplingMode mode) {
  return mode == SamplingMode::kUniform ? "uniform" : "density";
}

SamplingMode parse_sampling_mode(std::string_view name) {
  if (name == "uniform") return SamplingMode::kUniform;
  if (name == "density") return SamplingMode::kDensity;
  fail(ErrorCode::kInvalidInput, "unknown sampling mode '" + std::string(name) + "'");
}

double density_upper_bound(const DensityModel& model) {
  return std::visit(Overloaded{
                        [](const UniformDensity& u) { return u.value; },
                        [](const RingDensity& r) { return r.scale / r.normalization; },
                        [&model](const GaussianMixture& g) {
                          return std::pow(2.0 * std::numbers::pi * g.sigma2, -0.5 * static_cast<double>(model.dim()));
                        },
                    },
                    model.kind());
}

PointCloud sample_from_density(const DensityModel& model, Index n, std::uint64_t seed, Index max_attempts) {
  require(n >= 1, ErrorCode::kInvalidInput, "sample count must be >= 1");
  const double envelope = density_upper_bound(model);
  require(envelope > 0.0, ErrorCode::kSamplingFailure, "density is identically zero");
  if (max_attempts <= 0) max_attempts = 1000 * n + 1000000;

  auto rng = make_rng({seed, 0x5eedULL});
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Box& box = model.domain();
  PointCloud points(n, model.dim());
  Eigen::VectorXd candidate(model.dim());
  Index accepted = 0;
  for (Index attempt = 0; accepted < n; ++attempt) {
    if (attempt >= max_attempts) {
      fail(ErrorCode::kSamplingFailure, "rejection sampling accepted " + std::to_string(accepted) + " of " +
                                            std::to_string(n) + " points within " + std::to_string(max_attempts) +
                                            " attempts");
    }
    for (Index a = 0; a < candidate.size(); ++a) candidate[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * unit(rng);
    if (unit(rng) * envelope < model(candidate)) points.row(accepted++) = candidate.transpose();
  }
  return points;
}

Dataset generate(const DatasetSpec& spec) {
  require(spec.n >= 1, ErrorCode::kInvalidInput, "dataset size must be >= 1");
  require(std::isfinite(spec.noise) && spec.noise >= 0.0, ErrorCode::kInvalidInput, "noise must be >= 0");
  auto rng = make_rng({spec.seed, static_cast<std::uint64_t>(spec.kind)});
  const auto& c = spec.constants;
  const Index n = spec.n;
  const Index first = n / 2;
  Dataset out;
  out.points.resize(n, 2);
  out.labels.assign(static_cast<std::size_t>(n), 0);
  auto label_halves = [&] {
    for (Index i = first; i < n; ++i) out.labels[static_cast<std::size_t>(i)] = 1;
  };
  // Parameter t in [0, 1) spread evenly over each half.
  auto fraction = [&](Index i) {
    const Index count = i < first ? first : n - first;
    const Index local = i < first ? i : i - first;
    return (static_cast<double>(local) + 0.5) / static_cast<double>(count);
  };

  switch (spec.kind) {
    case DatasetKind::kTwoCircles:
      for (Index i = 0; i < n; ++i) {
        const double r = i < first ? c.circle_radius : 2.0 * c.circle_radius;
        const double angle = 2.0 * std::numbers::pi * fraction(i);
        out.points.row(i) << r * std::cos(angle), r * std::sin(angle);
      }
      label_halves();
      add_noise(out.points, spec.noise, rng);
      break;
    case DatasetKind::kTwoSpirals:
      for (Index i = 0; i < n; ++i) {
        // sqrt spacing keeps arc-length sampling roughly even on an Archimedean spiral.
        const double s = c.spiral_start + (1.0 - c.spiral_start) * fraction(i);
        const double theta = 2.0 * std::numbers::pi * c.spiral_turns * std::sqrt(s);
        const double r = c.spiral_pitch * theta / (2.0 * std::numbers::pi);
        const double sign = i < first ? 1.0 : -1.0;
        out.points.row(i) << sign * r * std::cos(theta), sign * r * std::sin(theta);
      }
      label_halves();
      add_noise(out.points, spec.noise, rng);
      break;
    case DatasetKind::kTwoMoons:
      for (Index i = 0; i < n; ++i) {
        const double t = std::numbers::pi * fraction(i);
        const double r = c.moon_radius;
        if (i < first) {
          out.points.row(i) << r * std::cos(t), r * std::sin(t);
        } else {
          out.points.row(i) << r * (1.0 - std::cos(t)), r * (0.5 - std::sin(t));
        }
      }
      label_halves();
      add_noise(out.points, spec.noise, rng);
      break;
    case DatasetKind::kNarrowMog: {
      std::normal_distribution<double> along(0.0, c.mog_long_std);
      std::normal_distribution<double> across(0.0, c.mog_short_std);
      for (Index i = 0; i < n; ++i) {
        const double offset = i < first ? -c.mog_offset : c.mog_offset;
        out.points.row(i) << along(rng), offset + across(rng);
      }
      label_halves();
      add_noise(out.points, spec.noise, rng);
      break;
    }
    case DatasetKind::kUniformBox: {
      require(spec.domain.dim() >= 1, ErrorCode::kInvalidInput, "uniform-box needs a domain");
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      out.points.resize(n, spec.domain.dim());
      for (Index i = 0; i < n; ++i) {
        for (Index a = 0; a < spec.domain.dim(); ++a) {
          out.points(i, a) = spec.domain.lo[a] + (spec.domain.hi[a] - spec.domain.lo[a]) * unit(rng);
        }
      }
      break;
    }
    case DatasetKind::kDensitySampled:
      require(spec.density != nullptr, ErrorCode::kInvalidInput, "density-sampled datasets need a density");
      out.points = sample_from_density(*spec.density, n, spec.seed, spec.max_attempts);
      break;
  }
  return out;
}


std::vector<std::array<int, 2>> grid_stencil(int radius) {
  require(radius >= 1, ErrorCode::kInvalidInput, "stencil radius must be >= 1");
  std::vector<std::array<int, 2>> offsets;
  for (int dx = -radius; dx <= radius; ++dx) {
    for (int dy = -radius; dy <= radius; ++dy) {
      if ((dx != 0 || dy != 0) && std::gcd(std::abs(dx), std::abs(dy)) == 1) offsets.push_back({dx, dy});
    }
  }
  return offsets;
}

GeodesicResult reference_geodesic(const DensityModel& model, const MetricParams& params, const PointRef& x,
                                  const PointRef& y, int resolution, int stencil_radius) {
  params.validate();
  if (model.dim() != 2) fail(ErrorCode::kUnsupported, "reference geodesics are implemented for d = 2 only");
  require(x.size() == 2 && y.size() == 2, ErrorCode::kDimensionMismatch, "endpoints must be 2-D");
  require(resolution >= 64, ErrorCode::kInvalidInput, "reference resolution must be >= 64");
  const Box& box = model.domain();
  require(box.contains(x) && box.contains(y), ErrorCode::kInvalidInput, "endpoints must lie in the density domain");
  const auto stencil = grid_stencil(stencil_radius);

  GeodesicResult result;
  if ((x - y).norm() == 0.0) {
    result.distance = 0.0;
    result.source = result.target = 0;
    result.path = {0};
    result.coords = x.transpose();
    return result;
  }

  const Index side = resolution + 1;
  const Index grid_nodes = side * side;
  const Eigen::Vector2d step = (box.hi - box.lo) / resolution;
  auto coordinate = [&](Index i, int axis) {
    return i == resolution ? box.hi[axis] : box.lo[axis] + step[axis] * static_cast<double>(i);
  };
  PointCloud vertices(grid_nodes + 2, 2);
  for (Index iy = 0; iy < side; ++iy) {
    for (Index ix = 0; ix < side; ++ix) vertices.row(iy * side + ix) << coordinate(ix, 0), coordinate(iy, 1);
  }

  // Endpoints on a grid node reuse it; others become extra vertices joined to their cell corners.
  std::vector<std::vector<Index>> extra_links(2);
  std::vector<std::vector<Index>> attached_extras(static_cast<std::size_t>(grid_nodes));
  auto attach = [&](const PointRef& p, Index slot) -> Index {
    const Eigen::Vector2d cell = ((p - box.lo).array() / step.array()).matrix();
    const Index ix = std::clamp<Index>(static_cast<Index>(std::llround(cell[0])), 0, resolution);
    const Index iy = std::clamp<Index>(static_cast<Index>(std::llround(cell[1])), 0, resolution);
    if ((vertices.row(iy * side + ix).transpose() - p).norm() <= 1e-12 * (box.hi - box.lo).norm()) {
      return iy * side + ix;
    }
    const Index extra = grid_nodes + slot;
    vertices.row(extra) = p.transpose();
    const Index fx = std::clamp<Index>(static_cast<Index>(std::floor(cell[0])), 0, resolution - 1);
    const Index fy = std::clamp<Index>(static_cast<Index>(std::floor(cell[1])), 0, resolution - 1);
    for (Index dy = 0; dy <= 1; ++dy) {
      for (Index dx = 0; dx <= 1; ++dx) {
        const Index corner = (fy + dy) * side + fx + dx;
        extra_links[static_cast<std::size_t>(slot)].push_back(corner);
        attached_extras[static_cast<std::size_t>(corner)].push_back(extra);
      }
    }
    return extra;
  };
  const Index source = attach(x, 0);
  const Index target = attach(y, 1);

  const auto total = static_cast<std::size_t>(vertices.rows());
  std::vector<double> vertex_density(total);
  parallel_for(0, total, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t v = lo; v < hi; ++v) vertex_density[v] = model(vertices.row(static_cast<Index>(v)).transpose());
  });

  // Dijkstra over the implicit stencil graph; weights are evaluated on relaxation
  // with the lower index as the segment start so both directions agree.
  auto weight = [&](Index u, Index v) {
    const Index a = std::min(u, v);
    const Index b = std::max(u, v);
    return segment_length(model, params, vertices.row(a).transpose(), vertices.row(b).transpose(),
                            vertex_density[static_cast<std::size_t>(a)], vertex_density[static_cast<std::size_t>(b)]);
  };
  std::vector<double> distance(total, kInfinity);
  std::vector<Index> predecessor(total, kNoVertex);
  using Entry = std::pair<double, Index>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  distance[static_cast<std::size_t>(source)] = 0.0;
  heap.emplace(0.0, source);
  auto relax = [&](Index u, double du, Index v) {
    const double candidate = du + weight(u, v);
    if (candidate < distance[static_cast<std::size_t>(v)]) {
      distance[static_cast<std::size_t>(v)] = candidate;
      predecessor[static_cast<std::size_t>(v)] = u;
      heap.emplace(candidate, v);
    }
  };
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > distance[static_cast<std::size_t>(u)]) continue;
    if (u == target) break;
    if (u >= grid_nodes) {
      for (Index v : extra_links[static_cast<std::size_t>(u - grid_nodes)]) relax(u, du, v);
      continue;
    }
    const Index ux = u % side;
    const Index uy = u / side;
    for (const auto& [dx, dy] : stencil) {
      const Index vx = ux + dx;
      const Index vy = uy + dy;
      if (vx < 0 || vy < 0 || vx >= side || vy >= side) continue;
      relax(u, du, vy * side + vx);
    }
    for (Index v : attached_extras[static_cast<std::size_t>(u)]) relax(u, du, v);
  }

  result.source = source;
  result.target = target;
  if (distance[static_cast<std::size_t>(target)] < kInfinity) {
    result.distance = distance[static_cast<std::size_t>(target)];
    for (Index v = target; v != kNoVertex; v = predecessor[static_cast<std::size_t>(v)]) result.path.push_back(v);
    std::reverse(result.path.begin(), result.path.end());
  }
  result.coords.resize(static_cast<Index>(result.path.size()), 2);
  for (std::size_t k = 0; k < result.path.size(); ++k) result.coords.row(static_cast<Index>(k)) = vertices.row(result.path[k]);
  return result;
}

double polyline_length(const DensityModel& model, const MetricParams& params, const PointCloud& path) {
  double total = 0.0;
  for (Index k = 1; k < path.rows(); ++k) {
    total += segment_length(model, params, path.row(k - 1).transpose(), path.row(k).transpose());
  }
  return total;
}

std::vector<PointCloud> equivalent_reference_paths(const DensityModel& model, const MetricParams& params,
                                                   const PointCloud& path, double tolerance) {
  std::vector<PointCloud> out{path};
  if (path.rows() < 2 || path.cols() != 2) return out;
  const Eigen::RowVector2d a = path.row(0);
  const Eigen::RowVector2d b = path.row(path.rows() - 1);
  const Eigen::RowVector2d mid = 0.5 * (a + b);
  const Eigen::RowVector2d along = (b - a).normalized();
  // Reflections across the chord line, across its perpendicular bisector, and the half turn.
  auto across_chord = [&](const Eigen::RowVector2d& p) -> Eigen::RowVector2d {
    const Eigen::RowVector2d rel = p - mid;
    return mid + 2.0 * rel.dot(along) * along - rel;
  };
  auto across_bisector = [&](const Eigen::RowVector2d& p) -> Eigen::RowVector2d {
    const Eigen::RowVector2d rel = p - mid;
    return mid + rel - 2.0 * rel.dot(along) * along;
  };
  auto half_turn = [&](const Eigen::RowVector2d& p) -> Eigen::RowVector2d { return 2.0 * mid - p; };

  const double reference = polyline_length(model, params, path);
  auto consider = [&](auto&& transform, bool reverse) {
    PointCloud image(path.rows(), 2);
    for (Index k = 0; k < path.rows(); ++k) {
      const Index src = reverse ? path.rows() - 1 - k : k;
      image.row(k) = transform(Eigen::RowVector2d(path.row(src)));
      if (!model.domain().contains(image.row(k).transpose())) return;
    }
    if (std::abs(polyline_length(model, params, image) - reference) <= tolerance * reference) {
      out.push_back(std::move(image));
    }
  };
  consider(across_chord, false);
  consider(across_bisector, true);
  consider(half_turn, true);
  return out;
}

double hausdorff(const PointCloud& path_a, const PointCloud& path_b, double step) {
  require(path_a.rows() >= 1 && path_b.rows() >= 1, ErrorCode::kInvalidInput, "hausdorff needs nonempty paths");
  require(path_a.cols() == path_b.cols(), ErrorCode::kDimensionMismatch, "paths differ in dimension");
  require(step > 0.0, ErrorCode::kInvalidInput, "densification step must be > 0");
  const PointCloud a = densify(path_a, step);
  const PointCloud b = densify(path_b, step);
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ConvergenceTable convergence_study(const ConvergenceRun& run) {
  require(run.density != nullptr, ErrorCode::kInvalidInput, "convergence study needs a density");
  require(!run.n_grid.empty(), ErrorCode::kInvalidInput, "n grid must be nonempty");
  for (std::size_t i = 0; i < run.n_grid.size(); ++i) {
    require(run.n_grid[i] >= 1, ErrorCode::kInvalidInput, "n grid entries must be >= 1");
    require(i == 0 || run.n_grid[i] > run.n_grid[i - 1], ErrorCode::kInvalidInput, "n grid must be strictly increasing");
  }
  require(run.trials >= 1, ErrorCode::kInvalidInput, "trials must be >= 1");
  require(!run.modes.empty(), ErrorCode::kInvalidInput, "at least one sampling mode is required");
  const DensityModel& model = *run.density;
  require(model.domain().contains(run.source) && model.domain().contains(run.target), ErrorCode::kInvalidInput,
          "endpoints must lie inside the domain");

  ConvergenceTable table;
  table.reference = reference_geodesic(model, run.params, run.source, run.target, run.reference_resolution,
                                       run.reference_stencil);
  require(table.reference.connected(), ErrorCode::kNumericalFailure, "reference geodesic is disconnected");
  table.reference_paths = equivalent_reference_paths(model, run.params, table.reference.coords);

  struct Job {
    Index n;
    SamplingMode mode;
    int trial;
  };
  std::vector<Job> jobs;
  for (Index n : run.n_grid) {
    for (SamplingMode mode : run.modes) {
      for (int t = 0; t < run.trials; ++t) jobs.push_back({n, mode, t});
    }
  }
  table.trials.resize(jobs.size());

  auto run_trial = [&](std::size_t k) {
    const Job& job = jobs[k];
    const std::uint64_t trial_seed =
        make_rng({run.seed, static_cast<std::uint64_t>(job.n), static_cast<std::uint64_t>(job.mode),
                  static_cast<std::uint64_t>(job.trial)})();
    PointCloud points(job.n + 2, model.dim());
    points.row(0) = run.source.transpose();
    points.row(1) = run.target.transpose();
    if (job.mode == SamplingMode::kUniform) {
      DatasetSpec spec;
      spec.kind = DatasetKind::kUniformBox;
      spec.n = job.n;
      spec.seed = trial_seed;
      spec.domain = model.domain();
      points.bottomRows(job.n) = generate(spec).points;
    } else {
      points.bottomRows(job.n) = sample_from_density(model, job.n, trial_seed);
    }
    const auto graph = weigh_graph(build_eps_graph(points, run.epsilon), run.density, run.params);
    const auto geo = geodesic(graph, 0, 1);
    ConvergenceTrial& out = table.trials[k];
    out.n = job.n;
    out.mode = job.mode;
    out.trial = job.trial;
    out.distance = geo.distance;
    out.path = geo.path;
    out.error = kInfinity;
    out.hausdorff = kInfinity;
    if (geo.connected()) {
      out.error = std::abs(geo.distance - table.reference.distance);
      for (const auto& ref : table.reference_paths) {
        out.hausdorff = std::min(out.hausdorff, hausdorff(geo.coords, ref, run.hausdorff_step));
      }
    }
  };

  // Trials run across workers; each trial builds its graph single-threaded.
  const unsigned workers = max_threads();
  struct Restore {
    unsigned threads;
    ~Restore() { set_max_threads(threads); }
  } restore{workers};
  set_max_threads(1);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        run_trial(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (Index n : run.n_grid) {
    for (SamplingMode mode : run.modes) {
      ConvergenceRow row{n, mode, 0.0, 0.0, 0, 0.0};
      std::vector<double> errors;
      double hausdorff_sum = 0.0;
      for (const auto& t : table.trials) {
        if (t.n != n || t.mode != mode) continue;
        if (t.distance == kInfinity) {
          ++row.fail_count;
          continue;
        }
        errors.push_back(t.error);
        hausdorff_sum += t.hausdorff;
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      if (errors.empty()) {
        row.mean_error = row.std_error = row.mean_hausdorff = nan;
      } else {
        const double count = static_cast<double>(errors.size());
        row.mean_error = std::accumulate(errors.begin(), errors.end(), 0.0) / count;
        double ss = 0.0;
        for (double e : errors) ss += (e - row.mean_error) * (e - row.mean_error);
        row.std_error = errors.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
        row.mean_hausdorff = hausdorff_sum / count;
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

std::vector<LimitsRow> limits_table(const EpsGraph& graph, std::shared_ptr<const DensityModel> density,
                                    const MetricParams& params, std::span<const double> lambdas, int pairs,
                                    std::uint64_t seed) {
  require(lambdas.size() >= 2, ErrorCode::kInvalidInput, "limits needs at least two lambda values");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    require(lambdas[i] > lambdas[i - 1], ErrorCode::kInvalidInput, "lambda values must be increasing");
  }
  require(pairs >= 1, ErrorCode::kInvalidInput, "limits needs at least one vertex pair");

  // Euclidean-weighted reference graph.
  std::vector<double> lengths(graph.edges.size());
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    lengths[k] = (graph.points.row(graph.edges[k].i) - graph.points.row(graph.edges[k].j)).norm();
  }
  const Adjacency euclid = make_adjacency(graph.num_vertices(), graph.edges, lengths);

  const auto labels = connected_components(graph);
  auto rng = make_rng({seed, 0x11117ULL});
  std::uniform_int_distribution<Index> pick(0, graph.num_vertices() - 1);
  std::vector<std::pair<Index, Index>> chosen;
  std::vector<double> euclid_distance;
  for (int attempt = 0; static_cast<int>(chosen.size()) < pairs && attempt < 100000; ++attempt) {
    const Index a = pick(rng);
    const Index b = pick(rng);
    if (a == b || labels[static_cast<std::size_t>(a)] != labels[static_cast<std::size_t>(b)]) continue;
    const double d = dijkstra(euclid, a, b).distance[static_cast<std::size_t>(b)];
    if (!(d > 0.0)) continue;
    chosen.emplace_back(a, b);
    euclid_distance.push_back(d);
  }
  require(!chosen.empty(), ErrorCode::kInvalidInput, "graph has no connected vertex pair with positive distance");

  std::vector<LimitsRow> rows;
  for (double lambda : lambdas) {
    MetricParams p = params;
    p.lambda = lambda;
    const auto weighted = weigh_graph(graph, density, p);
    LimitsRow row{lambda, 0.0, 0.0};
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      const double d = geodesic(weighted, chosen[k].first, chosen[k].second).distance;
      const double gap = std::abs(d - euclid_distance[k]);
      row.max_gap = std::max(row.max_gap, gap);
      row.max_relative_gap = std::max(row.max_relative_gap, gap / euclid_distance[k]);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace genodesic

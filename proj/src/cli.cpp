#include "genodesic/cli.hpp"

#include "genodesic/analysis.hpp"
#include "genodesic/experiments.hpp"
#include "genodesic/io.hpp"
#include "genodesic/parallel.hpp"

#include <CLI11.hpp>

#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace genodesic::cli {
namespace {

using nlohmann::json;

struct DensityOptions {
  std::string kind;
  std::string file;
  double kde_sigma = 0.05;
  double uniform_value = 1.0;
  double ring_scale = 1.0;
  double ring_radius = 0.75;
  double ring_sharpness = 10.0;
  std::optional<double> ring_z;
  bool unnormalized = false;
  double domain_lo = -1.0;
  double domain_hi = 1.0;
};

struct MetricOptions {
  double lambda = 0.01;
  double p0 = 1.0;
  int quad_k = 10;
  std::string quad_rule = "trapezoid";

  MetricParams params() const {
    MetricParams p{lambda, p0, quad_k, parse_quadrature_rule(quad_rule)};
    p.validate();
    return p;
  }
};

void add_density_options(CLI::App* app, DensityOptions& o, const std::string& default_kind) {
  o.kind = default_kind;
  app->add_option("--density", o.kind, "Density model: ring, uniform, kde, or file")
      ->check(CLI::IsMember({"ring", "uniform", "kde", "file"}))
      ->capture_default_str();
  app->add_option("--density-file", o.file, "Density JSON (used with --density file)");
  app->add_option("--kde-sigma", o.kde_sigma, "KDE bandwidth sigma")->capture_default_str();
  app->add_option("--uniform-value", o.uniform_value, "Constant density value")->capture_default_str();
  app->add_option("--ring-scale", o.ring_scale, "Ring amplitude")->capture_default_str();
  app->add_option("--ring-radius", o.ring_radius, "Ring radius")->capture_default_str();
  app->add_option("--ring-sharpness", o.ring_sharpness, "Ring decay rate")->capture_default_str();
  app->add_option("--ring-z", o.ring_z, "Ring normalization Z (estimated on a grid when omitted)");
  app->add_flag("--unnormalized", o.unnormalized, "Keep Z = 1 instead of normalizing");
  app->add_option("--domain-lo", o.domain_lo, "Lower corner of the cubic domain")->capture_default_str();
  app->add_option("--domain-hi", o.domain_hi, "Upper corner of the cubic domain")->capture_default_str();
}

void add_metric_options(CLI::App* app, MetricOptions& o, double default_lambda) {
  o.lambda = default_lambda;
  app->add_option("--lambda", o.lambda, "Metric regularizer lambda > 0")->capture_default_str();
  app->add_option("--p0", o.p0, "Reference density p0 > 0")->capture_default_str();
  app->add_option("--quad-k", o.quad_k, "Quadrature subintervals per edge")->capture_default_str();
  app->add_option("--quad-rule", o.quad_rule, "trapezoid or left-riemann")
      ->check(CLI::IsMember({"trapezoid", "left-riemann"}))
      ->capture_default_str();
}

std::shared_ptr<const DensityModel> make_density(const DensityOptions& o, const PointCloud* points, Index dim) {
  const Box domain = Box::cube(dim, o.domain_lo, o.domain_hi);
  if (o.kind == "file") {
    if (o.file.empty()) fail(ErrorCode::kInvalidInput, "--density file requires --density-file");
    auto model = io::density_from_json(io::parse_json(io::read_text(o.file)));
    if (model.dim() != dim) fail(ErrorCode::kDimensionMismatch, "density file dimension does not match the data");
    return std::make_shared<const DensityModel>(std::move(model));
  }
  if (o.kind == "kde") {
    if (!points) fail(ErrorCode::kInvalidInput, "--density kde needs a point set");
    return std::make_shared<const DensityModel>(fit_kde(*points, o.kde_sigma));
  }
  if (o.kind == "uniform") return std::make_shared<const DensityModel>(DensityModel::uniform(o.uniform_value, domain));
  RingDensity shape{o.ring_scale, o.ring_radius, o.ring_sharpness, 1.0};
  return std::make_shared<const DensityModel>(make_ring_density(domain, shape, o.ring_z, o.unnormalized));
}

Point parse_point(const std::string& text) {
  const auto values = parse_range(text);
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size()));
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    io::write_atomic(path, contents);
  }
}

std::string json_text(const json& j) { return j.dump() + "\n"; }

struct GraphOptions {
  std::string points;
  bool skip_header = false;
  std::optional<double> eps;
  std::optional<int> knn;
};

void add_graph_options(CLI::App* app, GraphOptions& o) {
  app->add_option("--points", o.points, "Point CSV, one point per row")->required();
  app->add_flag("--skip-header", o.skip_header, "Skip the first CSV row");
  auto* eps = app->add_option("--eps", o.eps, "Fixed radius epsilon");
  auto* knn = app->add_option("--knn", o.knn, "Adaptive radius with at least k neighbours");
  eps->excludes(knn);
}

EpsGraph build_graph(const GraphOptions& o, const PointCloud& points) {
  if (o.knn) return build_adaptive_graph(points, *o.knn);
  if (!o.eps) fail(ErrorCode::kInvalidInput, "one of --eps or --knn is required");
  return build_eps_graph(points, *o.eps);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generative distances and geodesics on weighted epsilon graphs", "genodesic"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML config file; flags override it");
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "Worker cap (default: GENODESIC_THREADS or hardware)")
      ->check(CLI::PositiveNumber);
  bool dry_run = false;
  app.add_flag("--dry-run", dry_run, "Print the resolved options and exit");

  std::function<void()> action;

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "Generate a toy dataset");
  DatasetSpec gen_spec;
  std::string gen_kind = "two-moons", gen_out, gen_labels;
  DensityOptions gen_density;
  gen->add_option("--kind", gen_kind, "two-moons, two-circles, two-spirals, narrow-mog, uniform-box, density-sampled")
      ->capture_default_str();
  gen->add_option("--n", gen_spec.n, "Number of points")->capture_default_str();
  gen->add_option("--seed", gen_spec.seed, "Random seed")->capture_default_str();
  gen->add_option("--noise", gen_spec.noise, "Isotropic Gaussian noise std")->capture_default_str();
  gen->add_option("--out", gen_out, "Point CSV output")->required();
  gen->add_option("--labels", gen_labels, "Label CSV output");
  auto& gc = gen_spec.constants;
  gen->add_option("--circle-radius", gc.circle_radius, "Inner circle radius")->capture_default_str();
  gen->add_option("--spiral-turns", gc.spiral_turns, "Spiral turns")->capture_default_str();
  gen->add_option("--spiral-pitch", gc.spiral_pitch, "Spiral radial growth per turn")->capture_default_str();
  gen->add_option("--spiral-start", gc.spiral_start, "Skipped arc fraction near the centre")->capture_default_str();
  gen->add_option("--moon-radius", gc.moon_radius, "Moon radius")->capture_default_str();
  gen->add_option("--mog-offset", gc.mog_offset, "Half gap between mixture axes")->capture_default_str();
  gen->add_option("--mog-long-std", gc.mog_long_std, "Std along the mixture axes")->capture_default_str();
  gen->add_option("--mog-short-std", gc.mog_short_std, "Std across the mixture axes")->capture_default_str();
  add_density_options(gen, gen_density, "ring");
  gen->callback([&] {
    action = [&] {
      gen_spec.kind = parse_dataset_kind(gen_kind);
      gen_spec.domain = Box::cube(2, gen_density.domain_lo, gen_density.domain_hi);
      if (gen_spec.kind == DatasetKind::kDensitySampled) gen_spec.density = make_density(gen_density, nullptr, 2);
      const Dataset data = generate(gen_spec);
      io::write_atomic(gen_out, io::points_to_csv(data.points));
      if (!gen_labels.empty()) io::write_atomic(gen_labels, io::labels_to_csv(data.labels));
    };
  });

  // build-graph
  auto* build = app.add_subcommand("build-graph", "Build the K-approximate weighted epsilon graph");
  GraphOptions build_graph_opts;
  DensityOptions build_density;
  MetricOptions build_metric;
  std::string build_out;
  add_graph_options(build, build_graph_opts);
  add_density_options(build, build_density, "kde");
  add_metric_options(build, build_metric, 0.01);
  build->add_option("--out", build_out, "Graph JSON output")->required();
  build->callback([&] {
    action = [&] {
      const PointCloud points = io::read_points_csv(build_graph_opts.points, build_graph_opts.skip_header);
      const auto density = make_density(build_density, &points, points.cols());
      const auto graph = weigh_graph(build_graph(build_graph_opts, points), density, build_metric.params());
      io::write_atomic(build_out, json_text(io::graph_to_json(graph)));
    };
  });

  // dist / path
  std::string query_graph, path_out;
  Index query_source = 0, query_target = 0;
  auto* dist = app.add_subcommand("dist", "Linear interpolating cost between two vertices");
  auto* path = app.add_subcommand("path", "Discrete geodesic between two vertices");
  for (auto* sub : {dist, path}) {
    sub->add_option("--graph", query_graph, "Graph JSON")->required();
    sub->add_option("--source", query_source, "Source vertex")->required();
    sub->add_option("--target", query_target, "Target vertex")->required();
  }
  path->add_option("--out", path_out, "Path JSON output (stdout when omitted)");
  dist->callback([&] {
    action = [&] {
      const auto graph = io::graph_from_json(io::parse_json(io::read_text(query_graph)));
      out << io::format_real(geodesic(graph, query_source, query_target).distance) << "\n";
    };
  });
  path->callback([&] {
    action = [&] {
      const auto graph = io::graph_from_json(io::parse_json(io::read_text(query_graph)));
      emit(path_out, json_text(io::path_to_json(geodesic(graph, query_source, query_target))), out);
    };
  });

  // dist-matrix
  auto* matrix = app.add_subcommand("dist-matrix", "All-pairs distances as CSV");
  std::string matrix_graph, matrix_out, matrix_subset;
  matrix->add_option("--graph", matrix_graph, "Graph JSON")->required();
  matrix->add_option("--out", matrix_out, "Distance CSV output")->required();
  matrix->add_option("--subset", matrix_subset, "Comma-separated vertex subset");
  matrix->callback([&] {
    action = [&] {
      const auto graph = io::graph_from_json(io::parse_json(io::read_text(matrix_graph)));
      DistanceMatrix d;
      if (matrix_subset.empty()) {
        d = all_pairs_distances(graph);
      } else {
        std::vector<Index> subset;
        for (double v : parse_range(matrix_subset)) subset.push_back(static_cast<Index>(v));
        d = all_pairs_distances(graph, std::span<const Index>(subset));
      }
      io::write_atomic(matrix_out, io::matrix_to_csv(d));
    };
  });

  // affinity / cluster / tau-sweep
  std::string dist_csv, truth_csv, analysis_out, taus_spec = "1e-3:1e3:log25";
  double tau = 1.0;
  int k = 2;
  std::uint64_t cluster_seed = 7;
  auto* aff = app.add_subcommand("affinity", "Affinity matrix exp(-D / tau)");
  aff->add_option("--dist", dist_csv, "Distance CSV")->required();
  aff->add_option("--tau", tau, "Temperature")->capture_default_str();
  aff->add_option("--out", analysis_out, "Affinity CSV output")->required();
  aff->callback([&] {
    action = [&] { io::write_atomic(analysis_out, io::matrix_to_csv(affinity(io::read_matrix_csv(dist_csv), tau).values)); };
  });

  auto* cluster = app.add_subcommand("cluster", "Spectral clustering on the affinity");
  cluster->add_option("--dist", dist_csv, "Distance CSV")->required();
  cluster->add_option("--tau", tau, "Temperature")->capture_default_str();
  cluster->add_option("--k", k, "Cluster count")->capture_default_str();
  cluster->add_option("--truth", truth_csv, "Ground-truth label CSV");
  cluster->add_option("--seed", cluster_seed, "k-means seed")->capture_default_str();
  cluster->add_option("--out", analysis_out, "Label CSV output");
  cluster->callback([&] {
    action = [&] {
      auto result = spectral_cluster(affinity(io::read_matrix_csv(dist_csv), tau), k, cluster_seed);
      for (const auto& w : result.warnings) err << "warning: " << w << "\n";
      if (!truth_csv.empty()) {
        const auto truth = io::read_labels_csv(truth_csv);
        result.nmi = nmi(result.labels, truth);
        out << "nmi " << io::format_real(*result.nmi) << "\n";
      }
      if (!analysis_out.empty()) io::write_atomic(analysis_out, io::labels_to_csv(result.labels));
    };
  });

  auto* sweep = app.add_subcommand("tau-sweep", "NMI across temperatures");
  sweep->add_option("--dist", dist_csv, "Distance CSV")->required();
  sweep->add_option("--taus", taus_spec, "lo:hi:logN, lo:hi:linN, or a comma list")->capture_default_str();
  sweep->add_option("--k", k, "Cluster count")->capture_default_str();
  sweep->add_option("--truth", truth_csv, "Ground-truth label CSV")->required();
  sweep->add_option("--seed", cluster_seed, "k-means seed")->capture_default_str();
  sweep->add_option("--out", analysis_out, "Sweep CSV output (stdout when omitted)");
  sweep->callback([&] {
    action = [&] {
      const auto taus = parse_range(taus_spec);
      const auto rows = tau_sweep(io::read_matrix_csv(dist_csv), taus, k, io::read_labels_csv(truth_csv), cluster_seed);
      std::string csv = "tau,nmi\n";
      for (const auto& r : rows) csv += io::format_real(r.tau) + "," + io::format_real(r.nmi) + "\n";
      emit(analysis_out, csv, out);
    };
  });

  // converge
  auto* converge = app.add_subcommand("converge", "Convergence study against the grid reference geodesic");
  DensityOptions conv_density;
  MetricOptions conv_metric;
  ConvergenceRun run;
  std::string conv_n = "100:10000:log5", conv_modes = "uniform,density", conv_source = "-1,0", conv_target = "1,0",
              conv_out;
  add_density_options(converge, conv_density, "ring");
  add_metric_options(converge, conv_metric, 0.01);
  converge->add_option("--eps", run.epsilon, "Fixed radius epsilon")->capture_default_str();
  converge->add_option("--n", conv_n, "n grid: lo:hi:logN or a comma list")->capture_default_str();
  converge->add_option("--trials", run.trials, "Trials per (n, mode)")->capture_default_str();
  converge->add_option("--modes", conv_modes, "Comma list of uniform,density")->capture_default_str();
  converge->add_option("--source", conv_source, "Source endpoint, comma-separated")->capture_default_str();
  converge->add_option("--target", conv_target, "Target endpoint, comma-separated")->capture_default_str();
  converge->add_option("--reference-resolution", run.reference_resolution, "Reference grid cells per axis")
      ->capture_default_str();
  converge->add_option("--reference-stencil", run.reference_stencil, "Reference grid stencil radius (1 = 8-connected)")
      ->capture_default_str();
  converge->add_option("--hausdorff-step", run.hausdorff_step, "Polyline densification step")->capture_default_str();
  converge->add_option("--seed", run.seed, "Random seed")->capture_default_str();
  converge->add_option("--out", conv_out, "Convergence CSV output")->required();
  converge->callback([&] {
    action = [&] {
      run.source = parse_point(conv_source);
      run.target = parse_point(conv_target);
      if (run.source.size() != run.target.size()) fail(ErrorCode::kDimensionMismatch, "endpoints differ in dimension");
      run.density = make_density(conv_density, nullptr, run.source.size());
      run.params = conv_metric.params();
      run.n_grid.clear();
      for (double v : parse_range(conv_n)) run.n_grid.push_back(static_cast<Index>(std::llround(v)));
      run.modes.clear();
      std::stringstream modes(conv_modes);
      for (std::string m; std::getline(modes, m, ',');) run.modes.push_back(parse_sampling_mode(m));
      const auto table = convergence_study(run);
      err << "reference distance " << io::format_real(table.reference.distance) << "\n";
      std::string csv = "n,mode,mean_err,std_err,fail_count,mean_hausdorff\n";
      for (const auto& r : table.rows) {
        csv += std::to_string(r.n) + "," + std::string(sampling_mode_name(r.mode)) + "," + io::format_real(r.mean_error) +
               "," + io::format_real(r.std_error) + "," + std::to_string(r.fail_count) + "," +
               io::format_real(r.mean_hausdorff) + "\n";
      }
      io::write_atomic(conv_out, csv);
    };
  });

  // limits
  auto* limits = app.add_subcommand("limits", "Gap to Euclidean graph distances as lambda grows");
  GraphOptions limits_graph;
  DensityOptions limits_density;
  MetricOptions limits_metric;
  std::string lambdas_spec = "1,100,10000", limits_out;
  int limit_pairs = 10;
  std::uint64_t limits_seed = 0;
  add_graph_options(limits, limits_graph);
  add_density_options(limits, limits_density, "ring");
  add_metric_options(limits, limits_metric, 1.0);
  limits->add_option("--lambdas", lambdas_spec, "Increasing lambda values (>= 2)")->capture_default_str();
  limits->add_option("--pairs", limit_pairs, "Random vertex pairs")->capture_default_str();
  limits->add_option("--seed", limits_seed, "Pair selection seed")->capture_default_str();
  limits->add_option("--out", limits_out, "Limits CSV output (stdout when omitted)");
  limits->callback([&] {
    action = [&] {
      const auto lambdas = parse_range(lambdas_spec);
      if (lambdas.size() < 2) throw CLI::ValidationError("--lambdas", "at least two lambda values are required");
      for (std::size_t i = 1; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > lambdas[i - 1])) throw CLI::ValidationError("--lambdas", "lambda values must increase");
      }
      const PointCloud points = io::read_points_csv(limits_graph.points, limits_graph.skip_header);
      const auto density = make_density(limits_density, &points, points.cols());
      const auto rows = limits_table(build_graph(limits_graph, points), density, limits_metric.params(), lambdas,
                                     limit_pairs, limits_seed);
      std::string csv = "lambda,max_gap,max_relative_gap\n";
      for (const auto& r : rows) {
        csv += io::format_real(r.lambda) + "," + io::format_real(r.max_gap) + "," + io::format_real(r.max_relative_gap) +
               "\n";
      }
      emit(limits_out, csv, out);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error E_USAGE: " << e.what() << "\n";
    return kExitUsage;
  }

  if (dry_run) {
    for (const auto* sub : app.get_subcommands()) out << "[" << sub->get_name() << "]\n" << sub->config_to_str(true);
    return kExitOk;
  }
  if (threads) set_max_threads(*threads);
  try {
    if (action) action();
  } catch (const CLI::ValidationError& e) {
    err << "error E_USAGE: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error E_INTERNAL: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace genodesic::cli

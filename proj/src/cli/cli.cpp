#include "geo/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "geo/figures.hpp"
#include "geo/io/dataset.hpp"
#include "geo/io/spec.hpp"
#include "geo/learning/frechet_mean.hpp"
#include "geo/learning/gradient_descent.hpp"
#include "geo/learning/kmeans.hpp"
#include "geo/learning/tangent_pca.hpp"
#include "geo/linalg.hpp"
#include "geo/spaces/special_euclidean.hpp"

namespace geo::cli {
namespace {

using io::json;

// Raised for a fitted estimator that did not converge; the partial result
// has already been written.
struct Unconverged {
  std::string message;
};

// Raised by `validate` after the report has been written.
struct ValidationFailed {
  std::vector<std::size_t> indices;
};

[[noreturn]] void invalid(const std::string& message) { throw ContractError(message, "invalid_input"); }

std::string kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kContract: return "contract";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kConvergence: return "convergence";
  }
  return "unknown";
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kShape:
    case ErrorKind::kContract: return kInvalidInput;
    case ErrorKind::kDomain: return kDomain;
    case ErrorKind::kConvergence: return kNoConvergence;
  }
  return kInternal;
}

int report(std::ostream& err, int code, const std::string& kind, const std::string& error_code,
           const std::string& message, json extra = json::object()) {
  json body = {{"kind", kind}, {"code", error_code}, {"message", message}, {"exit_code", code}};
  for (auto& [key, value] : extra.items()) body[key] = value;
  err << json{{"error", body}}.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  return code;
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return io::read_file(path);
}

// Inline JSON when the text starts with '{' or '[' (or is a quoted string),
// otherwise the contents of the named file.
json json_argument(const std::string& text, const char* flag) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) invalid(std::string(flag) + " is empty");
  if (text[first] == '{' || text[first] == '[' || text[first] == '"') return io::parse(text);
  std::ifstream probe(text);
  if (!probe) invalid(std::string(flag) + ": '" + text + "' is neither inline JSON nor a readable file");
  return io::parse(io::read_file(text));
}

void write_json(std::ostream& out, const json& j) {
  out << j.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
}

void write_output(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ContractError("cannot write '" + path + "'", "io_error");
  file << text;
}

std::string csv_number(double x) { return json(x).dump(); }

// --- op ---------------------------------------------------------------------

struct OpArgs {
  std::string op;
  std::string spec;
  std::string input = "-";
  int num_points = 100;
  int count = 1;
  std::uint64_t seed = 0;
};

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) invalid(std::string("input is missing '") + key + "'");
  return j.at(key);
}

void require_fields(const json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid("input must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      invalid("unexpected input field '" + key + "'");
    }
  }
}

json batch_points(const io::Space& space, const Batch& xs, bool single) {
  if (single) return space.point_to_json(xs.at(0));
  json out = json::array();
  for (const Matrix& x : xs) out.push_back(space.point_to_json(x));
  return out;
}

json batch_tangents(const io::Space& space, const Batch& vs, bool single) {
  if (single) return space.tangent_to_json(vs.at(0));
  json out = json::array();
  for (const Matrix& v : vs) out.push_back(space.tangent_to_json(v));
  return out;
}

json scalars(const std::vector<double>& xs, bool single) { return single ? json(xs.at(0)) : json(xs); }

json run_op(const OpArgs& args, std::istream& in) {
  const io::Space space(io::parse_manifold_spec(json_argument(args.spec, "--manifold-spec")));
  const Connection& conn = space.connection();

  if (args.op == "random") {
    if (args.count < 1) invalid("--count must be >= 1");
    Rng rng(args.seed);
    Batch xs;
    for (int i = 0; i < args.count; ++i) xs.push_back(space.manifold().random_point(rng));
    return {{"op", args.op}, {"result", batch_points(space, xs, args.count == 1)}};
  }

  const json input = io::parse(read_input(args.input, in));
  auto points = [&](const char* key) { return space.points_from_json(field(input, key)); };
  auto tangents = [&](const char* key) { return space.tangents_from_json(field(input, key)); };
  auto batched = [&](const char* key, bool tangent) {
    return tangent ? space.is_tangent_batch(field(input, key)) : space.is_point_batch(field(input, key));
  };

  json result;
  if (args.op == "exp") {
    require_fields(input, {"base", "tangent"});
    const bool single = !batched("base", false) && !batched("tangent", true);
    result = batch_points(space, conn.exp(points("base"), tangents("tangent")), single);
  } else if (args.op == "log") {
    require_fields(input, {"base", "point"});
    const bool single = !batched("base", false) && !batched("point", false);
    result = batch_tangents(space, conn.log(points("base"), points("point")), single);
  } else if (args.op == "dist") {
    require_fields(input, {"a", "b"});
    const bool single = !batched("a", false) && !batched("b", false);
    result = scalars(space.require_metric("dist").dist(points("a"), points("b")), single);
  } else if (args.op == "inner") {
    require_fields(input, {"base", "u", "v"});
    const PseudoRiemannianMetric* metric = space.pseudo_metric();
    if (!metric) throw ContractError("inner: '" + space.spec().name + "' has no metric", "no_metric");
    const bool single = !batched("base", false) && !batched("u", true) && !batched("v", true);
    result = scalars(metric->inner_product(points("base"), tangents("u"), tangents("v")), single);
  } else if (args.op == "norm") {
    require_fields(input, {"base", "tangent"});
    const RiemannianMetric& metric = space.require_metric("norm");
    const Batch bs = points("base");
    const Batch vs = tangents("tangent");
    const bool single = bs.size() == 1 && vs.size() == 1 && !batched("base", false) && !batched("tangent", true);
    const std::vector<double> sq = metric.inner_product(bs, vs, vs);
    std::vector<double> norms;
    for (double s : sq) norms.push_back(std::sqrt(std::max(0.0, s)));
    result = scalars(norms, single);
  } else if (args.op == "geodesic") {
    require_fields(input, {"base", "tangent", "end"});
    if (args.num_points < 2) invalid("--num-points must be >= 2");
    const Point base = space.point_from_json(field(input, "base"));
    if (input.contains("tangent") == input.contains("end")) invalid("geodesic needs exactly one of 'tangent' and 'end'");
    const GeodesicCurve curve = input.contains("end")
                                    ? conn.geodesic_between(base, space.point_from_json(input.at("end")))
                                    : conn.geodesic(base, space.tangent_from_json(input.at("tangent")));
    std::vector<double> ts;
    for (int i = 0; i < args.num_points; ++i) ts.push_back(static_cast<double>(i) / (args.num_points - 1));
    result = {{"t", ts}, {"points", batch_points(space, curve.sample(ts), false)}};
  } else if (args.op == "transport") {
    require_fields(input, {"base", "tangent", "direction", "end"});
    if (input.contains("direction") == input.contains("end")) {
      invalid("transport needs exactly one of 'direction' and 'end'");
    }
    const Batch bs = points("base");
    const Batch vs = tangents("tangent");
    Batch ds;
    bool single = !batched("base", false) && !batched("tangent", true);
    if (input.contains("end")) {
      ds = conn.log(bs, points("end"));
      single = single && !batched("end", false);
    } else {
      ds = tangents("direction");
      single = single && !batched("direction", true);
    }
    result = batch_tangents(space, conn.parallel_transport(vs, bs, ds), single);
  } else if (args.op == "belongs") {
    require_fields(input, {"point"});
    const bool single = !batched("point", false);
    const Batch xs = points("point");
    std::vector<double> residuals = io::membership_residuals(space, xs);
    std::vector<bool> flags;
    for (double r : residuals) flags.push_back(r <= tolerance::kMembership);
    result = single ? json(flags[0]) : json(flags);
  } else if (args.op == "projection") {
    require_fields(input, {"point"});
    const bool single = !batched("point", false);
    Batch xs = points("point");
    for (Matrix& x : xs) x = space.manifold().projection(x);
    result = batch_points(space, xs, single);
  } else {
    invalid("unknown op '" + args.op + "'");
  }
  return {{"op", args.op}, {"result", result}};
}

// --- learn ------------------------------------------------------------------

struct LearnArgs {
  std::string estimator;
  std::string spec;
  std::string data = "-";
  std::optional<int> max_iter;
  std::optional<double> tol;
  double step = 1.0;
  int n_components = 2;
  int n_clusters = 2;
  std::uint64_t seed = 0;
  bool allow_unconverged = false;
  std::string base_point;
  double lr = 0.1;
  std::string field = "linear";
  std::string a;
  std::string x0;
};

FrechetMeanResult fit_mean(const RiemannianMetric& metric, const io::Dataset& data, const LearnArgs& args) {
  FrechetMeanOptions options;
  options.max_iter = args.max_iter.value_or(64);
  options.tol = args.tol.value_or(1e-7);
  options.step = args.step;
  return frechet_mean(metric, data.points, data.weights, options);
}

json run_learn(const LearnArgs& args, std::istream& in, std::ostream& out) {
  const io::Space space(io::parse_manifold_spec(json_argument(args.spec, "--manifold-spec")));
  io::Dataset data;
  const bool needs_data = args.estimator != "rgrad" || args.x0.empty();
  if (needs_data) {
    data = io::parse_dataset(space, read_input(args.data, in));
    io::validate_points(space, data.points);
  }

  json model = {{"estimator", args.estimator}};
  bool converged = true;
  if (args.estimator == "mean") {
    const RiemannianMetric& metric = space.require_metric("mean");
    const FrechetMeanResult r = fit_mean(metric, data, args);
    model["mean"] = space.point_to_json(r.estimate);
    model["variance"] = frechet_variance(metric, data.points, r.estimate);
    model["final_step_norm"] = r.final_step_norm;
    model["n_iter"] = r.n_iter;
    converged = r.converged;
  } else if (args.estimator == "tpca") {
    const RiemannianMetric& metric = space.require_metric("tpca");
    Point base;
    int n_iter = 0;
    if (!args.base_point.empty()) {
      base = space.point_from_json(json_argument(args.base_point, "--base-point"));
    } else {
      const FrechetMeanResult r = fit_mean(metric, data, args);
      base = r.estimate;
      n_iter = r.n_iter;
      converged = r.converged;
    }
    TangentPCA pca(metric, args.n_components);
    pca.fit(data.points, base);
    json components = json::array();
    for (const Matrix& c : pca.components()) components.push_back(space.tangent_to_json(c));
    const Matrix coeffs = pca.transform(data.points);
    json rows = json::array();
    for (Eigen::Index i = 0; i < coeffs.rows(); ++i) rows.push_back(io::vector_to_json(coeffs.row(i).transpose()));
    model["base_point"] = space.point_to_json(pca.base_point());
    model["components"] = components;
    model["explained_variance"] = io::vector_to_json(pca.explained_variance());
    model["explained_variance_ratio"] = io::vector_to_json(pca.explained_variance_ratio());
    model["total_variance"] = pca.total_variance();
    model["coefficients"] = rows;
    model["n_iter"] = n_iter;
  } else if (args.estimator == "kmeans") {
    const RiemannianMetric& metric = space.require_metric("kmeans");
    KMeansOptions options;
    options.n_clusters = args.n_clusters;
    options.max_iter = args.max_iter.value_or(100);
    options.tol = args.tol.value_or(1e-6);
    options.seed = args.seed;
    const KMeansModel r = kmeans_fit(metric, data.points, options);
    model["centroids"] = batch_points(space, r.centroids, false);
    model["labels"] = r.labels;
    model["inertia"] = r.inertia;
    model["inertia_history"] = r.inertia_history;
    model["n_iter"] = r.n_iter;
    converged = r.converged;
  } else if (args.estimator == "online-kmeans") {
    const RiemannianMetric& metric = space.require_metric("online-kmeans");
    OnlineKMeans km(metric, args.n_clusters);
    km.fit(data.points);
    std::vector<int> labels;
    for (const Point& x : data.points) labels.push_back(km.predict(x));
    model["centroids"] = batch_points(space, km.centroids(), false);
    model["counts"] = km.counts();
    model["labels"] = labels;
    model["n_rejected"] = km.n_rejected();
    model["n_iter"] = static_cast<long>(data.points.size());
  } else if (args.estimator == "rgrad") {
    const Shape shape = space.manifold().point_shape();
    if (args.a.empty()) invalid("rgrad needs --a");
    const Matrix a = io::from_json(json_argument(args.a, "--a"), shape);
    const Point x0 = args.x0.empty() ? data.points.at(0) : space.point_from_json(json_argument(args.x0, "--x0"));
    ScalarField f;
    if (args.field == "linear") {
      f = {[a](const Matrix& x) { return a.cwiseProduct(x).sum(); }, [a](const Matrix&) { return a; }};
    } else if (args.field == "distance") {
      f = {[a](const Matrix& x) { return 0.5 * (x - a).squaredNorm(); },
           [a](const Matrix& x) -> Matrix { return x - a; }};
    } else {
      invalid("unknown --field '" + args.field + "'");
    }
    GradientDescentOptions options;
    options.lr = args.lr;
    options.max_iter = args.max_iter.value_or(200);
    options.tol = args.tol.value_or(1e-8);
    const GradientDescentResult r = riemannian_gradient_descent(space.connection(), f, x0, options);
    model["x"] = space.point_to_json(r.x);
    model["value"] = r.values.back();
    model["values"] = r.values;
    model["grad_norm"] = r.grad_norm;
    model["n_iter"] = r.n_iter;
    converged = r.converged;
  } else {
    invalid("unknown estimator '" + args.estimator + "'");
  }
  model["converged"] = converged;
  if (!converged && !args.allow_unconverged) {
    write_json(out, model);
    throw Unconverged{args.estimator + " did not converge (pass --allow-unconverged to accept)"};
  }
  return model;
}

// --- figure -----------------------------------------------------------------

struct FigureArgs {
  std::string name;
  std::string format = "json";
  std::string output;
  // sphere-descent
  std::string field = "linear";
  std::string a;
  std::string x0;
  double lr = 0.1;
  int max_iter = 200;
  double tol = 1e-8;
  // poincare-grid
  int grid_size = 7;
  double spacing = 0.5;
  double extent = 3.0;
  std::optional<int> num_points;
  // se3-geodesic
  std::string start;
  std::string end;
};

Matrix parse_pose(const json& j) {
  if (j.is_object() && j.contains("rotation_vector")) {
    if (j.size() != 2 || !j.contains("translation")) {
      invalid("pose objects are {\"rotation_vector\": ..., \"translation\": ...}");
    }
    return se::homogeneous(linalg::rodrigues(io::from_json(j.at("rotation_vector"), {3, 1})),
                           io::from_json(j.at("translation"), {3, 1}));
  }
  const io::Space space(io::parse_manifold_spec(json{{"name", "se"}, {"n", 3}}));
  const Matrix pose = space.point_from_json(j);
  space.manifold().check_point(pose, "se3-geodesic");
  return pose;
}

std::string run_figure(const FigureArgs& args) {
  if (args.format != "json" && args.format != "csv") invalid("--format must be 'json' or 'csv'");
  const bool csv = args.format == "csv";
  std::ostringstream out;

  if (args.name == "sphere-descent") {
    figures::SphereDescentOptions options;
    options.field = args.field;
    if (!args.a.empty()) options.a = io::vector_from_json(json_argument(args.a, "--a"));
    if (!args.x0.empty()) options.x0 = io::vector_from_json(json_argument(args.x0, "--x0"));
    options.lr = args.lr;
    options.max_iter = args.max_iter;
    options.tol = args.tol;
    const GradientDescentResult r = figures::sphere_descent(options);
    if (csv) {
      out << "iter,x,y,z,f\n";
      for (std::size_t i = 0; i < r.trace.size(); ++i) {
        out << i;
        for (int c = 0; c < 3; ++c) out << ',' << csv_number(r.trace[i](c, 0));
        out << ',' << csv_number(r.values[i]) << '\n';
      }
    } else {
      json trace = json::array();
      for (std::size_t i = 0; i < r.trace.size(); ++i) {
        trace.push_back({{"iter", i}, {"x", io::to_json(r.trace[i])}, {"f", r.values[i]}});
      }
      write_json(out, {{"figure", args.name},
                       {"field", options.field},
                       {"a", io::vector_to_json(options.a)},
                       {"x0", io::vector_to_json(options.x0)},
                       {"lr", options.lr},
                       {"trace", trace},
                       {"n_iter", r.n_iter},
                       {"converged", r.converged}});
    }
  } else if (args.name == "poincare-grid") {
    figures::PoincareGridOptions options;
    options.grid_size = args.grid_size;
    options.spacing = args.spacing;
    options.extent = args.extent;
    options.num_points = args.num_points.value_or(61);
    const std::vector<figures::GridGeodesic> grid = figures::poincare_grid(options);
    if (csv) {
      out << "geodesic,family,offset,index,t,x,y\n";
      for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t i = 0; i < grid[g].points.size(); ++i) {
          out << g << ',' << grid[g].family << ',' << csv_number(grid[g].offset) << ',' << i << ','
              << csv_number(grid[g].t[i]) << ',' << csv_number(grid[g].points[i](0, 0)) << ','
              << csv_number(grid[g].points[i](1, 0)) << '\n';
        }
      }
    } else {
      json geodesics = json::array();
      for (const auto& g : grid) {
        json pts = json::array();
        for (const Matrix& p : g.points) pts.push_back(io::to_json(p));
        geodesics.push_back({{"family", g.family}, {"offset", g.offset}, {"t", g.t}, {"points", pts}});
      }
      write_json(out, {{"figure", args.name}, {"model", "poincare_ball"}, {"geodesics", geodesics}});
    }
  } else if (args.name == "se3-geodesic") {
    const Matrix start = args.start.empty() ? Matrix(Matrix::Identity(4, 4))
                                            : parse_pose(json_argument(args.start, "--start"));
    const Matrix end = args.end.empty()
                           ? parse_pose(json{{"rotation_vector", {0.3, -0.4, 1.2}}, {"translation", {2.0, 1.0, 0.5}}})
                           : parse_pose(json_argument(args.end, "--end"));
    const auto samples = figures::se3_geodesic(start, end, args.num_points.value_or(50));
    if (csv) {
      out << "t,r00,r01,r02,r10,r11,r12,r20,r21,r22,tx,ty,tz\n";
      for (const auto& s : samples) {
        out << csv_number(s.t);
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) out << ',' << csv_number(s.pose(r, c));
        }
        for (int r = 0; r < 3; ++r) out << ',' << csv_number(s.pose(r, 3));
        out << '\n';
      }
    } else {
      json js = json::array();
      for (const auto& s : samples) {
        js.push_back({{"t", s.t},
                      {"rotation", io::matrix_to_json(se::rotation(s.pose))},
                      {"translation", io::vector_to_json(se::translation(s.pose))}});
      }
      write_json(out, {{"figure", args.name},
                       {"metric", "left-invariant"},
                       {"start", io::matrix_to_json(start)},
                       {"end", io::matrix_to_json(end)},
                       {"samples", js}});
    }
  } else {
    invalid("unknown figure '" + args.name + "'");
  }
  return out.str();
}

// --- validate ---------------------------------------------------------------

json run_validate(const std::string& spec, const std::string& data_path, double tol, std::istream& in,
                  std::ostream& out) {
  const io::Space space(io::parse_manifold_spec(json_argument(spec, "--manifold-spec")));
  const io::Dataset data = io::parse_dataset(space, read_input(data_path, in));
  const std::vector<double> residuals = io::membership_residuals(space, data.points);
  std::vector<std::size_t> failures;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (!(residuals[i] <= tol)) failures.push_back(i);
  }
  json report = {{"manifold", io::to_json(space.spec())},
                 {"n_points", data.points.size()},
                 {"tolerance", tol},
                 {"residuals", residuals},
                 {"failures", failures},
                 {"valid", failures.empty()}};
  if (!failures.empty()) {
    write_json(out, report);
    throw ValidationFailed{failures};
  }
  return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometry and statistics on manifolds", "geo"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  OpArgs op;
  CLI::App* op_cmd = app.add_subcommand("op", "Evaluate a geometric operation on JSON input");
  op_cmd->add_option("op", op.op, "exp | log | dist | inner | norm | geodesic | transport | belongs | projection | random")
      ->required();
  op_cmd->add_option("--manifold-spec", op.spec, "Manifold spec: inline JSON or a file")->required();
  op_cmd->add_option("--input", op.input, "Input JSON file ('-' for stdin)");
  op_cmd->add_option("--num-points", op.num_points, "Samples along a geodesic");
  op_cmd->add_option("--count", op.count, "Number of random points");
  op_cmd->add_option("--seed", op.seed, "Random seed");

  LearnArgs learn;
  CLI::App* learn_cmd = app.add_subcommand("learn", "Fit an estimator on a dataset");
  learn_cmd->add_option("estimator", learn.estimator, "mean | tpca | kmeans | online-kmeans | rgrad")->required();
  learn_cmd->add_option("--manifold-spec", learn.spec, "Manifold spec: inline JSON or a file")->required();
  learn_cmd->add_option("--data", learn.data, "Dataset file, JSON or CSV ('-' for stdin)");
  learn_cmd->add_option("--max-iter", learn.max_iter, "Iteration cap");
  learn_cmd->add_option("--tol", learn.tol, "Convergence tolerance");
  learn_cmd->add_option("--step", learn.step, "Karcher flow step size");
  learn_cmd->add_option("--n-components", learn.n_components, "Tangent PCA components");
  learn_cmd->add_option("--n-clusters", learn.n_clusters, "Number of clusters");
  learn_cmd->add_option("--seed", learn.seed, "Random seed");
  learn_cmd->add_flag("--allow-unconverged", learn.allow_unconverged, "Exit 0 even without convergence");
  learn_cmd->add_option("--base-point", learn.base_point, "Tangent PCA base point (default: Frechet mean)");
  learn_cmd->add_option("--lr", learn.lr, "Gradient descent learning rate");
  learn_cmd->add_option("--field", learn.field, "Gradient descent field: linear | distance");
  learn_cmd->add_option("--a", learn.a, "Field parameter, same shape as a point");
  learn_cmd->add_option("--x0", learn.x0, "Gradient descent start (default: first data point)");

  FigureArgs fig;
  CLI::App* fig_cmd = app.add_subcommand("figure", "Emit demonstration figure data");
  fig_cmd->add_option("name", fig.name, "sphere-descent | poincare-grid | se3-geodesic")->required();
  fig_cmd->add_option("--format", fig.format, "json | csv");
  fig_cmd->add_option("--output", fig.output, "Output file (default stdout)");
  fig_cmd->add_option("--field", fig.field, "sphere-descent field: linear | distance");
  fig_cmd->add_option("--a", fig.a, "sphere-descent field vector (default [0,0,1])");
  fig_cmd->add_option("--x0", fig.x0, "sphere-descent start (default [1,0,0])");
  fig_cmd->add_option("--lr", fig.lr, "sphere-descent learning rate");
  fig_cmd->add_option("--max-iter", fig.max_iter, "sphere-descent iteration cap");
  fig_cmd->add_option("--tol", fig.tol, "sphere-descent gradient tolerance");
  fig_cmd->add_option("--grid-size", fig.grid_size, "poincare-grid lines per family");
  fig_cmd->add_option("--spacing", fig.spacing, "poincare-grid hyperbolic spacing between lines");
  fig_cmd->add_option("--extent", fig.extent, "poincare-grid half length of each geodesic");
  fig_cmd->add_option("--num-points", fig.num_points, "Samples per geodesic");
  fig_cmd->add_option("--start", fig.start, "se3-geodesic start pose (default identity)");
  fig_cmd->add_option("--end", fig.end, "se3-geodesic end pose");

  std::string val_spec, val_data = "-";
  double val_tol = tolerance::kMembership;
  CLI::App* val_cmd = app.add_subcommand("validate", "Check dataset membership");
  val_cmd->add_option("--manifold-spec", val_spec, "Manifold spec: inline JSON or a file")->required();
  val_cmd->add_option("--data", val_data, "Dataset file ('-' for stdin)");
  val_cmd->add_option("--tol", val_tol, "Membership tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report(err, kInvalidInput, "usage", "invalid_arguments", e.what());
  }

  try {
    if (op_cmd->parsed()) {
      write_json(out, run_op(op, in));
    } else if (learn_cmd->parsed()) {
      write_json(out, run_learn(learn, in, out));
    } else if (fig_cmd->parsed()) {
      write_output(fig.output, out, run_figure(fig));
    } else if (val_cmd->parsed()) {
      write_json(out, run_validate(val_spec, val_data, val_tol, in, out));
    }
    return kOk;
  } catch (const Unconverged& u) {
    return report(err, kNoConvergence, "convergence", "no_convergence", u.message);
  } catch (const ValidationFailed& v) {
    return report(err, kValidationFailed, "validation", "not_on_manifold",
                  std::to_string(v.indices.size()) + " point(s) failed the membership check",
                  {{"indices", v.indices}});
  } catch (const Error& e) {
    return report(err, exit_code(e), kind_name(e.kind()), e.code(), e.what());
  } catch (const json::exception& e) {
    return report(err, kInvalidInput, "contract", "invalid_input", e.what());
  } catch (const std::exception& e) {
    return report(err, kInternal, "internal", "internal", e.what());
  }
}

}  // namespace geo::cli
